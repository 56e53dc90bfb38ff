#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace cascade {

constexpr int kMaxD = 16;
// max of the empty set
constexpr int kMinusInf = std::numeric_limits<int>::min();

// Subset of [1..d] stored as a bitmask; bit (x-1) marks element x.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(std::uint32_t bits) : bits_(bits) {}
  Subset(std::initializer_list<int> elems);
  static Subset from_elements(const std::vector<int>& elems);
  // {lo, lo+1, ..., hi}; empty when lo > hi.
  static Subset interval(int lo, int hi);

  constexpr std::uint32_t bits() const { return bits_; }
  int size() const { return std::popcount(bits_); }
  bool empty() const { return bits_ == 0; }
  bool contains(int x) const { return x >= 1 && x <= 32 && ((bits_ >> (x - 1)) & 1u); }
  int max() const { return bits_ ? 32 - std::countl_zero(bits_) : kMinusInf; }
  int min() const { return bits_ ? std::countr_zero(bits_) + 1 : kMinusInf; }
  std::vector<int> elements() const;

  Subset with(int x) const { return Subset(bits_ | (1u << (x - 1))); }
  Subset without(int x) const { return Subset(bits_ & ~(1u << (x - 1))); }
  Subset operator|(Subset o) const { return Subset(bits_ | o.bits_); }
  Subset operator&(Subset o) const { return Subset(bits_ & o.bits_); }
  Subset operator-(Subset o) const { return Subset(bits_ & ~o.bits_); }
  bool subset_of(Subset o) const { return (bits_ & ~o.bits_) == 0; }
  bool disjoint(Subset o) const { return (bits_ & o.bits_) == 0; }

  bool operator==(const Subset&) const = default;
  // Lexicographic order on the sorted element sequences.
  bool operator<(const Subset& o) const;

  std::string str() const;

 private:
  std::uint32_t bits_ = 0;
};

// ind_s(x) = |{y in s : y <= x}|
inline int ind(Subset s, int x) {
  if (x < 1) return 0;
  if (x >= 32) return s.size();
  return std::popcount(s.bits() & ((1u << x) - 1u));
}

// C(l, m); zero outside 0 <= m <= l.
std::uint64_t binomial(long long l, long long m);

// All m-subsets of [1..d] in lexicographic order.
std::vector<Subset> subsets_lex(int d, int m);
std::size_t subset_rank(int d, Subset s);
Subset subset_unrank(int d, int m, std::size_t index);

// Rank lookup over every subset of [1..d] at once; the rank of s is its
// position among subsets of the same size.
class SubsetIndex {
 public:
  explicit SubsetIndex(int d);
  int d() const { return d_; }
  std::size_t rank(Subset s) const { return rank_[s.bits()]; }
  const std::vector<Subset>& of_size(int m) const { return lists_.at(m); }

 private:
  int d_;
  std::vector<std::uint32_t> rank_;
  std::vector<std::vector<Subset>> lists_;
};

// Shared instance for a given d.
const SubsetIndex& subset_index(int d);

}  // namespace cascade
