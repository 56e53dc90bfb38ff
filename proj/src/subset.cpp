#include "cascade/subset.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>

namespace cascade {

Subset::Subset(std::initializer_list<int> elems) {
  for (int x : elems) {
    if (x < 1 || x > 32) throw std::out_of_range("subset element out of range");
    bits_ |= 1u << (x - 1);
  }
}

Subset Subset::from_elements(const std::vector<int>& elems) {
  Subset s;
  for (int x : elems) {
    if (x < 1 || x > 32) throw std::out_of_range("subset element out of range");
    s = s.with(x);
  }
  return s;
}

Subset Subset::interval(int lo, int hi) {
  Subset s;
  for (int x = std::max(lo, 1); x <= hi; ++x) s = s.with(x);
  return s;
}

std::vector<int> Subset::elements() const {
  std::vector<int> out;
  for (std::uint32_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
  return out;
}

bool Subset::operator<(const Subset& o) const {
  auto a = elements(), b = o.elements();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string Subset::str() const {
  std::string s = "{";
  bool first = true;
  for (int x : elements()) {
    if (!first) s += ",";
    s += std::to_string(x);
    first = false;
  }
  return s + "}";
}

std::uint64_t binomial(long long l, long long m) {
  if (m < 0 || l < 0 || m > l) return 0;
  m = std::min(m, l - m);
  std::uint64_t r = 1;
  for (long long i = 1; i <= m; ++i) r = r * static_cast<std::uint64_t>(l - m + i) / i;
  return r;
}

std::vector<Subset> subsets_lex(int d, int m) {
  if (d < 0 || d > kMaxD) throw std::invalid_argument("d out of range");
  if (m < 0 || m > d) throw std::invalid_argument("subset size must satisfy 0 <= m <= d");
  std::vector<Subset> out;
  out.reserve(binomial(d, m));
  std::vector<int> c(m);
  for (int i = 0; i < m; ++i) c[i] = i + 1;
  while (true) {
    out.push_back(Subset::from_elements(c));
    int i = m - 1;
    while (i >= 0 && c[i] == d - m + i + 1) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < m; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

std::size_t subset_rank(int d, Subset s) {
  if (s.max() > d) throw std::out_of_range("subset exceeds ambient size");
  const int m = s.size();
  std::size_t r = 0;
  int prev = 0, i = 0;
  for (int a : s.elements()) {
    for (int j = prev + 1; j < a; ++j) r += binomial(d - j, m - i - 1);
    prev = a;
    ++i;
  }
  return r;
}

Subset subset_unrank(int d, int m, std::size_t index) {
  if (m < 0 || m > d) throw std::invalid_argument("subset size must satisfy 0 <= m <= d");
  if (index >= binomial(d, m)) throw std::out_of_range("subset index out of range");
  Subset s;
  int x = 1;
  for (int i = 0; i < m; ++i) {
    while (true) {
      std::size_t block = binomial(d - x, m - i - 1);
      if (index < block) break;
      index -= block;
      ++x;
    }
    s = s.with(x);
    ++x;
  }
  return s;
}

SubsetIndex::SubsetIndex(int d) : d_(d), rank_(std::size_t{1} << d, 0), lists_(d + 1) {
  if (d < 0 || d > kMaxD) throw std::invalid_argument("d out of range");
  for (int m = 0; m <= d; ++m) {
    lists_[m] = subsets_lex(d, m);
    for (std::size_t i = 0; i < lists_[m].size(); ++i) rank_[lists_[m][i].bits()] = i;
  }
}

const SubsetIndex& subset_index(int d) {
  static std::array<std::unique_ptr<SubsetIndex>, kMaxD + 1> cache;
  static std::mutex mu;
  if (d < 0 || d > kMaxD) throw std::invalid_argument("d out of range");
  std::lock_guard<std::mutex> lock(mu);
  if (!cache[d]) cache[d] = std::make_unique<SubsetIndex>(d);
  return *cache[d];
}

}  // namespace cascade
