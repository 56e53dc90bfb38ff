#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace cascade {

using Elem = std::uint32_t;

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// GF(q) for prime q, or GF(2^s) with a fixed irreducible modulus.
// Copies are cheap: the tables are shared.
class Field {
 public:
  static Field prime(std::uint32_t p);
  static Field binary(unsigned s);
  // Smallest prime >= max(n, 5).
  static Field default_for(unsigned n);
  // Prime order or a power of two; anything else throws.
  static Field of_order(std::uint32_t q);

  std::uint32_t order() const { return q_; }
  std::uint32_t characteristic() const { return p_; }
  bool is_binary() const { return p_ == 2; }
  // Modulus polynomial for GF(2^s), bit i = coefficient of x^i. Zero for prime fields.
  std::uint32_t modulus() const { return poly_; }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    Elem s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Elem sub(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    return a >= b ? a - b : a + q_ - b;
  }
  Elem neg(Elem a) const {
    if (p_ == 2 || a == 0) return a;
    return q_ - a;
  }
  Elem mul(Elem a, Elem b) const {
    if (p_ != 2) return static_cast<Elem>((std::uint64_t{a} * b) % q_);
    if (a == 0 || b == 0) return 0;
    return t_->exp[t_->log[a] + t_->log[b]];
  }
  Elem inv(Elem a) const {
    if (a == 0) throw FieldError("division by zero");
    return t_->inv[a];
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  // (-1)^e as a field element.
  Elem signed_unit(long long e) const { return (e & 1) ? neg(1) : 1; }
  // (-1)^e * a
  Elem sign(long long e, Elem a) const { return (e & 1) ? neg(a) : a; }

  bool contains(std::uint64_t v) const { return v < q_; }

  bool operator==(const Field& o) const { return q_ == o.q_ && poly_ == o.poly_; }

  std::string describe() const;

 private:
  struct Tables {
    std::vector<Elem> inv;
    std::vector<Elem> exp;  // binary fields only, doubled length
    std::vector<Elem> log;
  };
  std::uint32_t q_ = 0;
  std::uint32_t p_ = 0;
  std::uint32_t poly_ = 0;
  std::shared_ptr<const Tables> t_;
};

bool is_prime(std::uint32_t v);
std::uint32_t next_prime(std::uint32_t v);

}  // namespace cascade
