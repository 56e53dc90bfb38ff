#include "cascade/field.hpp"

#include <algorithm>

namespace cascade {

namespace {

// Primitive polynomials over GF(2), indexed by degree.
constexpr std::uint32_t kBinaryModulus[17] = {
    0,       0x3,    0x7,    0xB,    0x13,   0x25,   0x43,    0x89,   0x11D,
    0x211,   0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1002D,
};

}  // namespace

bool is_prime(std::uint32_t v) {
  if (v < 2) return false;
  for (std::uint32_t d = 2; std::uint64_t{d} * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

std::uint32_t next_prime(std::uint32_t v) {
  while (!is_prime(v)) ++v;
  return v;
}

Field Field::prime(std::uint32_t p) {
  if (!is_prime(p)) throw FieldError("field order " + std::to_string(p) + " is not prime");
  if (p > 65536) throw FieldError("field order exceeds 2^16");
  if (p == 2) return binary(1);
  Field f;
  f.q_ = p;
  f.p_ = p;
  auto t = std::make_shared<Tables>();
  t->inv.assign(p, 0);
  if (p > 1) t->inv[1] = 1;
  // inv[a] = -(p / a) * inv[p mod a]
  for (std::uint32_t a = 2; a < p; ++a)
    t->inv[a] = static_cast<Elem>((p - std::uint64_t{p / a} * t->inv[p % a] % p) % p);
  f.t_ = std::move(t);
  return f;
}

Field Field::binary(unsigned s) {
  if (s < 1 || s > 16) throw FieldError("GF(2^s) supported for 1 <= s <= 16");
  Field f;
  f.q_ = 1u << s;
  f.p_ = 2;
  f.poly_ = kBinaryModulus[s];
  auto t = std::make_shared<Tables>();
  const std::uint32_t q = f.q_;
  t->exp.assign(2 * q, 0);
  t->log.assign(q, 0);
  t->inv.assign(q, 0);
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i + 1 < q; ++i) {
    if (i > 0 && x == 1) throw FieldError("modulus is not primitive");
    t->exp[i] = x;
    t->log[x] = i;
    x <<= 1;
    if (x & q) x ^= f.poly_;
  }
  for (std::uint32_t i = q - 1; i < 2 * q; ++i) t->exp[i] = t->exp[i - (q - 1)];
  for (std::uint32_t a = 1; a < q; ++a) t->inv[a] = t->exp[(q - 1 - t->log[a]) % (q - 1)];
  f.t_ = std::move(t);
  return f;
}

Field Field::default_for(unsigned n) { return prime(next_prime(std::max(n, 5u))); }

Field Field::of_order(std::uint32_t q) {
  if (q >= 2 && (q & (q - 1)) == 0) {
    unsigned s = 0;
    while ((1u << s) < q) ++s;
    return binary(s);
  }
  return prime(q);
}

std::string Field::describe() const {
  if (p_ == 2 && q_ > 2) {
    unsigned s = 0;
    while ((1u << s) < q_) ++s;
    return "GF(2^" + std::to_string(s) + ")";
  }
  return "GF(" + std::to_string(q_) + ")";
}

}  // namespace cascade
