#include "cascade/params.hpp"

#include <stdexcept>
#include <string>

namespace cascade {

namespace {

BigInt ipow(long long b, long long e) {
  BigInt r = 1;  // 0^0 = 1
  for (long long i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

void check_range(int k, int d, int mu) {
  if (!(1 <= mu && mu <= k && k <= d))
    throw std::invalid_argument("parameters must satisfy 1 <= mu <= k <= d (got k=" +
                                std::to_string(k) + ", d=" + std::to_string(d) +
                                ", mu=" + std::to_string(mu) + ")");
}

BigInt big_binomial(long long l, long long m) {
  if (m < 0 || l < 0 || m > l) return 0;
  if (m > l - m) m = l - m;
  BigInt r = 1;
  for (long long i = 1; i <= m; ++i) r = r * (l - m + i) / i;
  return r;
}

CodeParams code_params(int k, int d, int mu) {
  check_range(k, d, mu);
  CodeParams p{k, d, mu, 0, 0, 0};
  for (int m = 0; m <= mu; ++m) {
    BigInt w = ipow(d - k, mu - m);
    p.alpha += w * big_binomial(k, m);
    p.beta += w * big_binomial(k - 1, m - 1);
    p.F += k * w * big_binomial(k, m);
  }
  p.F -= big_binomial(k, mu + 1);
  return p;
}

std::vector<BigInt> t_sequence(int k, int d, int mu) {
  check_range(k, d, mu);
  std::vector<BigInt> t(mu + 1, 0);
  t[mu] = 1;
  for (int m = mu - 1; m >= 0; --m)
    for (int j = m + 1; j <= mu; ++j) t[m] += t[j] * (j - m - 1) * big_binomial(d - k + 1, j - m);
  return t;
}

BigInt p_closed_form(int d_minus_k, int m) {
  if (d_minus_k < 0 || m < 0) throw std::invalid_argument("p_closed_form needs d-k >= 0, m >= 0");
  BigInt s = 0;
  for (int l = 0; l <= m; ++l) {
    // C(d-k+l-1, l); the top is -1 only when d = k and l = 0, where the value is 1.
    BigInt c = (d_minus_k + l - 1 < 0) ? BigInt(1) : big_binomial(d_minus_k + l - 1, l);
    BigInt term = ipow(d_minus_k, m - l) * c;
    if (l & 1)
      s -= term;
    else
      s += term;
  }
  return s;
}

CodeParams params_implicit(int k, int d, int mu) {
  auto t = t_sequence(k, d, mu);
  CodeParams p{k, d, mu, 0, 0, 0};
  for (int m = 0; m <= mu; ++m) {
    p.alpha += t[m] * big_binomial(d, m);
    p.beta += t[m] * big_binomial(d - 1, m - 1);
    p.F += t[m] * m * (big_binomial(d + 1, m + 1) - big_binomial(d - k + 1, m + 1));
  }
  return p;
}

SpecialPoints special_points(int k, int d) {
  SpecialPoints s;
  s.mbr = code_params(k, d, 1);
  s.msr = code_params(k, d, k);
  if (k >= 2) {
    auto c = code_params(k, d, k - 1);
    s.cutset_km1 = c.F == (k - 1) * c.alpha + (d - k + 1) * c.beta;
  }
  return s;
}

BigInt overlap_dimension_formula(int k, int d, int mu) {
  auto t = t_sequence(k, d, mu);
  BigInt s = 0;
  for (int m = 0; m <= mu; ++m)
    s += t[m] * (2 * big_binomial(d - 1, m - 1) - big_binomial(d, m) + big_binomial(d - 2, m));
  return s;
}

BigInt overlap_dimension_statement_form(int k, int d, int mu) {
  check_range(k, d, mu);
  BigInt s = 0;
  for (int m = 0; m <= mu; ++m)
    s += ipow(d - k, mu - m) *
         (2 * big_binomial(k - 1, m - 1) - big_binomial(k, m) - big_binomial(k - 2, m));
  return s;
}

}  // namespace cascade
