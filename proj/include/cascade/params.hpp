#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace cascade {

using BigInt = boost::multiprecision::cpp_int;

struct CodeParams {
  int k = 0, d = 0, mu = 0;
  BigInt alpha, beta, F;
  bool operator==(const CodeParams&) const = default;
};

// Throws std::invalid_argument unless 1 <= mu <= k <= d.
void check_range(int k, int d, int mu);

BigInt big_binomial(long long l, long long m);

// Closed forms for storage, per-helper bandwidth and file size.
CodeParams code_params(int k, int d, int mu);

// t[m] = number of mode-m segments in the cascade tree, m = 0..mu.
std::vector<BigInt> t_sequence(int k, int d, int mu);

// Closed form for t[mu - m] in terms of d - k only. C(-1, 0) is taken as 1.
BigInt p_closed_form(int d_minus_k, int m);

// Parameters summed segment by segment over t_sequence.
CodeParams params_implicit(int k, int d, int mu);

struct SpecialPoints {
  CodeParams mbr;
  CodeParams msr;
  bool cutset_km1 = false;  // F = (k-1)alpha + (d-k+1)beta at mu = k-1
};
SpecialPoints special_points(int k, int d);

// Overlap of repair spaces of two failed nodes at a common helper, per segment
// term 2C(d-1,m-1) - C(d,m) + C(d-2,m).
BigInt overlap_dimension_formula(int k, int d, int mu);
// The same quantity written as sum (d-k)^{mu-m} [2C(k-1,m-1) - C(k,m) - C(k-2,m)].
BigInt overlap_dimension_statement_form(int k, int d, int mu);

}  // namespace cascade
