#include "cascade/detseg.hpp"

#include <stdexcept>
#include <tuple>

namespace cascade {

std::size_t SegmentSpec::columns() const { return binomial(d, mode); }

Group classify_entry(int x, Subset I, int k) {
  if (x <= k) return Group::Upper;
  Subset A = I & Subset::interval(1, k);
  Subset B = I - A;
  if (x > B.max()) return Group::P;  // covers B = ∅
  return A.empty() ? Group::N : Group::D;
}

bool SymbolId::operator<(const SymbolId& o) const {
  return std::tuple(kind, set.size(), set.bits(), x) < std::tuple(o.kind, o.set.size(), o.set.bits(), o.x);
}

bool symbol_nulled(const SymbolId& s, int k) {
  return s.x > k && (s.set & Subset::interval(1, k)).empty();
}

std::vector<SymbolId> free_symbols(int d, int k, int m) {
  std::vector<SymbolId> out;
  if (m == 0) return out;
  for (Subset X : subset_index(d).of_size(m))
    for (int x : X.elements()) {
      SymbolId s{SymbolId::V, x, X};
      if (!symbol_nulled(s, k)) out.push_back(s);
    }
  if (m + 1 <= d)
    for (Subset Y : subset_index(d).of_size(m + 1))
      for (int x : Y.elements()) {
        if (x == Y.max()) continue;
        SymbolId s{SymbolId::W, x, Y};
        if (!symbol_nulled(s, k)) out.push_back(s);
      }
  return out;
}

std::pair<int, Subset> symbol_position(const SymbolId& s) {
  if (s.kind == SymbolId::V) return {s.x, s.set};
  return {s.x, s.set.without(s.x)};
}

Elem parity_value(const Field& F, Subset Y, const std::map<int, Elem>& known) {
  if (Y.empty()) throw std::invalid_argument("parity group must be nonempty");
  const int top = Y.max();
  Elem s = 0;
  for (int y : Y.elements()) {
    if (y == top) continue;
    auto it = known.find(y);
    if (it == known.end()) throw std::invalid_argument("parity group member missing: row " + std::to_string(y));
    s = F.add(s, F.sign(ind(Y, y), it->second));
  }
  return F.neg(F.sign(Y.size(), s));
}

namespace {

void check_spec(const SegmentSpec& spec) {
  if (spec.d < 1 || spec.d > kMaxD) throw std::invalid_argument("segment d out of range");
  if (spec.mode < 0 || spec.mode > spec.d) throw std::invalid_argument("segment mode out of range");
  if (static_cast<int>(spec.sigma.size()) != spec.d) throw std::invalid_argument("signature length must equal d");
}

// Fills parity members and applies row signs to an unsigned symbol matrix.
Matrix complete(const Field& F, const SegmentSpec& spec, Matrix U) {
  const int d = spec.d, m = spec.mode;
  const auto& idx = subset_index(d);
  if (m + 1 <= d)
    for (Subset Y : idx.of_size(m + 1)) {
      const int top = Y.max();
      Elem s = 0;
      for (int y : Y.elements())
        if (y != top) s = F.add(s, F.sign(ind(Y, y), U(y - 1, idx.rank(Y.without(y)))));
      U(top - 1, idx.rank(Y.without(top))) = F.neg(F.sign(Y.size(), s));
    }
  for (int x = 1; x <= d; ++x)
    if (spec.sig(x) & 1)
      for (std::size_t c = 0; c < U.cols(); ++c) U(x - 1, c) = F.neg(U(x - 1, c));
  return U;
}

}  // namespace

Matrix build_pre_injection(const Field& F, const SegmentSpec& spec, const std::vector<Elem>& values) {
  check_spec(spec);
  auto syms = free_symbols(spec.d, spec.k, spec.mode);
  if (values.size() != syms.size())
    throw std::invalid_argument("segment needs " + std::to_string(syms.size()) + " symbols, got " +
                                std::to_string(values.size()));
  const auto& idx = subset_index(spec.d);
  Matrix U(spec.d, spec.columns());
  for (std::size_t i = 0; i < syms.size(); ++i) {
    if (!F.contains(values[i])) throw std::invalid_argument("symbol value outside the field");
    auto [x, I] = symbol_position(syms[i]);
    U(x - 1, idx.rank(I)) = values[i];
  }
  return complete(F, spec, std::move(U));
}

Matrix build_pre_injection(const Field& F, const SegmentSpec& spec, const std::map<SymbolId, Elem>& symbols) {
  auto syms = free_symbols(spec.d, spec.k, spec.mode);
  std::vector<Elem> values;
  values.reserve(syms.size());
  for (const auto& s : syms) {
    auto it = symbols.find(s);
    if (it == symbols.end()) throw std::invalid_argument("missing symbol at row " + std::to_string(s.x));
    values.push_back(it->second);
  }
  if (symbols.size() != syms.size())
    throw std::invalid_argument("symbols supplied for nulled or parity positions");
  return build_pre_injection(F, spec, values);
}

std::vector<Elem> read_free_symbols(const Field& F, const SegmentSpec& spec, const Matrix& pre) {
  const auto& idx = subset_index(spec.d);
  std::vector<Elem> out;
  for (const auto& s : free_symbols(spec.d, spec.k, spec.mode)) {
    auto [x, I] = symbol_position(s);
    out.push_back(F.sign(spec.sig(x), pre(x - 1, idx.rank(I))));
  }
  return out;
}

bool parity_holds(const Field& F, const SegmentSpec& spec, const Matrix& pre) {
  const int d = spec.d, m = spec.mode;
  if (m + 1 > d) return true;
  const auto& idx = subset_index(d);
  for (Subset Y : idx.of_size(m + 1)) {
    Elem s = 0;
    for (int y : Y.elements()) {
      Elem w = F.sign(spec.sig(y), pre(y - 1, idx.rank(Y.without(y))));
      s = F.add(s, F.sign(ind(Y, y), w));
    }
    if (s != 0) return false;
  }
  return true;
}

Matrix repair_encoder(const Field& F, const std::vector<Elem>& psi_f, const Signature& sigma, int m) {
  const int d = static_cast<int>(psi_f.size());
  if (static_cast<int>(sigma.size()) != d) throw std::invalid_argument("signature length must equal d");
  if (m < 1 || m > d) throw std::invalid_argument("repair encoder needs 1 <= m <= d");
  const auto& idx = subset_index(d);
  Matrix L(binomial(d, m), binomial(d, m - 1));
  for (Subset I : idx.of_size(m))
    for (int y : I.elements())
      L(idx.rank(I), idx.rank(I.without(y))) = F.sign(sigma[y - 1] + ind(I, y), psi_f[y - 1]);
  return L;
}

Elem det_repair_symbol(const Field& F, const Matrix& R, Subset I, const Signature& sigma) {
  const int d = static_cast<int>(R.rows());
  const auto& idx = subset_index(d);
  Elem s = 0;
  for (int i : I.elements())
    s = F.add(s, F.sign(sigma[i - 1] + ind(I, i), R(i - 1, idx.rank(I.without(i)))));
  return s;
}

Matrix det_data_recover(const Field& F, const Matrix& psi_K, const Matrix& codewords) {
  return mat_mul(F, mat_inverse(F, psi_K), codewords);
}

}  // namespace cascade
