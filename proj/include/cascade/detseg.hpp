#pragma once

#include <map>
#include <vector>

#include "cascade/field.hpp"
#include "cascade/matrix.hpp"
#include "cascade/subset.hpp"

namespace cascade {

using Signature = std::vector<int>;  // sigma[x-1] for row x

struct SegmentSpec {
  int id = 0;
  int d = 0, k = 0;
  int mode = 0;
  Signature sigma;
  int parent = -1;  // -1 for the root
  int pair_x = 0;   // injection pair (x, B); unset on the root
  Subset pair_B;

  bool is_root() const { return parent < 0; }
  int sig(int x) const { return sigma[x - 1]; }
  std::size_t columns() const;
};

enum class Group { Upper, D, N, P };

// Row x of a column labelled I. Rows 1..k are Upper; lower rows split on
// A = I ∩ [1..k], B = I ∩ [k+1..d].
Group classify_entry(int x, Subset I, int k);

struct SymbolId {
  enum Kind { V, W };
  Kind kind = V;
  int x = 0;
  Subset set;  // X for v (x in X, |X| = m); Y for w (x in Y, x != max Y, |Y| = m+1)

  bool operator==(const SymbolId&) const = default;
  bool operator<(const SymbolId& o) const;
};

// True when the symbol sits in a nulled position (forced to zero).
bool symbol_nulled(const SymbolId& s, int k);

// Free symbols of a mode-m segment: v-symbols by (X lex, x), then
// non-parity w-symbols by (Y lex, x), nulled ones skipped.
std::vector<SymbolId> free_symbols(int d, int k, int m);

// Matrix position (row, column label) holding a symbol.
std::pair<int, Subset> symbol_position(const SymbolId& s);

// Parity member w_{max Y, Y} given the other members keyed by row.
Elem parity_value(const Field& F, Subset Y, const std::map<int, Elem>& known);

// d x C(d,m) pre-injection message matrix; values follow free_symbols order.
Matrix build_pre_injection(const Field& F, const SegmentSpec& spec, const std::vector<Elem>& values);
Matrix build_pre_injection(const Field& F, const SegmentSpec& spec,
                           const std::map<SymbolId, Elem>& symbols);

// Reads the free symbols back from a pre-injection matrix, undoing the row signs.
std::vector<Elem> read_free_symbols(const Field& F, const SegmentSpec& spec, const Matrix& pre);

// Checks every w-group's parity equation on a pre-injection matrix.
bool parity_holds(const Field& F, const SegmentSpec& spec, const Matrix& pre);

// C(d,m) x C(d,m-1) repair encoder for failed node with encoder row psi_f.
Matrix repair_encoder(const Field& F, const std::vector<Elem>& psi_f, const Signature& sigma, int m);

// Sum over i in I of (-1)^{sigma(i)+ind_I(i)} R[i, I\{i}], R being d x C(d,m-1).
Elem det_repair_symbol(const Field& F, const Matrix& R, Subset I, const Signature& sigma);

// k = d recovery of a single segment: psi_K^{-1} * codewords.
Matrix det_data_recover(const Field& F, const Matrix& psi_K, const Matrix& codewords);

}  // namespace cascade
