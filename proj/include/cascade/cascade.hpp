#pragma once

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "cascade/detseg.hpp"

namespace cascade {

struct InjectionPair {
  int x = 0;
  Subset B;
  bool operator==(const InjectionPair&) const = default;
};

// Children of a mode-j parent, in canonical order: |B| ascending, then x in B
// before x not in B, then B lexicographic, then x ascending.
std::vector<InjectionPair> enumerate_injection_pairs(int j, int k, int d);
int child_mode(int j, Subset B);
Signature child_signature(const Signature& sigma_parent, Subset B);

class HierarchyTree {
 public:
  int k = 0, d = 0, mu = 0;
  std::vector<SegmentSpec> segments;  // breadth-first, root first
  std::vector<std::vector<int>> children;
  std::vector<std::size_t> offset;  // first column of each segment in M
  std::size_t alpha = 0;

  const SegmentSpec& operator[](int id) const { return segments[id]; }
  std::size_t size() const { return segments.size(); }
  // Child of `parent` with injection pair (x, B), or -1.
  int child(int parent, int x, Subset B) const;
  // Segment ids sorted by mode ascending, tree order within a mode.
  std::vector<int> mode_ascending() const;

 private:
  friend HierarchyTree build_tree(int k, int d, int mu);
  std::map<std::tuple<int, int, std::uint32_t>, int> child_index_;
};

HierarchyTree build_tree(int k, int d, int mu);

// d x C(d,m) injection matrix carried from the parent's pre-injection matrix.
Matrix injection_matrix(const Field& F, const SegmentSpec& parent, const Matrix& parent_pre,
                        const InjectionPair& pair, int m);

// True when (i, I) may carry an injected value for pair B.
inline bool injection_admissible(int i, Subset I, Subset B) {
  return i > I.max() && !B.contains(i) && I.disjoint(B);
}

struct SymbolSlot {
  int segment = 0;
  SymbolId symbol;
  bool operator==(const SymbolSlot&) const = default;
};

// File position -> (segment, free symbol); segments in tree order.
std::vector<SymbolSlot> file_symbol_layout(const HierarchyTree& tree);

struct SuperMessage {
  HierarchyTree tree;
  std::vector<Matrix> pre;   // per segment, before injection
  std::vector<Matrix> post;  // per segment, after injection
  Matrix M() const;
};

SuperMessage build_super_message(const Field& F, const HierarchyTree& tree, const std::vector<Elem>& file);
SuperMessage build_super_message(const Field& F, int k, int d, int mu, const std::vector<Elem>& file);

struct CascadeAudit {
  bool parity = true;             // every w-group satisfies its parity equation
  bool admissible = true;         // injections only at admissible positions
  bool primary_complete = true;   // each D-group symbol sits at its primary slot in the child
  bool mode0_bottom_zero = true;  // lower rows of mode-0 segments vanish
  std::size_t injections_checked = 0;
  bool ok() const { return parity && admissible && primary_complete && mode0_bottom_zero; }
};
CascadeAudit audit_super_message(const Field& F, const SuperMessage& sm);

// Number of file symbols (sum of free symbols over all segments).
std::size_t file_length(const HierarchyTree& tree);

}  // namespace cascade
