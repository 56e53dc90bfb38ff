#include "cascade/cascade.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

#include "cascade/params.hpp"

namespace cascade {

std::vector<InjectionPair> enumerate_injection_pairs(int j, int k, int d) {
  std::vector<InjectionPair> out;
  const int lower = d - k;
  for (int b = 1; b < j && b <= lower; ++b) {
    std::vector<Subset> Bs;
    for (Subset s : subset_index(lower).of_size(b)) Bs.push_back(Subset(s.bits() << k));
    for (Subset B : Bs)
      for (int x : B.elements()) out.push_back({x, B});
    for (Subset B : Bs)
      for (int x = k + 1; x < B.max(); ++x)
        if (!B.contains(x)) out.push_back({x, B});
  }
  return out;
}

int child_mode(int j, Subset B) {
  if (B.size() >= j) throw std::invalid_argument("injection pair needs |B| < parent mode");
  return j - B.size() - 1;
}

Signature child_signature(const Signature& sigma_parent, Subset B) {
  Signature s(sigma_parent.size());
  for (int i = 1; i <= static_cast<int>(s.size()); ++i) s[i - 1] = 1 + sigma_parent[i - 1] + ind(B.with(i), i);
  return s;
}

int HierarchyTree::child(int parent, int x, Subset B) const {
  auto it = child_index_.find({parent, x, B.bits()});
  return it == child_index_.end() ? -1 : it->second;
}

std::vector<int> HierarchyTree::mode_ascending() const {
  std::vector<int> ids(segments.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  std::stable_sort(ids.begin(), ids.end(),
                   [&](int a, int b) { return segments[a].mode < segments[b].mode; });
  return ids;
}

HierarchyTree build_tree(int k, int d, int mu) {
  check_range(k, d, mu);
  if (d > kMaxD) throw std::invalid_argument("d must not exceed " + std::to_string(kMaxD));
  HierarchyTree t;
  t.k = k;
  t.d = d;
  t.mu = mu;
  SegmentSpec root;
  root.id = 0;
  root.d = d;
  root.k = k;
  root.mode = mu;
  root.sigma.assign(d, 0);
  t.segments.push_back(root);
  t.children.emplace_back();
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int pid = queue.front();
    queue.pop_front();
    for (const auto& pr : enumerate_injection_pairs(t.segments[pid].mode, k, d)) {
      const SegmentSpec& P = t.segments[pid];
      SegmentSpec c;
      c.id = static_cast<int>(t.segments.size());
      c.d = d;
      c.k = k;
      c.mode = child_mode(P.mode, pr.B);
      c.sigma = child_signature(P.sigma, pr.B);
      c.parent = pid;
      c.pair_x = pr.x;
      c.pair_B = pr.B;
      t.child_index_[{pid, pr.x, pr.B.bits()}] = c.id;
      t.children[pid].push_back(c.id);
      t.segments.push_back(std::move(c));
      t.children.emplace_back();
      queue.push_back(t.segments.back().id);
    }
  }
  std::size_t off = 0;
  for (const auto& s : t.segments) {
    t.offset.push_back(off);
    off += s.columns();
  }
  t.alpha = off;
  return t;
}

Matrix injection_matrix(const Field& F, const SegmentSpec& parent, const Matrix& parent_pre,
                        const InjectionPair& pair, int m) {
  const int d = parent.d;
  const auto& idx = subset_index(d);
  Matrix D(d, binomial(d, m));
  for (Subset I : idx.of_size(m)) {
    if (!I.disjoint(pair.B)) continue;
    for (int i = std::max(I.max(), 0) + 1; i <= d; ++i) {
      if (pair.B.contains(i)) continue;
      Subset L = I.with(i) | pair.B;
      Elem p = parent_pre(pair.x - 1, idx.rank(L));
      D(i - 1, idx.rank(I)) = F.sign(1 + parent.sig(i) + ind(L, i), p);
    }
  }
  return D;
}

std::vector<SymbolSlot> file_symbol_layout(const HierarchyTree& tree) {
  std::vector<SymbolSlot> out;
  for (const auto& s : tree.segments)
    for (const auto& sym : free_symbols(tree.d, tree.k, s.mode)) out.push_back({s.id, sym});
  return out;
}

std::size_t file_length(const HierarchyTree& tree) {
  std::size_t n = 0;
  for (const auto& s : tree.segments) n += free_symbols(tree.d, tree.k, s.mode).size();
  return n;
}

Matrix SuperMessage::M() const { return hstack(post); }

SuperMessage build_super_message(const Field& F, const HierarchyTree& tree, const std::vector<Elem>& file) {
  SuperMessage sm;
  sm.tree = tree;
  std::size_t pos = 0;
  for (const auto& s : tree.segments) {
    std::size_t cnt = free_symbols(tree.d, tree.k, s.mode).size();
    if (pos + cnt > file.size()) throw std::invalid_argument("file shorter than F");
    std::vector<Elem> vals(file.begin() + pos, file.begin() + pos + cnt);
    sm.pre.push_back(build_pre_injection(F, s, vals));
    pos += cnt;
  }
  if (pos != file.size())
    throw std::invalid_argument("file length " + std::to_string(file.size()) + " does not equal F = " +
                                std::to_string(pos));
  sm.post = sm.pre;
  for (const auto& s : tree.segments) {
    if (s.is_root()) continue;
    const SegmentSpec& P = tree[s.parent];
    Matrix D = injection_matrix(F, P, sm.pre[P.id], {s.pair_x, s.pair_B}, s.mode);
    sm.post[s.id] = mat_add(F, sm.pre[s.id], D);
  }
  return sm;
}

CascadeAudit audit_super_message(const Field& F, const SuperMessage& sm) {
  CascadeAudit a;
  const HierarchyTree& t = sm.tree;
  const auto& idx = subset_index(t.d);
  const Subset upper = Subset::interval(1, t.k);
  for (const auto& s : t.segments) {
    if (!parity_holds(F, s, sm.pre[s.id])) a.parity = false;
    const auto& cols = idx.of_size(s.mode);
    Matrix inj = mat_sub(F, sm.post[s.id], sm.pre[s.id]);
    for (std::size_t ci = 0; ci < cols.size(); ++ci)
      for (int i = 1; i <= t.d; ++i) {
        if (inj(i - 1, ci) == 0) continue;
        ++a.injections_checked;
        if (s.is_root() || !injection_admissible(i, cols[ci], s.pair_B)) a.admissible = false;
      }
    if (s.mode == 0)
      for (int x = t.k + 1; x <= t.d; ++x)
        if (sm.post[s.id](x - 1, 0) != 0) a.mode0_bottom_zero = false;
    for (std::size_t ci = 0; ci < cols.size(); ++ci) {
      Subset I = cols[ci];
      for (int x = t.k + 1; x <= t.d; ++x) {
        if (classify_entry(x, I, t.k) != Group::D) continue;
        Subset A = I & upper, B = I - A;
        int q = t.child(s.id, x, B);
        if (q < 0) {
          a.primary_complete = false;
          continue;
        }
        int top = A.max();
        Elem want = F.sign(1 + s.sig(top) + ind(I, top), sm.pre[s.id](x - 1, ci));
        Elem got = F.sub(sm.post[q](top - 1, idx.rank(A.without(top))), sm.pre[q](top - 1, idx.rank(A.without(top))));
        if (want != got) a.primary_complete = false;
      }
    }
  }
  return a;
}

SuperMessage build_super_message(const Field& F, int k, int d, int mu, const std::vector<Elem>& file) {
  return build_super_message(F, build_tree(k, d, mu), file);
}

}  // namespace cascade
