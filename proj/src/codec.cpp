#include "cascade/codec.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>

namespace cascade {

namespace {

void for_each_combination(int n, int r, const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  for (Subset s : subset_index(n).of_size(r)) {
    std::vector<std::size_t> rows;
    for (int x : s.elements()) rows.push_back(static_cast<std::size_t>(x - 1));
    if (!fn(rows)) return;
  }
}

bool all_minors_invertible(const Field& F, const Matrix& A, int r) {
  bool ok = true;
  for_each_combination(static_cast<int>(A.rows()), r, [&](const std::vector<std::size_t>& rows) {
    ok = rank(F, A.select_rows(rows)) == static_cast<std::size_t>(r);
    return ok;
  });
  return ok;
}

std::vector<int> parity_of(const Signature& s) {
  std::vector<int> p(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) p[i] = s[i] & 1;
  return p;
}

}  // namespace

EncoderMatrix vandermonde_encoder(const Field& F, int n, int k, int d) {
  if (k < 1 || d < k || n < d)
    throw std::invalid_argument("encoder needs n >= d >= k >= 1");
  if (F.order() < static_cast<std::uint32_t>(n))
    throw std::invalid_argument("field order " + std::to_string(F.order()) + " is smaller than n = " +
                                std::to_string(n));
  EncoderMatrix e{n, k, d, Matrix(n, d)};
  for (int i = 0; i < n; ++i) {
    Elem p = 1;
    for (int j = 0; j < d; ++j) {
      e.psi(i, j) = p;
      p = F.mul(p, static_cast<Elem>(i));
    }
  }
  return e;
}

EncoderMatrix semi_systematize(const Field& F, const EncoderMatrix& enc) {
  const int k = enc.k, d = enc.d;
  Matrix A = enc.psi.block(0, 0, k, k);
  Matrix B = enc.psi.block(0, k, k, d - k);
  Matrix Ai = mat_inverse(F, A);
  Matrix X(d, d);
  X.set_block(0, 0, Ai);
  Matrix AiB = mat_mul(F, Ai, B);
  for (std::size_t r = 0; r < AiB.rows(); ++r)
    for (std::size_t c = 0; c < AiB.cols(); ++c) X(r, k + c) = F.neg(AiB(r, c));
  for (int i = k; i < d; ++i) X(i, i) = 1;
  return {enc.n, k, d, mat_mul(F, enc.psi, X)};
}

bool check_e1(const Field& F, const EncoderMatrix& enc) {
  return all_minors_invertible(F, enc.psi.block(0, 0, enc.n, enc.k), enc.k);
}

bool check_e2(const Field& F, const EncoderMatrix& enc) { return all_minors_invertible(F, enc.psi, enc.d); }

std::size_t RepairMessage::symbol_count() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size();
  return n;
}

std::vector<std::uint8_t> RepairMessage::serialize() const {
  std::vector<std::uint8_t> out;
  out.push_back(static_cast<std::uint8_t>(failed));
  out.push_back(static_cast<std::uint8_t>(helper));
  out.push_back(static_cast<std::uint8_t>(blocks.size() >> 8));
  out.push_back(static_cast<std::uint8_t>(blocks.size() & 0xFF));
  for (std::size_t s = 0; s < blocks.size(); ++s) {
    out.push_back(static_cast<std::uint8_t>(modes[s]));
    for (Elem e : blocks[s]) {
      out.push_back(static_cast<std::uint8_t>(e >> 8));
      out.push_back(static_cast<std::uint8_t>(e & 0xFF));
    }
  }
  return out;
}

RepairMessage RepairMessage::deserialize(const std::vector<std::uint8_t>& bytes, int d) {
  auto need = [&](std::size_t pos, std::size_t len) {
    if (pos + len > bytes.size()) throw std::invalid_argument("repair message truncated");
  };
  need(0, 4);
  RepairMessage msg;
  msg.failed = bytes[0];
  msg.helper = bytes[1];
  std::size_t count = (std::size_t{bytes[2]} << 8) | bytes[3];
  std::size_t pos = 4;
  for (std::size_t s = 0; s < count; ++s) {
    need(pos, 1);
    int mode = bytes[pos++];
    std::size_t len = binomial(d - 1, mode - 1);
    need(pos, 2 * len);
    std::vector<Elem> blk(len);
    for (auto& e : blk) {
      e = (Elem{bytes[pos]} << 8) | bytes[pos + 1];
      pos += 2;
    }
    msg.modes.push_back(mode);
    msg.blocks.push_back(std::move(blk));
  }
  if (pos != bytes.size()) throw std::invalid_argument("trailing bytes after repair message");
  return msg;
}

CascadeCode::CascadeCode(Field F, int n, int k, int d, int mu, bool semi_systematic)
    : CascadeCode(F, semi_systematic ? semi_systematize(F, vandermonde_encoder(F, n, k, d))
                                     : vandermonde_encoder(F, n, k, d),
                  mu) {}

CascadeCode::CascadeCode(Field F, EncoderMatrix enc, int mu)
    : F_(std::move(F)), enc_(std::move(enc)), tree_(build_tree(enc_.k, enc_.d, mu)) {
  if (enc_.n > 255) throw std::invalid_argument("at most 255 nodes supported");
  if (static_cast<int>(enc_.psi.rows()) != enc_.n || static_cast<int>(enc_.psi.cols()) != enc_.d)
    throw std::invalid_argument("encoder shape does not match n x d");
  if (enc_.n < enc_.d) throw std::invalid_argument("need n >= d");
  F_len_ = file_length(tree_);
}

std::size_t CascadeCode::beta() const {
  std::size_t b = 0;
  for (const auto& s : tree_.segments) b += binomial(d() - 1, s.mode - 1);
  return b;
}

SuperMessage CascadeCode::super_message(const std::vector<Elem>& file) const {
  return build_super_message(F_, tree_, file);
}

Matrix CascadeCode::encode(const SuperMessage& sm) const { return mat_mul(F_, enc_.psi, sm.M()); }

Matrix CascadeCode::encode(const std::vector<Elem>& file) const { return encode(super_message(file)); }

const RepairBasis& CascadeCode::repair_basis(int failed, int segment) const {
  const SegmentSpec& s = tree_[segment];
  if (s.mode < 1) throw std::invalid_argument("mode-0 segments have no repair encoder");
  auto key = std::make_tuple(failed, s.mode, parity_of(s.sigma));
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto it = cache_->entries.find(key);
  if (it != cache_->entries.end()) return it->second;
  RepairBasis rb;
  rb.lambda = repair_encoder(F_, enc_.row(failed), s.sigma, s.mode);
  ColumnBasis cb;
  Matrix R = rref(F_, rb.lambda, &cb);
  rb.pivots = cb.pivots;
  rb.expand = R.block(0, 0, cb.rank, R.cols());
  return cache_->entries.emplace(key, std::move(rb)).first->second;
}

namespace {

std::vector<Elem> slice(const std::vector<Elem>& v, std::size_t off, std::size_t len) {
  return {v.begin() + off, v.begin() + off + len};
}

}  // namespace

RepairMessage CascadeCode::helper_message(int helper, const std::vector<Elem>& share, int failed) const {
  if (helper == failed) throw std::invalid_argument("helper must differ from the failed node");
  if (helper < 1 || helper > n() || failed < 1 || failed > n()) throw std::out_of_range("node index out of range");
  if (share.size() != alpha()) throw std::invalid_argument("share length must equal alpha");
  RepairMessage msg;
  msg.failed = failed;
  msg.helper = helper;
  for (const auto& s : tree_.segments) {
    msg.modes.push_back(s.mode);
    if (s.mode == 0) {
      msg.blocks.emplace_back();
      continue;
    }
    const RepairBasis& rb = repair_basis(failed, s.id);
    auto full = vec_mat(F_, slice(share, tree_.offset[s.id], s.columns()), rb.lambda);
    std::vector<Elem> sent;
    for (auto p : rb.pivots) sent.push_back(full[p]);
    msg.blocks.push_back(std::move(sent));
  }
  return msg;
}

std::vector<std::vector<Elem>> CascadeCode::decompress(const RepairMessage& msg) const {
  if (msg.blocks.size() != tree_.size()) throw std::invalid_argument("repair message has wrong segment count");
  std::vector<std::vector<Elem>> out;
  for (const auto& s : tree_.segments) {
    if (msg.modes[s.id] != s.mode) throw std::invalid_argument("repair message mode mismatch");
    if (s.mode == 0) {
      out.emplace_back();
      continue;
    }
    const RepairBasis& rb = repair_basis(msg.failed, s.id);
    if (msg.blocks[s.id].size() != rb.pivots.size())
      throw std::invalid_argument("repair block length mismatch");
    out.push_back(vec_mat(F_, msg.blocks[s.id], rb.expand));
  }
  return out;
}

std::vector<Elem> CascadeCode::regenerate(int failed, const std::vector<RepairMessage>& msgs) const {
  if (static_cast<int>(msgs.size()) != d()) throw std::invalid_argument("regeneration needs exactly d helpers");
  std::vector<std::size_t> H;
  std::set<int> seen;
  for (const auto& m : msgs) {
    if (m.failed != failed) throw std::invalid_argument("repair message addressed to another node");
    if (m.helper == failed) throw std::invalid_argument("helper equals failed node");
    if (!seen.insert(m.helper).second) throw std::invalid_argument("duplicate helper");
    H.push_back(static_cast<std::size_t>(m.helper - 1));
  }
  Matrix inv = mat_inverse(F_, enc_.psi.select_rows(H));
  std::vector<std::vector<std::vector<Elem>>> parts;
  for (const auto& m : msgs) parts.push_back(decompress(m));

  const auto& idx = subset_index(d());
  std::vector<Matrix> R(tree_.size());
  std::vector<Elem> out(alpha(), 0);
  for (const auto& s : tree_.segments) {
    if (s.mode >= 1) {
      Matrix stack(d(), binomial(d(), s.mode - 1));
      for (int h = 0; h < d(); ++h)
        for (std::size_t c = 0; c < stack.cols(); ++c) stack(h, c) = parts[h][s.id][c];
      R[s.id] = mat_mul(F_, inv, stack);
    }
    const auto& cols = idx.of_size(s.mode);
    for (std::size_t ci = 0; ci < cols.size(); ++ci) {
      Subset I = cols[ci];
      Elem v = s.mode >= 1 ? det_repair_symbol(F_, R[s.id], I, s.sigma) : 0;
      if (!s.is_root() && I.disjoint(s.pair_B))
        v = F_.sub(v, R[s.parent](s.pair_x - 1, idx.rank(I | s.pair_B)));
      out[tree_.offset[s.id] + ci] = v;
    }
  }
  return out;
}

std::vector<Elem> CascadeCode::recover(const std::vector<int>& nodes, const Matrix& shares,
                                       std::vector<SegmentSplit>* splits_out) const {
  const int k_ = k(), d_ = d();
  if (static_cast<int>(nodes.size()) != k_) throw std::invalid_argument("recovery needs exactly k shares");
  if (shares.rows() != nodes.size() || shares.cols() != alpha())
    throw std::invalid_argument("share matrix must be k x alpha");
  std::vector<std::size_t> K;
  std::set<int> seen;
  for (int v : nodes) {
    if (v < 1 || v > n()) throw std::out_of_range("node index out of range");
    if (!seen.insert(v).second) throw std::invalid_argument("duplicate node in recovery set");
    K.push_back(static_cast<std::size_t>(v - 1));
  }
  Matrix psiK = enc_.psi.select_rows(K);
  Matrix Ginv = mat_inverse(F_, psiK.block(0, 0, k_, k_));
  Matrix Ups = psiK.block(0, k_, k_, d_ - k_);

  const auto& idx = subset_index(d_);
  const Subset upper = Subset::interval(1, k_);
  std::vector<SegmentSplit> split(tree_.size());

  for (int sid : tree_.mode_ascending()) {
    const SegmentSpec& S = tree_[sid];
    const int m = S.mode;
    const auto& cols = idx.of_size(m);
    Matrix fS(d_, cols.size());
    for (std::size_t ci = cols.size(); ci-- > 0;) {
      Subset I = cols[ci];
      std::vector<Elem> low(d_ - k_, 0);
      for (int x = k_ + 1; x <= d_; ++x) {
        Elem v = 0;
        switch (classify_entry(x, I, k_)) {
          case Group::D: {
            Subset A = I & upper, B = I - A;
            int a = A.max();
            int q = tree_.child(sid, x, B);
            v = F_.sign(1 + S.sig(a) + ind(I, a), split[q].injected(a - 1, idx.rank(A.without(a))));
            break;
          }
          case Group::P: {
            Subset J = I.with(x);
            Elem s = 0;
            for (int t : I.elements())
              s = F_.add(s, F_.sign(S.sig(t) + ind(J, t), fS(t - 1, idx.rank(J.without(t)))));
            v = F_.sign(S.sig(x) + m, s);
            if (!S.is_root() && !S.pair_B.contains(x) && I.disjoint(S.pair_B)) {
              const SegmentSpec& P = tree_[S.parent];
              Subset L = J | S.pair_B;
              Subset A2 = I & upper;
              if (!A2.empty()) {
                int a = A2.max();
                int sib = tree_.child(P.id, S.pair_x, L - A2);
                Elem pv = F_.sign(1 + P.sig(a) + ind(L, a), split[sib].injected(a - 1, idx.rank(A2.without(a))));
                v = F_.add(v, F_.sign(1 + P.sig(x) + ind(L, x), pv));
              }
            }
            break;
          }
          default:
            break;
        }
        low[x - k_ - 1] = v;
        fS(x - 1, ci) = v;
      }
      std::vector<Elem> rhs(k_);
      for (int r = 0; r < k_; ++r) {
        Elem acc = shares(r, tree_.offset[sid] + ci);
        for (int j = 0; j < d_ - k_; ++j) acc = F_.sub(acc, F_.mul(Ups(r, j), low[j]));
        rhs[r] = acc;
      }
      for (int r = 0; r < k_; ++r) {
        Elem acc = 0;
        for (int j = 0; j < k_; ++j) acc = F_.add(acc, F_.mul(Ginv(r, j), rhs[j]));
        fS(r, ci) = acc;
      }
    }
    // Parity positions hold original parity plus any injected value.
    Matrix e = fS;
    for (std::size_t ci = 0; ci < cols.size(); ++ci) {
      Subset I = cols[ci];
      for (int i = std::max(I.max(), 0) + 1; i <= d_; ++i) {
        Subset J = I.with(i);
        Elem s = 0;
        for (int t : I.elements())
          s = F_.add(s, F_.sign(S.sig(t) + ind(J, t), fS(t - 1, idx.rank(J.without(t)))));
        e(i - 1, ci) = F_.sign(S.sig(i) + m, s);
      }
    }
    split[sid] = {e, mat_sub(F_, fS, e)};
  }

  std::vector<Elem> file;
  file.reserve(F_len_);
  for (const auto& s : tree_.segments) {
    auto v = read_free_symbols(F_, s, split[s.id].original);
    file.insert(file.end(), v.begin(), v.end());
  }
  if (splits_out) *splits_out = std::move(split);
  return file;
}

std::size_t CascadeCode::repair_overlap_dim(int h, int f, int g) const {
  const std::size_t b = beta();
  Matrix A(b, F_len_), B(b, F_len_);
  std::vector<Elem> unit(F_len_, 0);
  for (std::size_t j = 0; j < F_len_; ++j) {
    unit[j] = 1;
    auto share = encode(unit).row(h - 1);
    unit[j] = 0;
    auto mf = helper_message(h, share, f), mg = helper_message(h, share, g);
    std::size_t r = 0;
    for (const auto& blk : mf.blocks)
      for (Elem v : blk) A(r++, j) = v;
    r = 0;
    for (const auto& blk : mg.blocks)
      for (Elem v : blk) B(r++, j) = v;
  }
  return rank(F_, A) + rank(F_, B) - rank(F_, vstack({A, B}));
}

}  // namespace cascade
