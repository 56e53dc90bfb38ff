#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "cascade/cascade.hpp"

namespace cascade {

struct EncoderMatrix {
  int n = 0, k = 0, d = 0;
  Matrix psi;  // n x d, psi = [Gamma | Upsilon]
  std::vector<Elem> row(int node) const { return psi.row(node - 1); }
};

// Row i is (1, x_i, ..., x_i^{d-1}) with x_i = i - 1.
EncoderMatrix vandermonde_encoder(const Field& F, int n, int k, int d);
// psi * X so that the top k rows become [I | 0].
EncoderMatrix semi_systematize(const Field& F, const EncoderMatrix& enc);
// Every k x k minor of Gamma invertible.
bool check_e1(const Field& F, const EncoderMatrix& enc);
// Every d x d minor of psi invertible.
bool check_e2(const Field& F, const EncoderMatrix& enc);

struct RepairMessage {
  int failed = 0;
  int helper = 0;
  std::vector<int> modes;                  // one per segment, tree order
  std::vector<std::vector<Elem>> blocks;   // C(d-1, m-1) values each; empty for mode 0

  std::size_t symbol_count() const;
  std::vector<std::uint8_t> serialize() const;
  // Block lengths follow from the modes and d.
  static RepairMessage deserialize(const std::vector<std::uint8_t>& bytes, int d);
  bool operator==(const RepairMessage&) const = default;
};

// Lambda and its compression basis for one (failed node, segment).
struct RepairBasis {
  Matrix lambda;               // C(d,m) x C(d,m-1)
  std::vector<std::size_t> pivots;
  Matrix expand;               // rank x C(d,m-1): lambda = lambda[:, pivots] * expand
};

// Injection split of a decoded segment.
struct SegmentSplit {
  Matrix original;   // e_S
  Matrix injected;   // Delta_S
};

class CascadeCode {
 public:
  CascadeCode(Field F, int n, int k, int d, int mu, bool semi_systematic = false);
  CascadeCode(Field F, EncoderMatrix enc, int mu);

  const Field& field() const { return F_; }
  int n() const { return enc_.n; }
  int k() const { return enc_.k; }
  int d() const { return enc_.d; }
  int mu() const { return tree_.mu; }
  std::size_t alpha() const { return tree_.alpha; }
  std::size_t beta() const;
  std::size_t file_size() const { return F_len_; }
  const HierarchyTree& tree() const { return tree_; }
  const EncoderMatrix& encoder() const { return enc_; }

  SuperMessage super_message(const std::vector<Elem>& file) const;
  // n x alpha, row i-1 is node i's share.
  Matrix encode(const SuperMessage& sm) const;
  Matrix encode(const std::vector<Elem>& file) const;

  const RepairBasis& repair_basis(int failed, int segment) const;
  RepairMessage helper_message(int helper, const std::vector<Elem>& share, int failed) const;
  // Full (uncompressed) per-segment vectors share_seg * Lambda.
  std::vector<std::vector<Elem>> decompress(const RepairMessage& msg) const;
  std::vector<Elem> regenerate(int failed, const std::vector<RepairMessage>& msgs) const;

  // Data recovery from k shares; rows of `shares` follow `nodes`.
  std::vector<Elem> recover(const std::vector<int>& nodes, const Matrix& shares,
                            std::vector<SegmentSplit>* splits = nullptr) const;

  // Dimension of span(h -> f) ∩ span(h -> g), measured over unit files.
  std::size_t repair_overlap_dim(int h, int f, int g) const;

 private:
  Field F_;
  EncoderMatrix enc_;
  HierarchyTree tree_;
  std::size_t F_len_ = 0;
  struct BasisCache {
    std::mutex mu;
    std::map<std::tuple<int, int, std::vector<int>>, RepairBasis> entries;
  };
  // Shared between copies; the cache depends only on the encoder.
  std::shared_ptr<BasisCache> cache_ = std::make_shared<BasisCache>();
};

}  // namespace cascade
