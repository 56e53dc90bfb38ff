#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cascade/codec.hpp"

namespace cascade {

// On-disk share: "CSCD", version, n, k, d, mu, q (u16 BE), node, then the
// payload as u16 BE elements. Stripes are stored back to back, alpha each.
struct ShareFile {
  static constexpr char kMagic[4] = {'C', 'S', 'C', 'D'};
  static constexpr std::uint8_t kVersion = 1;

  int n = 0, k = 0, d = 0, mu = 0;
  std::uint32_t q = 0;
  int node = 0;
  std::vector<Elem> payload;

  std::vector<std::uint8_t> to_bytes() const;
  static ShareFile from_bytes(const std::vector<std::uint8_t>& bytes);
  bool operator==(const ShareFile&) const = default;
};

void write_share_file(const std::filesystem::path& path, const ShareFile& share);
ShareFile read_share_file(const std::filesystem::path& path);
std::filesystem::path share_path(const std::filesystem::path& dir, int node);

enum class SymbolFormat { Bytes, U16 };

struct Manifest {
  int n = 0, k = 0, d = 0, mu = 0;
  std::uint32_t q = 0;
  bool semi_systematic = false;
  SymbolFormat format = SymbolFormat::Bytes;
  std::size_t input_symbols = 0;
  std::size_t stripe_symbols = 0;  // F
  std::size_t stripes = 0;
  std::size_t pad = 0;
  std::size_t alpha = 0;
  std::size_t beta = 0;

  std::string to_text() const;
  static Manifest parse(const std::string& text);
  bool operator==(const Manifest&) const = default;
};

void write_manifest(const std::filesystem::path& path, const Manifest& m);
Manifest read_manifest(const std::filesystem::path& path);

Field field_for(std::uint32_t q);
CascadeCode code_for(const Manifest& m);

std::vector<Elem> bytes_to_symbols(const std::vector<std::uint8_t>& bytes, SymbolFormat fmt, const Field& F);
std::vector<std::uint8_t> symbols_to_bytes(const std::vector<Elem>& symbols, SymbolFormat fmt);

// Striped payloads: node i's payload is its share of every stripe in order.
struct StripedEncoding {
  std::size_t stripes = 0;
  std::size_t pad = 0;
  std::vector<std::vector<Elem>> payloads;  // n entries
};
StripedEncoding encode_striped(const CascadeCode& code, const std::vector<Elem>& symbols);

struct RepairOutcome {
  std::vector<Elem> payload;
  std::size_t symbols_transferred = 0;
};
RepairOutcome repair_striped(const CascadeCode& code, int failed,
                             const std::map<int, std::vector<Elem>>& helper_payloads, std::size_t stripes);

// Returns stripes * F symbols; the caller strips padding.
std::vector<Elem> recover_striped(const CascadeCode& code, const std::map<int, std::vector<Elem>>& payloads,
                                  std::size_t stripes);

// In-memory cluster with failure injection and a bandwidth ledger.
class Cluster {
 public:
  Cluster(CascadeCode code, const std::vector<Elem>& symbols);

  const CascadeCode& code() const { return code_; }
  bool alive(int node) const { return payloads_.at(node - 1).has_value(); }
  std::vector<int> live_nodes() const;
  const std::vector<Elem>& payload(int node) const;
  std::size_t stripes() const { return stripes_; }

  void fail(int node);
  // Regenerates `failed` from the given helpers; returns symbols moved.
  std::size_t repair(int failed, const std::vector<int>& helpers);
  std::vector<Elem> recover(const std::vector<int>& nodes) const;
  const std::vector<std::size_t>& bandwidth_ledger() const { return ledger_; }

 private:
  CascadeCode code_;
  std::size_t stripes_ = 0;
  std::size_t length_ = 0;
  std::vector<std::optional<std::vector<Elem>>> payloads_;
  std::vector<std::size_t> ledger_;
};

struct VerifyOptions {
  int k = 0, d = 0, mu = 0, n = 0;
  std::uint32_t q = 0;
  bool exhaustive = false;
  std::uint64_t seed = 1;
};
// Runs parameter, structure, repair and recovery checks; reports one line per check.
bool run_verification(const VerifyOptions& opt, std::ostream& out);

}  // namespace cascade
