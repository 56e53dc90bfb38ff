// storlab: encode, damage, repair and recover files with cascade codes.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <map>
#include <set>

#include "cascade/params.hpp"
#include "cascade/storage.hpp"

namespace fs = std::filesystem;
using namespace cascade;

namespace {

double ratio(const BigInt& a, const BigInt& b) { return a.convert_to<double>() / b.convert_to<double>(); }

int cmd_params(int k, int d, int mu, bool all_modes, bool curve) {
  if (!all_modes && !curve && mu == 0) throw std::invalid_argument("give mu, --all-modes or --curve");
  check_range(k, d, all_modes || curve ? 1 : mu);
  auto sp = special_points(k, d);
  std::vector<int> modes;
  if (all_modes || curve)
    for (int m = 1; m <= k; ++m) modes.push_back(m);
  else
    modes.push_back(mu);

  if (curve) {
    std::cout << "mu,alpha,beta,F,alpha_over_F,beta_over_F\n";
    for (int m : modes) {
      auto p = code_params(k, d, m);
      std::cout << m << "," << p.alpha << "," << p.beta << "," << p.F << "," << std::setprecision(10)
                << ratio(p.alpha, p.F) << "," << ratio(p.beta, p.F) << "\n";
    }
    return 0;
  }
  std::cout << "k=" << k << " d=" << d << "\n";
  std::cout << std::left << std::setw(4) << "mu" << std::setw(12) << "alpha" << std::setw(12) << "beta"
            << std::setw(14) << "F" << std::setw(12) << "alpha/F" << std::setw(12) << "beta/F"
            << "flags\n";
  for (int m : modes) {
    auto p = code_params(k, d, m);
    std::string flags;
    if (m == 1) flags += "MBR ";
    if (m == k) flags += "MSR ";
    if (m == 1 || m == k || (m == k - 1 && sp.cutset_km1)) flags += "cut-set";
    std::cout << std::setw(4) << m << std::setw(12) << p.alpha.str() << std::setw(12) << p.beta.str()
              << std::setw(14) << p.F.str() << std::setw(12) << std::setprecision(6) << ratio(p.alpha, p.F)
              << std::setw(12) << ratio(p.beta, p.F) << flags << "\n";
  }
  return 0;
}

std::vector<std::uint8_t> read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

ShareFile make_share(const Manifest& m, int node, std::vector<Elem> payload) {
  return {m.n, m.k, m.d, m.mu, m.q, node, std::move(payload)};
}

void check_share(const Manifest& m, const ShareFile& s, int node) {
  if (s.n != m.n || s.k != m.k || s.d != m.d || s.mu != m.mu || s.q != m.q)
    throw std::runtime_error("share for node " + std::to_string(node) + " has parameters that differ from the manifest");
  if (s.node != node) throw std::runtime_error("share file for node " + std::to_string(node) + " is labelled node " +
                                               std::to_string(s.node));
  if (s.payload.size() != m.stripes * m.alpha)
    throw std::runtime_error("share for node " + std::to_string(node) + " has the wrong length");
}

int cmd_encode(const fs::path& input, const fs::path& dir, int n, int k, int d, int mu, std::uint32_t q, bool semi,
               const std::string& fmt) {
  Manifest m;
  m.n = n;
  m.k = k;
  m.d = d;
  m.mu = mu;
  m.format = fmt == "u16" ? SymbolFormat::U16 : SymbolFormat::Bytes;
  m.q = q ? q : (m.format == SymbolFormat::Bytes ? 257 : Field::default_for(n).order());
  m.semi_systematic = semi;
  Field F = field_for(m.q);
  if (F.order() < static_cast<std::uint32_t>(n))
    throw std::runtime_error("q = " + std::to_string(m.q) + " is smaller than n = " + std::to_string(n));
  CascadeCode code(F, n, k, d, mu, semi);
  auto symbols = bytes_to_symbols(read_all(input), m.format, F);
  auto enc = encode_striped(code, symbols);
  m.input_symbols = symbols.size();
  m.stripe_symbols = code.file_size();
  m.stripes = enc.stripes;
  m.pad = enc.pad;
  m.alpha = code.alpha();
  m.beta = code.beta();
  fs::create_directories(dir);
  for (int i = 1; i <= n; ++i) write_share_file(share_path(dir, i), make_share(m, i, enc.payloads[i - 1]));
  write_manifest(dir / "manifest.txt", m);
  std::cout << "encoded " << symbols.size() << " symbols into " << n << " shares: " << m.stripes
            << " stripe(s) of F=" << m.stripe_symbols << ", alpha=" << m.alpha << ", pad=" << m.pad << "\n";
  return 0;
}

int cmd_repair(const fs::path& dir, int failed, const std::vector<int>& helpers, const fs::path& out_path) {
  Manifest m = read_manifest(dir / "manifest.txt");
  if (failed < 1 || failed > m.n) throw std::runtime_error("failed node out of range");
  if (static_cast<int>(helpers.size()) != m.d)
    throw std::runtime_error("need exactly d = " + std::to_string(m.d) + " helpers, got " +
                             std::to_string(helpers.size()));
  std::map<int, std::vector<Elem>> payloads;
  for (int h : helpers) {
    if (h == failed) throw std::runtime_error("helper " + std::to_string(h) + " is the failed node");
    if (h < 1 || h > m.n) throw std::runtime_error("helper out of range");
    if (payloads.count(h)) throw std::runtime_error("helper " + std::to_string(h) + " listed twice");
    auto s = read_share_file(share_path(dir, h));
    check_share(m, s, h);
    payloads[h] = std::move(s.payload);
  }
  CascadeCode code = code_for(m);
  auto r = repair_striped(code, failed, payloads, m.stripes);
  fs::path target = out_path.empty() ? share_path(dir, failed) : out_path;
  write_share_file(target, make_share(m, failed, r.payload));
  std::cout << "regenerated node " << failed << " -> " << target.string() << "\n"
            << "bandwidth: " << r.symbols_transferred << " symbols (" << m.d << " helpers x beta=" << code.beta()
            << " x " << m.stripes << " stripe(s))\n";
  return 0;
}

int cmd_recover(const fs::path& dir, const std::vector<int>& nodes, const fs::path& output) {
  Manifest m = read_manifest(dir / "manifest.txt");
  std::set<int> uniq(nodes.begin(), nodes.end());
  if (uniq.size() != nodes.size()) throw std::runtime_error("duplicate node in --nodes");
  std::map<int, std::vector<Elem>> payloads;
  if (nodes.empty()) {
    for (int i = 1; i <= m.n && static_cast<int>(payloads.size()) < m.k; ++i) {
      if (!fs::exists(share_path(dir, i))) continue;
      auto s = read_share_file(share_path(dir, i));
      check_share(m, s, i);
      payloads[i] = std::move(s.payload);
    }
  } else {
    for (int v : nodes) {
      auto s = read_share_file(share_path(dir, v));
      check_share(m, s, v);
      payloads[v] = std::move(s.payload);
    }
  }
  if (static_cast<int>(payloads.size()) < m.k)
    throw std::runtime_error("need k = " + std::to_string(m.k) + " shares, found " + std::to_string(payloads.size()));
  auto symbols = recover_striped(code_for(m), payloads, m.stripes);
  symbols.resize(m.input_symbols);
  auto bytes = symbols_to_bytes(symbols, m.format);
  std::ofstream out(output, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + output.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  std::cout << "recovered " << symbols.size() << " symbols from nodes";
  for (const auto& kv : payloads) std::cout << " " << kv.first;
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"storlab: cascade regenerating code storage lab"};
  app.require_subcommand(1);

  int k = 0, d = 0, mu = 0, n = 0;
  std::uint32_t q = 0;
  bool all_modes = false, curve = false, semi = false, exhaustive = false;
  std::uint64_t seed = 1;
  std::string input, dir, output, fmt = "bytes";
  int failed = 0;
  std::vector<int> helpers, nodes;

  auto* params = app.add_subcommand("params", "storage/bandwidth/file-size table");
  params->add_option("k", k)->required();
  params->add_option("d", d)->required();
  params->add_option("mu", mu);
  params->add_flag("--all-modes", all_modes, "every mode 1..k");
  params->add_flag("--curve", curve, "normalized trade-off points as CSV");

  auto* encode = app.add_subcommand("encode", "encode a file into n share files");
  encode->add_option("input", input)->required()->check(CLI::ExistingFile);
  encode->add_option("-o,--out", dir, "output directory")->required();
  encode->add_option("-n", n)->required();
  encode->add_option("-k", k)->required();
  encode->add_option("-d", d)->required();
  encode->add_option("--mu", mu)->required();
  encode->add_option("-q,--q", q, "field order (prime or power of two)");
  encode->add_flag("--semi-systematic", semi);
  encode->add_option("--symbols", fmt, "input symbol format")->check(CLI::IsMember({"bytes", "u16"}));

  auto* repair = app.add_subcommand("repair", "regenerate a failed node from d helpers");
  repair->add_option("dir", dir)->required()->check(CLI::ExistingDirectory);
  repair->add_option("--fail", failed)->required();
  repair->add_option("--helpers", helpers)->required();
  repair->add_option("-o,--out", output, "write the share here instead of the shares directory");

  auto* recover = app.add_subcommand("recover", "rebuild the file from k shares");
  recover->add_option("dir", dir)->required()->check(CLI::ExistingDirectory);
  recover->add_option("--nodes", nodes, "share indices (default: first k present)");
  recover->add_option("-o,--out", output)->required();

  auto* verify = app.add_subcommand("verify", "self-check a parameter set");
  verify->add_option("k", k)->required();
  verify->add_option("d", d)->required();
  verify->add_option("mu", mu)->required();
  verify->add_option("n", n)->required();
  verify->add_option("q", q)->required();
  verify->add_flag("--exhaustive", exhaustive, "every failed node, helper set and recovery set");
  verify->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*params) return cmd_params(k, d, mu, all_modes, curve);
    if (*encode) return cmd_encode(input, dir, n, k, d, mu, q, semi, fmt);
    if (*repair) return cmd_repair(dir, failed, helpers, output);
    if (*recover) return cmd_recover(dir, nodes, output);
    if (*verify) return run_verification({k, d, mu, n, q, exhaustive, seed}, std::cout) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
