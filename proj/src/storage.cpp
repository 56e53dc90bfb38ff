#include "cascade/storage.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cascade/params.hpp"

namespace cascade {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
}

std::uint32_t get_u16(const std::vector<std::uint8_t>& b, std::size_t pos) {
  return (std::uint32_t{b[pos]} << 8) | b[pos + 1];
}

std::vector<std::uint8_t> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::vector<Elem> stripe_of(const std::vector<Elem>& payload, std::size_t s, std::size_t len) {
  if ((s + 1) * len > payload.size()) throw std::invalid_argument("payload shorter than stripe count implies");
  return {payload.begin() + s * len, payload.begin() + (s + 1) * len};
}

}  // namespace

std::vector<std::uint8_t> ShareFile::to_bytes() const {
  if (q > 0xFFFF) throw std::invalid_argument("share files store q in 16 bits");
  std::vector<std::uint8_t> out(kMagic, kMagic + 4);
  out.push_back(kVersion);
  for (int v : {n, k, d, mu}) out.push_back(static_cast<std::uint8_t>(v));
  put_u16(out, q);
  out.push_back(static_cast<std::uint8_t>(node));
  for (Elem e : payload) {
    if (e >= q) throw std::invalid_argument("payload element outside the field");
    put_u16(out, e);
  }
  return out;
}

ShareFile ShareFile::from_bytes(const std::vector<std::uint8_t>& b) {
  constexpr std::size_t kHeader = 12;
  if (b.size() < kHeader || !std::equal(kMagic, kMagic + 4, b.begin()))
    throw std::invalid_argument("not a share file");
  if (b[4] != kVersion) throw std::invalid_argument("unsupported share file version");
  if ((b.size() - kHeader) % 2) throw std::invalid_argument("share payload has odd length");
  ShareFile s;
  s.n = b[5];
  s.k = b[6];
  s.d = b[7];
  s.mu = b[8];
  s.q = get_u16(b, 9);
  s.node = b[11];
  for (std::size_t pos = kHeader; pos < b.size(); pos += 2) {
    Elem e = get_u16(b, pos);
    if (e >= s.q) throw std::invalid_argument("share payload element outside the field");
    s.payload.push_back(e);
  }
  return s;
}

void write_share_file(const std::filesystem::path& path, const ShareFile& share) { spit(path, share.to_bytes()); }

ShareFile read_share_file(const std::filesystem::path& path) { return ShareFile::from_bytes(slurp(path)); }

std::filesystem::path share_path(const std::filesystem::path& dir, int node) {
  return dir / ("node" + std::to_string(node) + ".cscd");
}

std::string Manifest::to_text() const {
  std::ostringstream o;
  o << "format: cascade-manifest 1\n"
    << "n: " << n << "\n"
    << "k: " << k << "\n"
    << "d: " << d << "\n"
    << "mu: " << mu << "\n"
    << "q: " << q << "\n"
    << "encoder: " << (semi_systematic ? "vandermonde-semi-systematic" : "vandermonde") << "\n"
    << "points:";
  for (int i = 0; i < n; ++i) o << " " << i;
  o << "\n"
    << "symbols: " << (format == SymbolFormat::Bytes ? "bytes" : "u16") << "\n"
    << "input_symbols: " << input_symbols << "\n"
    << "stripe_symbols: " << stripe_symbols << "\n"
    << "stripes: " << stripes << "\n"
    << "pad: " << pad << "\n"
    << "alpha: " << alpha << "\n"
    << "beta: " << beta << "\n";
  return o.str();
}

Manifest Manifest::parse(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("malformed manifest line: " + line);
    std::string v = line.substr(colon + 1);
    v.erase(0, v.find_first_not_of(' '));
    kv[line.substr(0, colon)] = v;
  }
  auto get = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument("manifest missing key: " + key);
    return it->second;
  };
  auto num = [&](const std::string& key) { return static_cast<std::size_t>(std::stoull(get(key))); };
  if (get("format") != "cascade-manifest 1") throw std::invalid_argument("unsupported manifest format");
  Manifest m;
  m.n = static_cast<int>(num("n"));
  m.k = static_cast<int>(num("k"));
  m.d = static_cast<int>(num("d"));
  m.mu = static_cast<int>(num("mu"));
  m.q = static_cast<std::uint32_t>(num("q"));
  const std::string& enc = get("encoder");
  if (enc != "vandermonde" && enc != "vandermonde-semi-systematic")
    throw std::invalid_argument("unknown encoder: " + enc);
  m.semi_systematic = enc == "vandermonde-semi-systematic";
  const std::string& fmt = get("symbols");
  if (fmt != "bytes" && fmt != "u16") throw std::invalid_argument("unknown symbol format: " + fmt);
  m.format = fmt == "bytes" ? SymbolFormat::Bytes : SymbolFormat::U16;
  m.input_symbols = num("input_symbols");
  m.stripe_symbols = num("stripe_symbols");
  m.stripes = num("stripes");
  m.pad = num("pad");
  m.alpha = num("alpha");
  m.beta = num("beta");
  return m;
}

void write_manifest(const std::filesystem::path& path, const Manifest& m) {
  auto t = m.to_text();
  spit(path, {t.begin(), t.end()});
}

Manifest read_manifest(const std::filesystem::path& path) {
  auto b = slurp(path);
  return Manifest::parse({b.begin(), b.end()});
}

Field field_for(std::uint32_t q) { return Field::of_order(q); }

CascadeCode code_for(const Manifest& m) {
  return CascadeCode(field_for(m.q), m.n, m.k, m.d, m.mu, m.semi_systematic);
}

std::vector<Elem> bytes_to_symbols(const std::vector<std::uint8_t>& bytes, SymbolFormat fmt, const Field& F) {
  std::vector<Elem> out;
  if (fmt == SymbolFormat::Bytes) {
    for (std::size_t i = 0; i < bytes.size(); ++i) {
      if (!F.contains(bytes[i]))
        throw std::invalid_argument("byte " + std::to_string(bytes[i]) + " at offset " + std::to_string(i) +
                                    " does not fit " + F.describe() + "; use q >= 256 for arbitrary bytes");
      out.push_back(bytes[i]);
    }
    return out;
  }
  if (bytes.size() % 2) throw std::invalid_argument("u16 symbol input must have even length");
  for (std::size_t i = 0; i < bytes.size(); i += 2) {
    Elem e = get_u16(bytes, i);
    if (!F.contains(e)) throw std::invalid_argument("symbol at offset " + std::to_string(i) + " exceeds the field");
    out.push_back(e);
  }
  return out;
}

std::vector<std::uint8_t> symbols_to_bytes(const std::vector<Elem>& symbols, SymbolFormat fmt) {
  std::vector<std::uint8_t> out;
  for (Elem e : symbols) {
    if (fmt == SymbolFormat::Bytes) {
      if (e > 0xFF) throw std::invalid_argument("symbol does not fit a byte");
      out.push_back(static_cast<std::uint8_t>(e));
    } else {
      put_u16(out, e);
    }
  }
  return out;
}

StripedEncoding encode_striped(const CascadeCode& code, const std::vector<Elem>& symbols) {
  const std::size_t F = code.file_size();
  StripedEncoding enc;
  enc.stripes = (symbols.size() + F - 1) / F;
  enc.pad = enc.stripes * F - symbols.size();
  enc.payloads.assign(code.n(), {});
  for (std::size_t s = 0; s < enc.stripes; ++s) {
    std::vector<Elem> stripe(F, 0);
    std::size_t begin = s * F, end = std::min(symbols.size(), begin + F);
    std::copy(symbols.begin() + begin, symbols.begin() + end, stripe.begin());
    Matrix shares = code.encode(stripe);
    for (int i = 0; i < code.n(); ++i) {
      auto row = shares.row(i);
      enc.payloads[i].insert(enc.payloads[i].end(), row.begin(), row.end());
    }
  }
  return enc;
}

RepairOutcome repair_striped(const CascadeCode& code, int failed,
                             const std::map<int, std::vector<Elem>>& helper_payloads, std::size_t stripes) {
  if (static_cast<int>(helper_payloads.size()) != code.d())
    throw std::invalid_argument("repair needs exactly d = " + std::to_string(code.d()) + " helpers");
  RepairOutcome out;
  for (std::size_t s = 0; s < stripes; ++s) {
    std::vector<RepairMessage> msgs;
    for (const auto& [h, payload] : helper_payloads) {
      msgs.push_back(code.helper_message(h, stripe_of(payload, s, code.alpha()), failed));
      out.symbols_transferred += msgs.back().symbol_count();
    }
    auto row = code.regenerate(failed, msgs);
    out.payload.insert(out.payload.end(), row.begin(), row.end());
  }
  return out;
}

std::vector<Elem> recover_striped(const CascadeCode& code, const std::map<int, std::vector<Elem>>& payloads,
                                  std::size_t stripes) {
  if (static_cast<int>(payloads.size()) < code.k())
    throw std::invalid_argument("recovery needs at least k = " + std::to_string(code.k()) + " shares");
  std::vector<int> nodes;
  for (const auto& kv : payloads) {
    if (static_cast<int>(nodes.size()) == code.k()) break;
    nodes.push_back(kv.first);
  }
  std::vector<Elem> out;
  for (std::size_t s = 0; s < stripes; ++s) {
    Matrix shares(nodes.size(), code.alpha());
    for (std::size_t r = 0; r < nodes.size(); ++r) {
      auto st = stripe_of(payloads.at(nodes[r]), s, code.alpha());
      for (std::size_t c = 0; c < st.size(); ++c) shares(r, c) = st[c];
    }
    auto f = code.recover(nodes, shares);
    out.insert(out.end(), f.begin(), f.end());
  }
  return out;
}

Cluster::Cluster(CascadeCode code, const std::vector<Elem>& symbols) : code_(std::move(code)), length_(symbols.size()) {
  auto enc = encode_striped(code_, symbols);
  stripes_ = enc.stripes;
  for (auto& p : enc.payloads) payloads_.emplace_back(std::move(p));
}

std::vector<int> Cluster::live_nodes() const {
  std::vector<int> out;
  for (int i = 1; i <= code_.n(); ++i)
    if (alive(i)) out.push_back(i);
  return out;
}

const std::vector<Elem>& Cluster::payload(int node) const {
  const auto& p = payloads_.at(node - 1);
  if (!p) throw std::runtime_error("node " + std::to_string(node) + " is failed");
  return *p;
}

void Cluster::fail(int node) { payloads_.at(node - 1).reset(); }

std::size_t Cluster::repair(int failed, const std::vector<int>& helpers) {
  if (alive(failed)) throw std::invalid_argument("node " + std::to_string(failed) + " has not failed");
  std::map<int, std::vector<Elem>> hp;
  for (int h : helpers) {
    if (h == failed) throw std::invalid_argument("helper equals failed node");
    if (!hp.emplace(h, payload(h)).second) throw std::invalid_argument("duplicate helper");
  }
  auto r = repair_striped(code_, failed, hp, stripes_);
  payloads_[failed - 1] = std::move(r.payload);
  ledger_.push_back(r.symbols_transferred);
  return r.symbols_transferred;
}

std::vector<Elem> Cluster::recover(const std::vector<int>& nodes) const {
  std::map<int, std::vector<Elem>> p;
  for (int v : nodes) p.emplace(v, payload(v));
  auto out = recover_striped(code_, p, stripes_);
  out.resize(length_);
  return out;
}

namespace {

struct Reporter {
  std::ostream& out;
  bool all = true;
  void line(const std::string& name, bool ok, const std::string& detail) {
    out << (ok ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
    all = all && ok;
  }
};

}  // namespace

bool run_verification(const VerifyOptions& o, std::ostream& out) {
  Reporter rep{out};
  try {
    check_range(o.k, o.d, o.mu);
  } catch (const std::exception& e) {
    rep.line("parameters", false, e.what());
    return false;
  }
  if (o.n < o.d) {
    rep.line("parameters", false, "need n >= d");
    return false;
  }
  Field F = Field::prime(7);
  try {
    F = field_for(o.q);
  } catch (const std::exception& e) {
    rep.line("field", false, e.what());
    return false;
  }
  if (F.order() < static_cast<std::uint32_t>(o.n)) {
    rep.line("field", false,
             "q = " + std::to_string(o.q) + " is smaller than n = " + std::to_string(o.n) +
                 "; the Vandermonde encoder needs n distinct points");
    return false;
  }
  rep.line("field", true, F.describe());

  auto cp = code_params(o.k, o.d, o.mu);
  rep.line("params", cp == params_implicit(o.k, o.d, o.mu),
           "alpha=" + cp.alpha.str() + " beta=" + cp.beta.str() + " F=" + cp.F.str());
  auto t = t_sequence(o.k, o.d, o.mu);
  bool pform = true;
  for (int m = 0; m <= o.mu; ++m) pform = pform && p_closed_form(o.d - o.k, o.mu - m) == t[m];
  rep.line("t-sequence", pform, "closed form agrees with the recursion");

  CascadeCode code(F, o.n, o.k, o.d, o.mu);
  std::vector<std::size_t> counts(o.mu + 1, 0);
  for (const auto& s : code.tree().segments) ++counts[s.mode];
  bool census = true;
  for (int m = 0; m <= o.mu; ++m) census = census && BigInt(counts[m]) == t[m];
  rep.line("tree", census && BigInt(code.alpha()) == cp.alpha && BigInt(code.file_size()) == cp.F,
           std::to_string(code.tree().size()) + " segments, " + std::to_string(code.alpha()) + " columns");

  std::mt19937_64 rng(o.seed);
  std::vector<Elem> file(code.file_size());
  for (auto& e : file) e = static_cast<Elem>(rng() % F.order());
  SuperMessage sm = code.super_message(file);
  auto audit = audit_super_message(F, sm);
  rep.line("structure", audit.ok(),
           "parity, admissibility, primary injections, zero mode-0 bottoms (" +
               std::to_string(audit.injections_checked) + " injected entries)");

  bool ranks = true;
  for (int f = 1; f <= o.n; ++f)
    for (const auto& s : code.tree().segments)
      if (s.mode >= 1)
        ranks = ranks && code.repair_basis(f, s.id).pivots.size() == binomial(o.d - 1, s.mode - 1);
  rep.line("repair-rank", ranks, "rank of every repair encoder is C(d-1,m-1)");

  Matrix shares = code.encode(sm);
  std::size_t cases = 0, good = 0;
  bool bw = true;
  auto try_repair = [&](int f, Subset H) {
    std::vector<RepairMessage> msgs;
    for (int h : H.elements()) {
      msgs.push_back(code.helper_message(h, shares.row(h - 1), f));
      bw = bw && msgs.back().symbol_count() == code.beta() && BigInt(code.beta()) == cp.beta;
    }
    ++cases;
    good += code.regenerate(f, msgs) == shares.row(f - 1);
  };
  if (o.exhaustive) {
    for (int f = 1; f <= o.n; ++f)
      for (Subset H : subset_index(o.n).of_size(o.d))
        if (!H.contains(f)) try_repair(f, H);
  } else {
    int f = static_cast<int>(rng() % o.n) + 1;
    std::vector<int> others;
    for (int i = 1; i <= o.n; ++i)
      if (i != f) others.push_back(i);
    std::shuffle(others.begin(), others.end(), rng);
    try_repair(f, Subset::from_elements({others.begin(), others.begin() + o.d}));
  }
  rep.line("repair", good == cases, std::to_string(good) + "/" + std::to_string(cases) + " exact regenerations");
  rep.line("bandwidth", bw, "beta = " + std::to_string(code.beta()) + " symbols per helper");

  cases = good = 0;
  auto try_recover = [&](Subset K) {
    std::vector<int> nodes = K.elements();
    std::vector<std::size_t> rows;
    for (int v : nodes) rows.push_back(static_cast<std::size_t>(v - 1));
    ++cases;
    good += code.recover(nodes, shares.select_rows(rows)) == file;
  };
  if (o.exhaustive) {
    for (Subset K : subset_index(o.n).of_size(o.k)) try_recover(K);
  } else {
    std::vector<int> all;
    for (int i = 1; i <= o.n; ++i) all.push_back(i);
    std::shuffle(all.begin(), all.end(), rng);
    try_recover(Subset::from_elements({all.begin(), all.begin() + o.k}));
  }
  rep.line("recover", good == cases, std::to_string(good) + "/" + std::to_string(cases) + " exact recoveries");
  return rep.all;
}

}  // namespace cascade
