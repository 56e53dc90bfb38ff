#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cascade/codec.hpp"
#include "cascade/params.hpp"
#include "cascade/storage.hpp"

namespace py = pybind11;
using namespace cascade;

namespace {

py::int_ to_py(const BigInt& v) { return py::int_(py::str(v.str())); }

std::vector<std::vector<Elem>> rows(const Matrix& m) {
  std::vector<std::vector<Elem>> out;
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(m.row(r));
  return out;
}

Matrix from_rows(const std::vector<std::vector<Elem>>& rs) {
  Matrix m(rs.size(), rs.empty() ? 0 : rs[0].size());
  for (std::size_t r = 0; r < rs.size(); ++r) {
    if (rs[r].size() != m.cols()) throw std::invalid_argument("ragged share list");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rs[r][c];
  }
  return m;
}

}  // namespace

PYBIND11_MODULE(_cascade_codes, m) {
  m.doc() = "Exact-repair regenerating codes built from cascaded determinant segments";

  py::register_exception<SingularMatrix>(m, "SingularMatrix", PyExc_ArithmeticError);

  m.def(
      "params",
      [](int k, int d, int mu) {
        auto p = code_params(k, d, mu);
        py::dict out;
        out["alpha"] = to_py(p.alpha);
        out["beta"] = to_py(p.beta);
        out["file_size"] = to_py(p.F);
        return out;
      },
      py::arg("k"), py::arg("d"), py::arg("mu"), "Per-node storage, per-helper bandwidth and file size.");

  m.def(
      "t_sequence",
      [](int k, int d, int mu) {
        py::list out;
        for (const auto& t : t_sequence(k, d, mu)) out.append(to_py(t));
        return out;
      },
      py::arg("k"), py::arg("d"), py::arg("mu"), "Number of segments of each mode 0..mu.");

  m.def(
      "verify",
      [](int k, int d, int mu, int n, std::uint32_t q, bool exhaustive, std::uint64_t seed) {
        std::ostringstream out;
        bool ok = run_verification({k, d, mu, n, q, exhaustive, seed}, out);
        return py::make_tuple(ok, out.str());
      },
      py::arg("k"), py::arg("d"), py::arg("mu"), py::arg("n"), py::arg("q"), py::arg("exhaustive") = false,
      py::arg("seed") = 1, "Self-check a parameter set; returns (ok, report).");

  py::class_<CascadeCode>(m, "Code")
      .def(py::init([](int n, int k, int d, int mu, std::uint32_t q, bool semi) {
             return CascadeCode(q ? Field::of_order(q) : Field::default_for(n), n, k, d, mu, semi);
           }),
           py::arg("n"), py::arg("k"), py::arg("d"), py::arg("mu"), py::arg("q") = 0,
           py::arg("semi_systematic") = false)
      .def_property_readonly("n", &CascadeCode::n)
      .def_property_readonly("k", &CascadeCode::k)
      .def_property_readonly("d", &CascadeCode::d)
      .def_property_readonly("mu", &CascadeCode::mu)
      .def_property_readonly("q", [](const CascadeCode& c) { return c.field().order(); })
      .def_property_readonly("alpha", &CascadeCode::alpha)
      .def_property_readonly("beta", &CascadeCode::beta)
      .def_property_readonly("file_size", &CascadeCode::file_size)
      .def(
          "encode", [](const CascadeCode& c, const std::vector<Elem>& file) { return rows(c.encode(file)); },
          py::arg("file"), "Encode file_size symbols into n shares of alpha symbols.")
      .def(
          "helper_message",
          [](const CascadeCode& c, int helper, const std::vector<Elem>& share, int failed) {
            auto b = c.helper_message(helper, share, failed).serialize();
            return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
          },
          py::arg("helper"), py::arg("share"), py::arg("failed"), "Serialized repair message of beta symbols.")
      .def(
          "regenerate",
          [](const CascadeCode& c, int failed, const std::vector<py::bytes>& msgs) {
            std::vector<RepairMessage> parsed;
            for (const auto& b : msgs) {
              std::string s = b;
              parsed.push_back(RepairMessage::deserialize(std::vector<std::uint8_t>(s.begin(), s.end()), c.d()));
            }
            return c.regenerate(failed, parsed);
          },
          py::arg("failed"), py::arg("messages"), "Rebuild the failed node's share from d helper messages.")
      .def(
          "repair",
          [](const CascadeCode& c, int failed, const std::map<int, std::vector<Elem>>& helpers) {
            std::vector<RepairMessage> msgs;
            for (const auto& [h, share] : helpers) msgs.push_back(c.helper_message(h, share, failed));
            return c.regenerate(failed, msgs);
          },
          py::arg("failed"), py::arg("helpers"), "Regenerate from a {helper: share} mapping of d entries.")
      .def(
          "recover",
          [](const CascadeCode& c, const std::map<int, std::vector<Elem>>& shares) {
            std::vector<int> nodes;
            std::vector<std::vector<Elem>> rs;
            for (const auto& [v, share] : shares) {
              nodes.push_back(v);
              rs.push_back(share);
            }
            return c.recover(nodes, from_rows(rs));
          },
          py::arg("shares"), "Recover the file from a {node: share} mapping of k entries.")
      .def(
          "encode_bytes",
          [](const CascadeCode& c, const py::bytes& data) {
            if (c.field().order() < 256) throw std::invalid_argument("byte symbols need q >= 256");
            std::string s = data;
            auto enc = encode_striped(c, bytes_to_symbols(std::vector<std::uint8_t>(s.begin(), s.end()),
                                                           SymbolFormat::Bytes, c.field()));
            return py::make_tuple(enc.payloads, enc.stripes);
          },
          py::arg("data"), "Stripe and encode a byte string; returns (payloads, stripes).")
      .def(
          "recover_bytes",
          [](const CascadeCode& c, const std::map<int, std::vector<Elem>>& payloads, std::size_t stripes,
             std::size_t length) {
            auto sym = recover_striped(c, payloads, stripes);
            if (length > sym.size()) throw std::invalid_argument("length exceeds recovered data");
            sym.resize(length);
            auto b = symbols_to_bytes(sym, SymbolFormat::Bytes);
            return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
          },
          py::arg("payloads"), py::arg("stripes"), py::arg("length"), "Inverse of encode_bytes.");
}
