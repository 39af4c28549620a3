// Python surface: words as text, automorphisms as a small class, reports as
// JSON strings (decoded to dicts in tlen/__init__.py).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tlen/cancellation.hpp"
#include "tlen/json_io.hpp"
#include "tlen/oracle.hpp"
#include "tlen/translen.hpp"
#include "tlen/upg.hpp"

namespace py = pybind11;
using namespace tlen;

namespace {

Automorphism make_aut(int rank, const std::vector<std::string>& images) {
  Automorphism a;
  a.rank = rank;
  for (const auto& s : images) a.images.push_back(parse_word(s, rank));
  if (static_cast<int>(a.images.size()) != rank)
    throw std::invalid_argument("expected one image per generator");
  return a;
}

std::vector<std::string> image_texts(const Automorphism& a) {
  std::vector<std::string> out;
  for (const auto& w : a.images) out.push_back(format_word(w.letters()));
  return out;
}

std::vector<std::string> path_names(const EdgePath& p, const FilteredGraphMap& m) {
  std::vector<std::string> out;
  for (const auto& e : path_to_json(p, m)) out.push_back(e.get<std::string>());
  return out;
}

EdgePath names_path(const std::vector<std::string>& names, const FilteredGraphMap& m) {
  ordered_json j = ordered_json::array();
  for (const auto& s : names) j.push_back(s);
  return path_from_json(j, m);
}

}  // namespace

PYBIND11_MODULE(_tlen, m) {
  m.doc() = "free-group translation length toolkit";

  m.def(
      "reduce_word",
      [](const std::string& w, int rank) { return format_word(parse_word(w, rank).letters()); },
      py::arg("word"), py::arg("rank") = 0);
  m.def(
      "alpha", [](const std::string& w, int rank) { return alpha(parse_word(w, rank)); },
      py::arg("word"), py::arg("rank") = 0, "largest p with some u^p a contiguous subword");
  m.def(
      "alpha_tilde",
      [](const std::string& w, int rank) {
        return alpha_tilde(cyclic_reduce(parse_word(w, rank)).first);
      },
      py::arg("word"), py::arg("rank") = 0, "alpha maximized over the necklace");

  py::class_<Automorphism>(m, "Aut")
      .def(py::init(&make_aut), py::arg("rank"), py::arg("images"))
      .def_readonly("rank", &Automorphism::rank)
      .def_property_readonly("images", &image_texts)
      .def("apply",
           [](const Automorphism& a, const std::string& w) {
             return format_word(apply(a, parse_word(w, a.rank)).letters());
           })
      .def("compose",
           [](const Automorphism& a, const Automorphism& b) { return compose(a, b); })
      .def("canonical",
           [](const Automorphism& a) { return outer_canonical(a).representative(); })
      .def("decompose",
           [](const Automorphism& a) {
             py::list out;
             for (const GenLabel& g : nielsen_decompose(a)) out.append(g.text());
             return out;
           })
      .def("__eq__", [](const Automorphism& a, const Automorphism& b) { return a == b; })
      .def("__repr__", [](const Automorphism& a) {
        std::string r = "Aut(" + std::to_string(a.rank) + ", [";
        for (size_t i = 0; i < a.images.size(); ++i)
          r += (i ? ", \"" : "\"") + format_word(a.images[i].letters()) + "\"";
        return r + "])";
      });

  m.def(
      "tau_certificate_json",
      [](const Automorphism& a) { return json_dump(tau_certificate(a, tlen::tau_estimate(a))); },
      "self-contained translation length certificate");
  m.def("growth_json",
        [](const Automorphism& a) { return json_dump(growth_to_json(tlen::growth_classify(a))); });
  m.def(
      "cancellation_json",
      [](int rank, int depth) { return json_dump(cancellation_to_json(lemma1_constants(rank, depth))); },
      py::arg("rank"), py::arg("depth") = 8);
  m.def("recheck_certificate_json", [](const std::string& text) {
    CertificateCheck chk = recheck_tau_certificate(ordered_json::parse(text));
    return py::make_tuple(chk.ok, chk.inconclusive, chk.problems);
  });

  py::class_<BallIndex>(m, "Ball")
      .def(py::init([](int rank, int radius, size_t node_budget, int threads) {
             return build_ball(rank, radius, node_budget, threads);
           }),
           py::arg("rank"), py::arg("radius"), py::arg("node_budget") = 10000000,
           py::arg("threads") = 1)
      .def_readonly("rank", &BallIndex::rank)
      .def_readonly("radius", &BallIndex::radius)
      .def_readonly("truncated", &BallIndex::truncated)
      .def_readonly("layer_sizes", &BallIndex::layer_sizes)
      .def("__len__", &BallIndex::size)
      .def("norm",
           [](const BallIndex& b, const Automorphism& a) -> py::object {
             auto n = exact_norm(b, a);
             if (!n) return py::none();
             return py::int_(*n);
           })
      .def("verify_tau_bounds_json", [](const BallIndex& b, const Automorphism& a) {
        return json_dump(tau_bounds_to_json(verify_tau_bounds(b, a, tlen::tau_estimate(a))));
      });

  py::class_<FilteredGraphMap>(m, "GraphMap")
      .def(py::init([](const std::string& json_text) {
        return graph_from_json(ordered_json::parse(json_text));
      }))
      .def_static("load", &load_graph)
      .def_property_readonly("edges",
                             [](const FilteredGraphMap& g) {
                               std::vector<std::string> out;
                               for (const auto& e : g.edges) out.push_back(e.name);
                               return out;
                             })
      .def("validate_json",
           [](const FilteredGraphMap& g) {
             return json_dump(validation_to_json(validate_upg_rep(g)));
           })
      .def(
          "witness_json",
          [](const FilteredGraphMap& g, int K) {
            return json_dump(witness_to_json(find_witness(g, K), g));
          },
          py::arg("K") = 50)
      .def(
          "iterate",
          [](const FilteredGraphMap& g, const std::vector<std::string>& path, int k) {
            return path_names(iterate_path(g, names_path(path, g), k), g);
          },
          py::arg("path"), py::arg("k") = 1);
}
