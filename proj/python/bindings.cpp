// Python bindings. Structures cross the boundary in their text format and
// coefficients as "p/q" strings; the package wrapper turns those into Fractions.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aromatica/bseries.hpp"
#include "aromatica/complexes.hpp"
#include "aromatica/operad.hpp"
#include "aromatica/report.hpp"

namespace py = pybind11;
using namespace aromatica;

namespace {

using Terms = std::vector<std::pair<std::string, std::string>>;

template <class Key, class Fmt>
Terms terms(const LinComb<Key>& x, Fmt&& fmt) {
  Terms out;
  for (const auto& [k, c] : x) out.emplace_back(fmt(k), c.get_str());
  return out;
}

template <class Key>
Terms terms(const LinComb<Key>& x) {
  return terms(x, [](const Key& k) { return to_text(k); });
}

std::map<int, std::size_t> homology(const std::string& complex, int arity) {
  if (complex == "ce-L") return homology_dimensions(build_ce_complex(CEVariant::L, arity).complex);
  if (complex == "ce-Ltilde") return homology_dimensions(build_ce_complex(CEVariant::LTilde, arity).complex);
  if (complex == "graphs") return homology_dimensions(build_graph_complex(GraphVariant::All, arity).complex);
  if (complex == "graphs-cr")
    return homology_dimensions(build_graph_complex(GraphVariant::ConnectedReduced, arity).complex);
  throw UsageError("unknown complex " + complex);
}

std::map<int, std::map<int, std::size_t>> bicomplex_rows(const std::string& variant, int arity) {
  BicomplexVariant v;
  if (variant == "full") v = BicomplexVariant::Full;
  else if (variant == "divergence-free") v = BicomplexVariant::DivergenceFree;
  else throw UsageError("unknown bicomplex variant " + variant);
  Bicomplex b = build_aromatic_bicomplex(v, arity);
  std::map<int, std::map<int, std::size_t>> out;
  for (int q = 0; q <= arity; ++q) out[q] = homology_dimensions(b.horizontal(q));
  return out;
}

std::string verify(const std::string& suite, std::optional<int> max_n, std::optional<std::uint32_t> seed,
                   bool parallel) {
  Config c;
  c.max_n = max_n;
  if (seed) c.seed = *seed;
  c.parallel = parallel;
  VerificationReport r;
  {
    py::gil_scoped_release release;
    r = run_suite(suite, c);
  }
  return r.to_json();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact computations with rooted trees, aromas and aromatic forests";

  py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ColourError>(m, "ColourError", PyExc_ValueError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<UnsupportedInputError>(m, "UnsupportedInputError", PyExc_ValueError);
  py::register_exception<IncompleteCoefficientsError>(m, "IncompleteCoefficientsError", PyExc_ValueError);

  m.def("enumerate", &BasisCache::build, py::arg("kind"), py::arg("n"), py::arg("variant") = "all",
        "Basis of the given kind on n vertices, in text or code form.");

  m.def(
      "compose",
      [](const std::string& outer, const std::string& star, const std::string& inner) {
        LabelNames names;
        const bool numeric = !star.empty() && std::all_of(star.begin(), star.end(), ::isdigit);
        Label s = numeric ? std::stoi(star) : names.intern(star);
        Operation o = parse_operation(outer, &names), i = parse_operation(inner, &names);
        return terms(compose_at(o, s, i), [&](const Operation& x) { return to_text(x, &names); });
      },
      py::arg("outer"), py::arg("star"), py::arg("inner"));
  m.def("prelie", [](const std::string& a, const std::string& b) { return terms(prelie(parse_tree(a), parse_tree(b))); });
  m.def("bracket",
        [](const std::string& a, const std::string& b) { return terms(lie_bracket(parse_tree(a), parse_tree(b))); });
  m.def("action", [](const std::string& a, const std::string& t) {
    return terms(module_action(parse_aroma(a), parse_tree(t)));
  });
  m.def("div", [](const std::string& t) { return terms(div(parse_tree(t))); });
  m.def("div0", [](const std::string& t) { return terms(div0(parse_tree(t))); });
  m.def("cyclic_brace", [](const std::vector<std::string>& ts) {
    std::vector<RootedTree> trees;
    for (auto& t : ts) trees.push_back(parse_tree(t));
    return terms(cyclic_brace(trees));
  });
  m.def("tree_code", [](const std::string& t) { return tree_code(parse_tree(t)); });
  m.def("aroma_code", [](const std::string& a) { return aroma_code(parse_aroma(a)); });
  m.def("symmetry_order", [](const std::string& code) { return symmetry_order(UnlabelledKey{code}).get_str(); });

  m.def("suboperad_span_dimension", [](int n) {
    py::gil_scoped_release release;
    return suboperad_span_dimension(n);
  });
  m.def("homology", &homology, py::arg("complex"), py::arg("arity"),
        "Homology dimensions by degree: ce-L, ce-Ltilde, graphs or graphs-cr.");
  m.def("bicomplex_horizontal_homology", &bicomplex_rows, py::arg("variant"), py::arg("arity"));
  m.def("character_formula", [](const std::vector<int>& parts) { return character_formula(parts).get_str(); });
  m.def("abel_identity_holds", &abel_identity_holds);

  m.def(
      "check_divergence_identity",
      [](const std::string& code, int dim, std::uint32_t seed) {
        return check_divergence_identity(UnlabelledKey{code}, random_polynomial_field(dim, 3, seed));
      },
      py::arg("tree_code"), py::arg("dim") = 3, py::arg("seed") = 20240607u);
  m.def("volume_obstruction", [](const std::string& coefficients_json) {
    std::map<int, Terms> out;
    for (auto& [order, x] : volume_obstruction(parse_coefficients_json(coefficients_json)))
      out[order] = terms(x, [](const UnlabelledKey& k) { return k.code; });
    return out;
  });

  m.def("verify", &verify, py::arg("suite"), py::arg("max_n") = py::none(), py::arg("seed") = py::none(),
        py::arg("parallel") = false, "Runs a verification suite and returns its JSON report.");
}
