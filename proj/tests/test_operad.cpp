#include <doctest.h>

#include "aromatica/operad.hpp"

using namespace aromatica;

namespace {

// Builds a combination from text terms, all with coefficient +1 unless given.
OperationComb ops(LabelNames& names, std::initializer_list<std::pair<const char*, int>> terms) {
  OperationComb out;
  for (auto& [text, c] : terms) out.add(parse_operation(text, &names), c);
  return out;
}

AromaComb aromas(std::initializer_list<std::pair<const char*, int>> terms) {
  AromaComb out;
  for (auto& [text, c] : terms) out.add(parse_aroma(text), c);
  return out;
}

TreeComb trees(std::initializer_list<std::pair<const char*, int>> terms) {
  TreeComb out;
  for (auto& [text, c] : terms) out.add(parse_tree(text), c);
  return out;
}

}  // namespace

TEST_CASE("tree insertion: star with two leaves into a two-vertex tree") {
  LabelNames names;
  Operation outer = parse_operation("x(1,3)", &names);
  Label star = names.intern("x");
  Operation inner = parse_operation("c(a)", &names);
  auto expected = ops(names, {{"c(1,a,3)", 1}, {"c(a(1,3))", 1}, {"c(1,a(3))", 1}, {"c(a(1),3)", 1}});
  CHECK(compose_at(outer, star, inner) == expected);
}

TEST_CASE("marked-tree insertion") {
  LabelNames names;
  Operation outer = parse_operation("*x(1)", &names);
  Label star = names.intern("x");
  Operation inner = parse_operation("*c(a)", &names);
  CHECK(compose_at(outer, star, inner) == ops(names, {{"*c(1,a)", 1}, {"*c(a(1))", 1}}));
}

TEST_CASE("marked tree into a two-cycle") {
  LabelNames names;
  Operation outer = parse_operation("*x(1)", &names);
  Label star = names.intern("x");
  Operation inner = parse_operation("cycle[a;c]", &names);
  CHECK(compose_at(outer, star, inner) == ops(names, {{"cycle[a(1);c]", 1}, {"cycle[a;c(1)]", 1}}));
}

TEST_CASE("tadpole applied to a two-vertex tree") {
  LabelNames names;
  Operation outer = parse_operation("cycle[x]", &names);
  Label star = names.intern("x");
  Operation inner = parse_operation("c(a)", &names);
  CHECK(compose_at(outer, star, inner) == ops(names, {{"cycle[c(a)]", 1}, {"cycle[a;c]", 1}}));
}

TEST_CASE("composition rejects colour and label errors") {
  Operation tree = parse_operation("1(2)");
  Operation marked = parse_operation("*3(4)");
  Operation cyc = parse_operation("cycle[3]");
  CHECK_THROWS_AS(compose_at(tree, 2, cyc), ColourError);
  CHECK_THROWS_AS(compose_at(tree, 2, marked), ColourError);
  CHECK_THROWS_AS(compose_at(tree, 5, parse_operation("3")), DomainError);
  CHECK_THROWS_AS(compose_at(tree, 2, parse_operation("1")), DomainError);
}

TEST_CASE("pre-Lie product grafts onto every vertex") {
  CHECK(prelie(parse_tree("1"), parse_tree("2")) == trees({{"1(2)", 1}}));
  CHECK(prelie(parse_tree("1(2)"), parse_tree("3")) == trees({{"1(2,3)", 1}, {"1(2(3))", 1}}));
  CHECK(lie_bracket(parse_tree("1"), parse_tree("2")) == trees({{"1(2)", 1}, {"2(1)", -1}}));
}

TEST_CASE("divergence closes the root onto each vertex") {
  CHECK(div(parse_tree("1")) == aromas({{"cycle[1]", 1}}));
  CHECK(div(parse_tree("1(2)")) == aromas({{"cycle[1(2)]", 1}, {"cycle[1;2]", 1}}));
  CHECK(tau(parse_tree("1(2)")) == parse_aroma("cycle[1(2)]"));
  CHECK(div0(parse_tree("1(2)")) == aromas({{"cycle[1;2]", 1}}));
  CHECK(div0(parse_tree("2(1,3)")) == aromas({{"cycle[1;2(3)]", 1}, {"cycle[2(1);3]", 1}}));
}

TEST_CASE("module action grafts a tree onto the aroma") {
  CHECK(module_action(parse_aroma("cycle[1]"), parse_tree("2")) == aromas({{"cycle[1(2)]", 1}}));
  CHECK(module_action(parse_aroma("cycle[1;2]"), parse_tree("3")) == aromas({{"cycle[1(3);2]", 1}, {"cycle[1;2(3)]", 1}}));
}

TEST_CASE("cyclic brace of generators") {
  std::vector<RootedTree> g{parse_tree("1"), parse_tree("2")};
  CHECK(cyclic_brace(g) == aromas({{"cycle[1;2]", 1}}));
  std::vector<RootedTree> one{parse_tree("1(2)")};
  CHECK(cyclic_brace(one) == div0(parse_tree("1(2)")) + AromaComb(tau(parse_tree("1(2)"))));
}

TEST_CASE("Lie basis and membership") {
  CHECK(lie_basis(1).size() == 1);
  CHECK(lie_basis(3).size() == 2);
  CHECK(lie_basis(4).size() == 6);
  for (auto& x : lie_basis(4)) {
    CHECK(is_lie_element(x, LieCriterion::Div0));
    CHECK(is_lie_element(x, LieCriterion::SymDiv0));
  }
  // the pre-Lie product itself is not a Lie element
  CHECK_FALSE(is_lie_element(trees({{"1(2)", 1}}), LieCriterion::Div0));
  CHECK_FALSE(is_lie_element(trees({{"1(2)", 1}}), LieCriterion::SymDiv0));
  // not multilinear: labels differ between terms
  CHECK_THROWS_AS(is_lie_element(trees({{"1(2)", 1}, {"1(3)", 1}}), LieCriterion::Div0), UnsupportedInputError);
}

TEST_CASE("divergence ranks") {
  for (int n = 1; n <= 5; ++n) {
    long expected = 1;
    for (int i = 0; i < n - 1; ++i) expected *= n;
    CHECK(static_cast<long>(rank(divergence_matrix(n, false))) == expected);
  }
  // ker Div0 on the unlabelled side is trivial beyond one vertex
  for (int n = 2; n <= 6; ++n) {
    SparseMatrix m = unlabelled_div0_matrix(n);
    CHECK(rank(m) == m.cols());
  }
}

TEST_CASE("generated suboperad") {
  const std::vector<std::size_t> dims{1, 3, 16, 125};
  for (int n = 1; n <= 4; ++n) {
    CHECK(suboperad_span_dimension(n) == dims[static_cast<std::size_t>(n - 1)]);
    CHECK(cyclic_brace_span_dimension(n) == dims[static_cast<std::size_t>(n - 1)]);
  }
  CHECK(in_suboperad_span(aromas({{"cycle[1;2]", 1}}), 2));
  CHECK(in_suboperad_span(aromas({{"cycle[1;2;3]", 1}, {"cycle[1;3;2]", 1}}), 3));
  CHECK_FALSE(in_suboperad_span(aromas({{"cycle[1;2;3]", 1}, {"cycle[1;3;2]", -1}}), 3));
}

TEST_CASE("sym forgets cycle order") {
  auto f = sym(parse_aroma("cycle[1;2(4);3]"));
  CHECK(f.trees.size() == 3);
  CHECK(f.aromas.empty());
  CHECK(to_text(sym(parse_aroma("cycle[1;2;3]"))) == to_text(sym(parse_aroma("cycle[1;3;2]"))));
}
