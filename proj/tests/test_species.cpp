#include <doctest.h>

#include <map>
#include <set>

#include "aromatica/species.hpp"

using namespace aromatica;

namespace {

long power(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_CASE("tree construction validates the parent map") {
  CHECK_NOTHROW(RootedTree({1, 2, 3}, {kNoLabel, 1, 1}));
  CHECK_THROWS_AS(RootedTree({1, 2}, {kNoLabel, kNoLabel}), StructuralError);
  CHECK_THROWS_AS(RootedTree({1, 2}, {2, 1}), StructuralError);
  CHECK_THROWS_AS(RootedTree({1, 2}, {kNoLabel, 7}), StructuralError);
  CHECK_THROWS_AS(RootedTree({}, {}), DomainError);
}

TEST_CASE("aroma construction validates connectivity") {
  CHECK_NOTHROW(Aroma({1, 2, 3}, {2, 1, 1}));
  CHECK_THROWS(Aroma({1, 2, 3, 4}, {2, 1, 4, 3}));  // two cycles
  Aroma a({1, 2, 3}, {2, 3, 1});
  CHECK(a.cycle() == std::vector<Label>{1, 2, 3});
  CHECK(a.cycle_length() == 3);
}

TEST_CASE("labelled counts") {
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    CHECK(static_cast<long>(enumerate_rooted_trees(n).size()) == power(n, n - 1));
    // aromatic forests are the maps {1..n} -> {1..n, none}
    CHECK(static_cast<long>(enumerate_aromatic_forests(iota_labels(n)).size()) == power(n + 1, n));
  }
  // connected endofunctions (OEIS A001865)
  const std::vector<std::size_t> connected{1, 3, 17, 142, 1569};
  for (int n = 1; n <= 5; ++n) CHECK(enumerate_aromas(n).size() == connected[static_cast<std::size_t>(n - 1)]);
  // fixed-point-free endofunctions split as forests of aromas with cycles >= 2
  for (int n = 1; n <= 5; ++n) {
    std::size_t count = 0;
    for (auto& f : enumerate_aromatic_forests(iota_labels(n), 2)) count += f.trees.empty();
    CHECK(static_cast<long>(count) == power(n - 1, n));
  }
}

TEST_CASE("unlabelled counts") {
  const std::vector<std::size_t> trees{1, 1, 2, 4, 9, 20, 48};  // A000081
  for (int n = 1; n <= 7; ++n) CHECK(enumerate_unlabelled(UnlabelledKind::Tree, n).size() == trees[static_cast<std::size_t>(n - 1)]);
  const std::vector<std::size_t> aromas{1, 2, 4, 9, 20};  // connected functional graphs, A002861
  for (int n = 1; n <= 5; ++n) CHECK(enumerate_unlabelled(UnlabelledKind::Aroma, n).size() == aromas[static_cast<std::size_t>(n - 1)]);
}

TEST_CASE("canonical codes ignore labels") {
  RootedTree a = parse_tree("3(1,2(4))");
  RootedTree b = parse_tree("1(4(2),3)");
  CHECK(tree_code(a) == tree_code(b));
  CHECK(tree_code(a) == "((())())");
  // aroma code is independent of the cycle rotation
  CHECK(aroma_code(parse_aroma("cycle[1(4);2;3]")) == aroma_code(parse_aroma("cycle[5;6(7);8]")));
  CHECK(aroma_code(parse_aroma("cycle[1;2(3)]")) == "cycle[(());()]");
  // chirality: a 3-cycle with distinct hanging trees in both orientations
  CHECK(aroma_code(parse_aroma("cycle[1;2(4);3(5(6))]")) != aroma_code(parse_aroma("cycle[1;3(5(6));2(4)]")));
}

TEST_CASE("code round trip through representatives") {
  for (int n = 1; n <= 5; ++n) {
    for (auto& k : enumerate_unlabelled(UnlabelledKind::Tree, n)) {
      CHECK(tree_code(tree_from_code(k.code)) == k.code);
      CHECK(code_vertex_count(k.code) == static_cast<std::size_t>(n));
      CHECK(code_kind(k.code) == UnlabelledKind::Tree);
    }
    for (auto& k : enumerate_unlabelled(UnlabelledKind::Aroma, n)) CHECK(aroma_code(aroma_from_code(k.code)) == k.code);
  }
  CHECK_THROWS_AS(code_kind("(()"), StructuralError);
  CHECK_THROWS_AS(code_kind("cycle[()"), StructuralError);
}

TEST_CASE("symmetry orders") {
  CHECK(symmetry_order(UnlabelledKey{"()"}) == 1);
  CHECK(symmetry_order(UnlabelledKey{"(()())"}) == 2);
  CHECK(symmetry_order(UnlabelledKey{"(()()())"}) == 6);
  CHECK(symmetry_order(UnlabelledKey{"((())(()))"}) == 2);
  CHECK(symmetry_order(UnlabelledKey{"cycle[();()]"}) == 2);
  CHECK(symmetry_order(UnlabelledKey{"cycle[();();()]"}) == 3);
  CHECK(symmetry_order(UnlabelledKey{"cycle[(()())]"}) == 2);
  // orbit-stabiliser: sum over unlabelled shapes of n!/|Aut| = labelled count
  for (int n = 1; n <= 5; ++n) {
    Integer total = 0, fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    for (auto& k : enumerate_unlabelled(UnlabelledKind::Tree, n)) total += fact / symmetry_order(k);
    CHECK(total == power(n, n - 1));
    total = 0;
    for (auto& k : enumerate_unlabelled(UnlabelledKind::Aroma, n)) total += fact / symmetry_order(k);
    CHECK(total == Integer(enumerate_aromas(n).size()));
  }
}

TEST_CASE("text format round trip") {
  for (const char* s : {"3(1,2(4))", "1", "2(1)"}) CHECK(to_text(parse_tree(s)) == s);
  CHECK(to_text(parse_aroma("cycle[1(4);2;3]")) == "cycle[1(4);2;3]");
  CHECK(to_text(parse_aroma("cycle[2;3;1(4)]")) == "cycle[1(4);2;3]");
  auto f = parse_forest("forest{1(2);3|cycle[4]}");
  CHECK(f.trees.size() == 2);
  CHECK(f.aromas.size() == 1);
  CHECK(to_text(parse_forest(to_text(f))) == to_text(f));
  CHECK_THROWS_AS(parse_tree("1(2"), StructuralError);
  CHECK_THROWS_AS(parse_tree("1(1)"), std::exception);
  CHECK_THROWS_AS(parse_aroma("cycle[]"), std::exception);
}

TEST_CASE("symbolic labels") {
  LabelNames names;
  RootedTree t = parse_tree("c(a,1)", &names);
  CHECK(t.size() == 3);
  CHECK(to_text(t, &names).find('a') != std::string::npos);
  CHECK(names.intern("a") == names.intern("a"));
  CHECK(names.intern("a") >= LabelNames::kSymbolBase);
}

TEST_CASE("forest code sign tracks tree order") {
  auto f = parse_forest("forest{1(2);3|}");
  auto g = parse_forest("forest{3;1(2)|}");
  CHECK(forest_code(f).code == forest_code(g).code);
  CHECK(forest_code(f).sign == -forest_code(g).sign);
}
