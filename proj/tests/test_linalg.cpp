#include <doctest.h>

#include <random>

#include "aromatica/linalg.hpp"

using namespace aromatica;

namespace {

using Dense = std::vector<std::vector<Rational>>;

// Textbook dense Gauss-Jordan over Q, used as the oracle.
std::size_t dense_rank(Dense a) {
  std::size_t r = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

SparseMatrix to_sparse(const Dense& a) {
  SparseMatrix m(a.size(), a.empty() ? 0 : a[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != 0) m.add(i, j, a[i][j]);
  return m;
}

Dense random_dense(std::mt19937& rng, std::size_t rows, std::size_t cols, double density) {
  std::uniform_int_distribution<int> val(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  std::bernoulli_distribution keep(density);
  Dense a(rows, std::vector<Rational>(cols, 0));
  for (auto& row : a)
    for (auto& x : row)
      if (keep(rng)) x = Rational(val(rng), den(rng));
  return a;
}

}  // namespace

TEST_CASE("rank agrees with dense elimination") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t rows = 1 + rng() % 9, cols = 1 + rng() % 9;
    Dense a = random_dense(rng, rows, cols, 0.4);
    // make some rows dependent
    if (rows > 2) a[rows - 1] = a[0];
    CHECK(rank(to_sparse(a)) == dense_rank(a));
  }
}

TEST_CASE("kernel vectors are annihilated and independent") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 8;
    SparseMatrix m = to_sparse(random_dense(rng, rows, cols, 0.5));
    auto ker = kernel_basis(m);
    CHECK(ker.size() + rank(m) == cols);
    for (auto& v : ker) {
      SparseVec image = m.apply(v);
      CHECK(image.empty());
    }
    EchelonSpace span;
    for (auto& v : ker) CHECK(span.insert(v));
  }
}

TEST_CASE("canonical span does not depend on the spanning set") {
  std::vector<SparseVec> a{{{0, 1}, {1, 2}}, {{1, 1}, {2, 1}}};
  std::vector<SparseVec> b{{{0, 1}, {1, 3}, {2, 1}}, {{0, 2}, {1, 4}}, {{0, -1}, {1, -1}, {2, 1}}};
  CHECK(canonical_span(a) == canonical_span(b));
  EchelonSpace s;
  for (auto& v : a) s.insert(v);
  CHECK(s.contains({{0, 1}, {1, 3}, {2, 1}}));
  CHECK_FALSE(s.contains({{2, 1}}));
}

TEST_CASE("matrix algebra") {
  SparseMatrix a(2, 2), b(2, 2);
  a.add(0, 0, 1);
  a.add(0, 1, Rational(1, 2));
  b.add(1, 0, 2);
  SparseMatrix ab = a * b;
  CHECK(ab.at(0, 0) == 1);
  CHECK(ab.at(1, 0) == 0);
  CHECK((a - a).is_zero());
  CHECK(a.transpose().at(1, 0) == Rational(1, 2));
  CHECK(SparseMatrix::identity(3, 2).at(2, 2) == 2);
}

TEST_CASE("homology of small complexes") {
  // circle: two vertices, two edges
  ChainComplex c;
  c.basis[0] = {"v", "w"};
  c.basis[1] = {"e", "f"};
  SparseMatrix d(2, 2);
  d.add(0, 0, -1);
  d.add(1, 0, 1);
  d.add(0, 1, 1);
  d.add(1, 1, -1);
  c.differential[1] = d;
  CHECK_NOTHROW(c.validate());
  auto h = homology_dimensions(c);
  CHECK(h[0] == 1);
  CHECK(h[1] == 1);
}

TEST_CASE("validate names a witness when d∘d is nonzero") {
  ChainComplex c;
  c.basis[0] = {"p"};
  c.basis[1] = {"e"};
  c.basis[2] = {"t"};
  SparseMatrix d1(1, 1), d2(1, 1);
  d1.add(0, 0, 1);
  d2.add(0, 0, 1);
  c.differential[1] = d1;
  c.differential[2] = d2;
  try {
    c.validate();
    FAIL("expected ComplexInvalidError");
  } catch (const ComplexInvalidError& e) {
    CHECK(e.witness == "t");
  }
}

TEST_CASE("basis index rejects duplicates and unknown keys") {
  CHECK_THROWS_AS(BasisIndex<int>({1, 2, 1}), BasisMismatchError);
  BasisIndex<int> b({3, 5});
  CHECK(b.index_of(5) == 1);
  CHECK_THROWS_AS(b.index_of(4), BasisMismatchError);
  CHECK_THROWS_AS(matrix_of_map(b, b, [](int k) { return LinComb<int>(k + 1); }), BasisMismatchError);
}

TEST_CASE("trace of a swap on homology") {
  // two points swapped by the action: H_0 is 2-dim with trace 0
  ChainComplex c;
  c.basis[0] = {"1", "2"};
  c.action = [](int, std::size_t i, std::span<const int> perm) {
    return std::pair<std::size_t, int>(static_cast<std::size_t>(perm[i] - 1), 1);
  };
  std::vector<int> swap{2, 1}, id{1, 2};
  CHECK(induced_action_trace(c, 0, swap) == 0);
  CHECK(induced_action_trace(c, 0, id) == 2);
}
