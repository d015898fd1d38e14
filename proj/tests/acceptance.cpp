// Acceptance suite: one line per criterion with its wall-clock limit.
// Expected values come from oracles written here, independent of the library
// code under test wherever that is feasible.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "aromatica/bseries.hpp"
#include "aromatica/complexes.hpp"
#include "aromatica/operad.hpp"
#include "aromatica/properties.hpp"

using namespace aromatica;

namespace {

Integer ipow(long b, unsigned long e) {
  Integer r = 1;
  for (unsigned long i = 0; i < e; ++i) r *= b;
  return r;
}

Integer factorial(int n) {
  Integer r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// ---------------------------------------------------------------------------
// brute-force oracles over raw maps {0..n-1} -> {0..n-1} (or -1 for a root)

// Calls f(parent) for every parent array describing a rooted tree.
void for_each_parent_array(int n, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> p(static_cast<std::size_t>(n), -1);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      int roots = 0;
      for (int v : p) roots += v < 0;
      if (roots != 1) return;
      for (int v = 0; v < n; ++v) {  // every vertex reaches the root within n steps
        int u = v, steps = 0;
        while (p[static_cast<std::size_t>(u)] >= 0 && steps <= n) u = p[static_cast<std::size_t>(u)], ++steps;
        if (steps > n) return;
      }
      f(p);
      return;
    }
    for (int v = -1; v < n; ++v) {
      if (v == i) continue;
      p[static_cast<std::size_t>(i)] = v;
      rec(i + 1);
    }
  };
  rec(0);
}

// Unordered-tree canonical string (sorted child strings).
std::string ahu(const std::vector<int>& p, int v) {
  std::vector<std::string> kids;
  for (int u = 0; u < static_cast<int>(p.size()); ++u)
    if (p[static_cast<std::size_t>(u)] == v) kids.push_back(ahu(p, u));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (auto& k : kids) s += k;
  return s + ")";
}

std::size_t connected_endofunctions(int n) {
  std::size_t count = 0;
  std::vector<int> f(static_cast<std::size_t>(n), 0);
  while (true) {
    std::vector<int> comp(static_cast<std::size_t>(n));
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int x) {
      return comp[static_cast<std::size_t>(x)] == x ? x : comp[static_cast<std::size_t>(x)] = find(comp[static_cast<std::size_t>(x)]);
    };
    for (int v = 0; v < n; ++v) comp[static_cast<std::size_t>(find(v))] = find(f[static_cast<std::size_t>(v)]);
    int classes = 0;
    for (int v = 0; v < n; ++v) classes += find(v) == v;
    count += classes == 1;
    int i = 0;
    while (i < n && ++f[static_cast<std::size_t>(i)] == n) f[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
  }
  return count;
}

// ---------------------------------------------------------------------------
// reporting

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s > limit_s) o.require(false, "time limit exceeded");
  if (!o.pass) ++failures;
  std::printf("[%s] criterion %2d  %-34s %8.2fs / %6.0fs%s%s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), s, limit_s,
              o.detail.empty() ? "" : "  ", o.detail.c_str());
  std::fflush(stdout);
}

std::string str(const Integer& x) { return x.get_str(); }
std::string str(std::size_t x) { return std::to_string(x); }

// ---------------------------------------------------------------------------
// elementary differentials, recomputed here

// F(tau) by the recursive rule F([t1..tk])_i = sum_J d_J f_i prod F(t_m)_{j_m}.
PolyVectorField recursive_F(const RootedTree& t, Label v, const PolyVectorField& f) {
  const int d = f.dim();
  auto kids = t.children(v);
  std::vector<PolyVectorField> sub;
  for (Label c : kids) sub.push_back(recursive_F(t, c, f));
  PolyVectorField out = PolyVectorField::zero(d);
  for (int i = 0; i < d; ++i) {
    std::vector<int> idx(kids.size(), 0);
    while (true) {
      Poly term = f.components[static_cast<std::size_t>(i)];
      for (int j : idx) term = term.derivative(j);
      for (std::size_t m = 0; m < kids.size(); ++m) term = term * sub[m].components[static_cast<std::size_t>(idx[m])];
      out.components[static_cast<std::size_t>(i)] += term;
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == d) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }
  return out;
}

// F of a functional graph by summing over all index assignments.
Poly contracted_F(const std::vector<int>& succ, const PolyVectorField& f) {
  const int d = f.dim();
  const std::size_t n = succ.size();
  Poly out(d);
  std::vector<int> iota(n, 0);
  while (true) {
    Poly term = Poly::constant(d, 1);
    for (std::size_t v = 0; v < n; ++v) {
      Poly factor = f.components[static_cast<std::size_t>(iota[v])];
      for (std::size_t u = 0; u < n; ++u)
        if (succ[u] == static_cast<int>(v)) factor = factor.derivative(iota[u]);
      term = term * factor;
    }
    out += term;
    std::size_t k = 0;
    while (k < n && ++iota[k] == d) iota[k++] = 0;
    if (k == n) break;
  }
  return out;
}

Poly divergence_of(const PolyVectorField& g) {
  Poly out(g.dim());
  for (int i = 0; i < g.dim(); ++i) out += g.components[static_cast<std::size_t>(i)].derivative(i);
  return out;
}

BSeriesCoefficients coefficients(const std::map<std::string, Rational>& values, int order) {
  BSeriesCoefficients b;
  b.order = order;
  for (int k = 1; k <= order; ++k)
    for (auto& key : enumerate_unlabelled(UnlabelledKind::Tree, k)) b.value[key.code] = 0;
  for (auto& [code, v] : values) b.value[code] = v;
  return b;
}

}  // namespace

int main() {
  criterion(1, "dimensions", 10, [] {
    Outcome o;
    for (int n = 1; n <= 7; ++n) {
      std::size_t raw = 0;
      std::set<std::string> shapes;
      for_each_parent_array(n, [&](const std::vector<int>& p) {
        ++raw;
        if (n <= 6) shapes.insert(ahu(p, static_cast<int>(std::find(p.begin(), p.end(), -1) - p.begin())));
      });
      auto trees = enumerate_rooted_trees(n).size();
      o.require(trees == raw && Integer(raw) == ipow(n, n - 1),
                "RT(" + std::to_string(n) + ") = " + str(trees) + ", brute force " + str(raw));
      if (n <= 6) {
        auto unl = enumerate_unlabelled(UnlabelledKind::Tree, n).size();
        o.require(unl == shapes.size(), "unlabelled trees n=" + std::to_string(n) + ": " + str(unl) + " vs " + str(shapes.size()));
        auto aromas = enumerate_aromas(n).size();
        auto oracle = connected_endofunctions(n);
        o.require(aromas == oracle, "aromas n=" + std::to_string(n) + ": " + str(aromas) + " vs " + str(oracle));
      }
    }
    return o;
  });

  criterion(2, "divergence kernels", 30, [] {
    Outcome o;
    for (int n = 1; n <= 6; ++n) {
      const std::string at = " at n=" + std::to_string(n);
      o.require(Integer(rank(divergence_matrix(n, false))) == ipow(n, n - 1), "Div not injective" + at);
      SparseMatrix d0 = divergence_matrix(n, true);
      const std::size_t ker = d0.cols() - rank(d0);
      o.require(Integer(ker) == factorial(n - 1), "dim ker Div0 = " + str(ker) + at);
      // Lie side: lie_basis(n) and the right-normed brackets [s2,[s3,...,[sn,1]]]
      // built here span the same space, and every element lies in the kernel.
      BasisIndex<RootedTree> trees(enumerate_rooted_trees(n));
      EchelonSpace lib, oracle;
      bool in_kernel = true;
      for (auto& x : lie_basis(n)) {
        lib.insert(coordinates(x, trees));
        in_kernel = in_kernel && div0(x).is_zero();
      }
      std::vector<Label> rest;
      for (Label v = 2; v <= n; ++v) rest.push_back(v);
      do {
        TreeComb acc(RootedTree::single(1));
        for (auto it = rest.rbegin(); it != rest.rend(); ++it) acc = lie_bracket(TreeComb(RootedTree::single(*it)), acc);
        oracle.insert(coordinates(acc, trees));
        in_kernel = in_kernel && div0(acc).is_zero();
      } while (std::next_permutation(rest.begin(), rest.end()));
      bool same = lib.dim() == oracle.dim();
      for (auto& v : oracle.canonical_basis()) same = same && lib.contains(v);
      o.require(in_kernel, "Lie element outside ker Div0" + at);
      o.require(same && lib.dim() == ker, "Lie span (" + str(lib.dim()) + ") differs from ker Div0" + at);
    }
    return o;
  });

  criterion(3, "embedding", 60, [] {
    Outcome o;
    for (int n = 1; n <= 5; ++n) {
      auto dim = suboperad_span_dimension(n);
      o.require(Integer(dim) == ipow(n + 1, n - 1), "span dim " + str(dim) + " at n=" + std::to_string(n));
    }
    AromaComb diff = AromaComb(Aroma({1, 2, 3}, {2, 3, 1})) - AromaComb(Aroma({1, 2, 3}, {3, 1, 2}));
    o.require(!in_suboperad_span(diff, 3), "3-cycle orientation difference lies in the span");
    return o;
  });

  criterion(4, "CE homology", 120, [] {
    Outcome o;
    for (int n = 1; n <= 4; ++n) {
      for (auto variant : {CEVariant::L, CEVariant::LTilde}) {
        const bool full = variant == CEVariant::L;
        auto h = homology_dimensions(build_ce_complex(variant, n).complex);
        for (auto& [k, d] : h) {
          Integer want = 0;
          if (full && k == 0) want = ipow(n - 1, n);
          if (!full && k == 0 && n >= 2) want = ipow(n - 2, n);
          if (!full && k == 1 && n == 1) want = 1;
          o.require(Integer(d) == want, std::string(full ? "CE(L)" : "CE(L~)") + " H_" + std::to_string(k) +
                                            " = " + str(d) + " at n=" + std::to_string(n) + ", want " + str(want));
        }
      }
    }
    return o;
  });

  criterion(5, "bicomplex", 120, [] {
    Outcome o;
    std::size_t column_one_total = 0, column_one_single_vertex = 0;
    for (auto variant : {BicomplexVariant::Full, BicomplexVariant::DivergenceFree}) {
      const bool full = variant == BicomplexVariant::Full;
      for (int n = 1; n <= 4; ++n) {
        Bicomplex b = build_aromatic_bicomplex(variant, n);
        const std::string at = std::string(full ? " full" : " div-free") + " n=" + std::to_string(n);
        o.require(b.differentials_commute(), "dH and dV do not commute" + at);
        for (int p = 0; p <= n; ++p)
          for (auto& [k, d] : homology_dimensions(b.vertical(p)))
            o.require(d == 0, "dV homology at p=" + std::to_string(p) + at);
        for (int q = 0; q <= n; ++q)
          for (auto& [p, d] : homology_dimensions(b.horizontal(q))) {
            if (p == 0) continue;
            if (!full && p == 1) {
              column_one_total += d;
              if (n == 1) column_one_single_vertex += d;
              continue;
            }
            o.require(d == 0, "dH homology at (" + std::to_string(p) + "," + std::to_string(q) + ")" + at);
          }
      }
    }
    o.require(column_one_total == 2 && column_one_single_vertex == 2,
              "column one carries " + str(column_one_total) + ", single-vertex part " + str(column_one_single_vertex));
    return o;
  });

  criterion(6, "graph complexes", 60, [] {
    Outcome o;
    for (int n = 1; n <= 5; ++n) {
      const std::string at = " at n=" + std::to_string(n);
      GraphComplex g = build_graph_complex(GraphVariant::All, n);
      // d h + h d = C(n,2) id, assembled here from the raw matrices
      const Rational scale = n * (n - 1) / 2;
      for (auto& [k, basis] : g.graphs) {
        const std::size_t dim = basis.size();
        SparseMatrix sum(dim, dim);
        if (g.homotopy.count(k) && g.complex.differential.count(k + 1)) sum = sum + g.complex.d(k + 1) * g.homotopy.at(k);
        if (g.homotopy.count(k - 1) && g.complex.differential.count(k)) sum = sum + g.homotopy.at(k - 1) * g.complex.d(k);
        o.require(sum == SparseMatrix::identity(dim, scale), "homotopy identity fails in degree " + std::to_string(k) + at);
      }
      std::size_t total = 0;
      for (auto& [k, d] : homology_dimensions(g.complex)) total += d;
      o.require(total == (n == 1 ? 1u : 0u), "graph homology " + str(total) + at);
      std::size_t connected = 0;
      for (auto& [k, d] : homology_dimensions(build_graph_complex(GraphVariant::ConnectedReduced, n).complex)) connected += d;
      o.require(Integer(connected) == factorial(n - 1), "connected graph homology " + str(connected) + at);
    }
    return o;
  });

  criterion(7, "identities", 10, [] {
    Outcome o;
    for (int n = 1; n <= 20; ++n) {
      Integer sum = 0;
      for (int k = 0; k <= n; ++k) {
        Integer binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        Integer a = k == 0 ? Integer(1) : ipow(k - 2, static_cast<unsigned long>(k));  // 0^0 = 1
        Integer b = n - 1 - k >= 0 ? ipow(n + 1 - k, static_cast<unsigned long>(n - 1 - k)) : Integer(1);  // 1^-1 = 1
        sum += binom * a * b;
      }
      o.require(sum == ipow(n - 1, static_cast<unsigned long>(n)), "Abel sum at n=" + std::to_string(n));
      o.require(abel_sum(n) == sum, "library Abel sum at n=" + std::to_string(n));
    }
    auto series = euler_characteristic_series(4);
    for (int n = 1; n <= 4; ++n) {
      ChainComplex c = build_ce_complex(CEVariant::LTilde, n).complex;
      Integer chi = 0;
      for (auto& [k, basis] : c.basis) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(basis.size());
      o.require(chi == ipow(n - 2, n) && series[static_cast<std::size_t>(n - 1)] == chi,
                "Euler characteristic " + str(chi) + " at n=" + std::to_string(n));
    }
    return o;
  });

  criterion(8, "characters", 120, [] {
    Outcome o;
    for (int n = 1; n <= 4; ++n) {
      for (auto& row : character_check(n)) {
        std::vector<long> a(static_cast<std::size_t>(n + 1), 0);
        for (int part : row.cycle_type) ++a[static_cast<std::size_t>(part)];
        Integer product = 1;
        for (int k = 1; k <= n; ++k) {
          long base = -2;
          for (int d = 1; d <= k; ++d)
            if (k % d == 0) base += d * a[static_cast<std::size_t>(d)];
          product *= ipow(base, static_cast<unsigned long>(a[static_cast<std::size_t>(k)]));
        }
        std::string type;
        for (int part : row.cycle_type) type += std::to_string(part) + " ";
        o.require(row.euler_trace == Rational(product), "Euler trace for type " + type + "at n=" + std::to_string(n));
        // the degree-0 trace equals the product once H_1 vanishes (n >= 2)
        if (n >= 2)
          o.require(row.trace_h0 == Rational(product),
                    "H0 trace " + row.trace_h0.get_str() + " vs " + str(product) + " for type " + type);
      }
    }
    return o;
  });

  criterion(9, "B-series", 60, [] {
    Outcome o;
    PolyVectorField f = random_polynomial_field(3, 3, 20240607);
    for (int k = 1; k <= 4; ++k)
      for (auto& key : enumerate_unlabelled(UnlabelledKind::Tree, k)) {
        RootedTree t = tree_from_code(key.code);
        Poly lhs = divergence_of(recursive_F(t, t.root(), f));
        // closings: arc from the root to each vertex, as raw successor maps
        const auto& labels = t.labels();
        auto pos = [&](Label v) { return static_cast<int>(std::find(labels.begin(), labels.end(), v) - labels.begin()); };
        Poly rhs(3);
        for (Label target : labels) {
          std::vector<int> succ;
          for (Label v : labels) succ.push_back(v == t.root() ? pos(target) : pos(t.parent(v)));
          rhs += contracted_F(succ, f);
        }
        o.require(lhs == rhs, "divergence identity fails for " + key.code);
        o.require(check_divergence_identity(key, f), "library check fails for " + key.code);
      }
    constexpr int kOrder = 6;
    for (Rational c : {Rational(1), Rational(2), Rational(-1, 3)})
      o.require(volume_obstruction(coefficients({{"()", c}}, kOrder)).empty(),
                "obstruction for the flow at time " + c.get_str());
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> pick(-3, 3);
    for (int k = 2; k <= kOrder; ++k)
      for (auto& key : enumerate_unlabelled(UnlabelledKind::Tree, k)) {
        o.require(!volume_obstruction(coefficients({{"()", 1}, {key.code, 1}}, kOrder)).empty(),
                  "perturbation on " + key.code + " not detected");
      }
    // random perturbations supported beyond the single vertex
    for (int trial = 0; trial < 20; ++trial) {
      std::map<std::string, Rational> values{{"()", 1}};
      bool any = false;
      for (int k = 2; k <= kOrder; ++k)
        for (auto& key : enumerate_unlabelled(UnlabelledKind::Tree, k))
          if (int v = pick(rng) * (pick(rng) > 1); v != 0) values[key.code] = v, any = true;
      if (any)
        o.require(!volume_obstruction(coefficients(values, kOrder)).empty(), "random perturbation not detected");
    }
    return o;
  });

  criterion(10, "properties", 60, [] {
    Outcome o;
    for (auto& r : run_property_checks()) o.require(r.pass && r.cases > 0, r.name + ": " + r.detail);
    return o;
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
