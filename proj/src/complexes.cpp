#include "aromatica/complexes.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

namespace aromatica {

namespace {

// Sign of the action of a tree block on an aroma block, relative to the
// position sign of the tree block. Forced by d^2 = 0.
constexpr int kModuleSign = -1;

int parity_sign(std::size_t k) { return k % 2 == 0 ? 1 : -1; }

int permutation_sign(std::span<const int> perm) {
  std::vector<bool> seen(perm.size(), false);
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j] - 1)) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

std::vector<std::vector<int>> all_permutations(int lo, int hi) {  // of {lo..hi}
  std::vector<int> p(static_cast<std::size_t>(std::max(0, hi - lo + 1)));
  std::iota(p.begin(), p.end(), lo);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

struct GroupElement {
  std::vector<int> perm;
  int character;  // sign of the white part
};

// S_w x S_{n-w} acting on whites 1..w and blacks w+1..n.
std::vector<GroupElement> colour_group(int n, int w) {
  std::vector<GroupElement> out;
  for (auto& white : all_permutations(1, w)) {
    for (auto& black : all_permutations(w + 1, n)) {
      std::vector<int> perm(white);
      perm.insert(perm.end(), black.begin(), black.end());
      out.push_back({perm, permutation_sign(white)});
    }
  }
  return out;
}

SparseMatrix zero_matrix(std::size_t r, std::size_t c) { return SparseMatrix(r, c); }

}  // namespace

std::pair<AromaticForest, int> permute(const AromaticForest& f, std::span<const int> perm) {
  AromaticForest g = f.relabelled([&](Label v) {
    if (v < 1 || static_cast<std::size_t>(v) > perm.size()) throw DomainError("permute: label outside the permutation");
    return perm[static_cast<std::size_t>(v - 1)];
  });
  int s = g.canonicalize();
  return {std::move(g), s};
}

ForestComb ce_differential(const AromaticForest& f, CEVariant variant) {
  ForestComb out;
  auto emit = [&](AromaticForest g, const Rational& c) {
    int s = g.canonicalize();
    out.add(std::move(g), c * s);
  };
  const auto& trees = f.trees;
  const auto& aromas = f.aromas;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    const int si = parity_sign(i);
    std::vector<RootedTree> rest;
    for (std::size_t j = 0; j < trees.size(); ++j)
      if (j != i) rest.push_back(trees[j]);

    AromaComb d = variant == CEVariant::L ? div(trees[i]) : div0(trees[i]);
    for (auto& [a, c] : d) {
      AromaticForest g{rest, aromas};
      g.aromas.push_back(a);
      emit(std::move(g), c * si);
    }

    for (std::size_t m = 0; m < aromas.size(); ++m) {
      for (auto& [a, c] : module_action(aromas[m], trees[i])) {
        AromaticForest g{rest, aromas};
        g.aromas[m] = a;
        emit(std::move(g), c * (kModuleSign * si));
      }
    }

    for (std::size_t j = i + 1; j < trees.size(); ++j) {
      const int sij = parity_sign(i + j + 1);
      std::vector<RootedTree> others;
      for (std::size_t k = 0; k < trees.size(); ++k)
        if (k != i && k != j) others.push_back(trees[k]);
      for (auto& [t, c] : lie_bracket(trees[i], trees[j])) {
        AromaticForest g;
        g.trees.push_back(t);
        g.trees.insert(g.trees.end(), others.begin(), others.end());
        g.aromas = aromas;
        emit(std::move(g), c * sij);
      }
    }
  }
  return out;
}

CEComplex build_ce_complex(CEVariant variant, int n) {
  if (n < 1) throw DomainError("build_ce_complex: arity must be >= 1");
  const int min_cycle = variant == CEVariant::L ? 1 : 2;
  std::map<int, std::vector<AromaticForest>> by_degree;
  for (auto& f : enumerate_aromatic_forests(iota_labels(n), min_cycle))
    by_degree[static_cast<int>(f.trees.size())].push_back(f);

  auto basis = std::make_shared<std::map<int, BasisIndex<AromaticForest>>>();
  for (int k = 0; k <= n; ++k) basis->emplace(k, BasisIndex<AromaticForest>(std::move(by_degree[k])));

  CEComplex ce{variant, n, basis, {}};
  for (auto& [k, idx] : *basis) {
    auto& keys = ce.complex.basis[k];
    for (auto& f : idx.keys()) keys.push_back(to_text(f));
  }
  for (int k = 1; k <= n; ++k) {
    const auto& src = basis->at(k);
    const auto& dst = basis->at(k - 1);
    SparseMatrix m = matrix_of_map(src, dst, [&](const AromaticForest& f) { return ce_differential(f, variant); });
    m.col_keys = ce.complex.basis[k];
    m.row_keys = ce.complex.basis[k - 1];
    ce.complex.differential[k] = std::move(m);
  }
  ce.complex.action = [basis](int degree, std::size_t index, std::span<const int> perm) {
    const auto& idx = basis->at(degree);
    auto [g, s] = permute(idx[index], perm);
    auto j = idx.find(g);
    if (!j) throw DomainError("permutation does not preserve the basis");
    return std::pair<std::size_t, int>{*j, s};
  };
  ce.complex.validate();
  return ce;
}

// ---------------------------------------------------------------------------
// Bicomplex

namespace {

struct ClassImage {
  std::optional<std::size_t> index;  // none when the orbit vanishes
  int coefficient = 0;
};

// Coinvariant projection of labelled forests of one degree onto orbit
// representatives, for a fixed number of white labels.
class OrbitProjection {
 public:
  OrbitProjection(const BasisIndex<AromaticForest>& labelled, int n, int whites)
      : group_(colour_group(n, whites)) {
    std::map<AromaticForest, std::size_t> rep_index;
    images_.resize(labelled.size());
    for (std::size_t i = 0; i < labelled.size(); ++i) {
      const auto& f = labelled[i];
      // least element of the orbit and the group element reaching it
      std::optional<AromaticForest> best;
      int best_coeff = 0;
      for (auto& g : group_) {
        auto [h, s] = permute(f, g.perm);
        if (!best || h < *best) {
          best = std::move(h);
          best_coeff = s * g.character;
        }
      }
      auto it = rep_index.find(*best);
      if (it == rep_index.end()) {
        if (vanishes(*best)) {
          it = rep_index.emplace(*best, kVanishing).first;
        } else {
          it = rep_index.emplace(*best, reps_.size()).first;
          reps_.push_back(*best);
        }
      }
      if (it->second != kVanishing) images_[i] = {it->second, best_coeff};
    }
  }

  const std::vector<AromaticForest>& reps() const { return reps_; }
  const ClassImage& image(std::size_t labelled_index) const { return images_[labelled_index]; }

 private:
  static constexpr std::size_t kVanishing = static_cast<std::size_t>(-1);

  bool vanishes(const AromaticForest& r) const {
    for (auto& g : group_) {
      auto [h, s] = permute(r, g.perm);
      if (h == r && s * g.character == -1) return true;
    }
    return false;
  }

  std::vector<GroupElement> group_;
  std::vector<AromaticForest> reps_;
  std::vector<ClassImage> images_;
};

SparseVec project(const ForestComb& x, const BasisIndex<AromaticForest>& labelled, const OrbitProjection& proj) {
  SparseVec v;
  for (auto& [f, c] : x) {
    const auto& im = proj.image(labelled.index_of(f));
    if (!im.index) continue;
    Rational& slot = v[*im.index];
    slot += c * im.coefficient;
    if (slot == 0) v.erase(*im.index);
  }
  return v;
}

// Sends black label v to white label w+1 and shifts blacks w+1..v-1 up by one.
std::vector<int> whitening(int n, int w, int v) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int x = 1; x <= n; ++x) {
    int y = x;
    if (x == v) y = w + 1;
    else if (x > w && x < v) y = x + 1;
    perm[static_cast<std::size_t>(x - 1)] = y;
  }
  return perm;
}

}  // namespace

std::size_t Bicomplex::dim(int p, int q) const {
  auto it = basis.find({p, q});
  return it == basis.end() ? 0 : it->second.size();
}

ChainComplex Bicomplex::horizontal(int q) const {
  ChainComplex c;
  for (int p = 0; p <= arity; ++p) {
    auto& keys = c.basis[p];
    auto it = basis.find({p, q});
    if (it != basis.end())
      for (auto& f : it->second) keys.push_back(to_text(f));
  }
  for (int p = 1; p <= arity; ++p) {
    auto it = dH.find({p, q});
    c.differential[p] = it != dH.end() ? it->second : zero_matrix(dim(p - 1, q), dim(p, q));
  }
  return c;
}

ChainComplex Bicomplex::vertical(int p) const {
  ChainComplex c;
  for (int q = 0; q <= arity; ++q) {
    auto& keys = c.basis[-q];
    auto it = basis.find({p, q});
    if (it != basis.end())
      for (auto& f : it->second) keys.push_back(to_text(f));
  }
  for (int q = 0; q < arity; ++q) {
    auto it = dV.find({p, q});
    c.differential[-q] = it != dV.end() ? it->second : zero_matrix(dim(p, q + 1), dim(p, q));
  }
  return c;
}

bool Bicomplex::differentials_commute() const {
  for (int p = 1; p <= arity; ++p) {
    for (int q = 0; q < arity; ++q) {
      SparseMatrix a = dV.at({p - 1, q}) * dH.at({p, q});
      SparseMatrix b = dH.at({p, q + 1}) * dV.at({p, q});
      if (!(a - b).is_zero()) return false;
    }
  }
  return true;
}

Bicomplex build_aromatic_bicomplex(BicomplexVariant variant, int n) {
  const CEVariant cev = variant == BicomplexVariant::Full ? CEVariant::L : CEVariant::LTilde;
  CEComplex ce = build_ce_complex(cev, n);
  const auto& labelled = *ce.basis;

  std::map<std::pair<int, int>, OrbitProjection> proj;
  Bicomplex b{variant, n, {}, {}, {}};
  for (int p = 0; p <= n; ++p) {
    for (int q = 0; q <= n; ++q) {
      auto it = proj.emplace(std::pair{p, q}, OrbitProjection(labelled.at(p), n, q)).first;
      b.basis[{p, q}] = it->second.reps();
    }
  }

  auto keys_of = [&](int p, int q) {
    std::vector<std::string> keys;
    for (auto& f : b.basis[{p, q}]) keys.push_back(to_text(f));
    return keys;
  };

  for (int p = 0; p <= n; ++p) {
    for (int q = 0; q <= n; ++q) {
      const auto& reps = b.basis[{p, q}];
      if (p >= 1) {
        SparseMatrix m(b.dim(p - 1, q), reps.size());
        for (std::size_t j = 0; j < reps.size(); ++j)
          m.set_column(j, project(ce_differential(reps[j], cev), labelled.at(p - 1), proj.at({p - 1, q})));
        m.col_keys = keys_of(p, q);
        m.row_keys = keys_of(p - 1, q);
        b.dH[{p, q}] = std::move(m);
      }
      if (q < n) {
        SparseMatrix m(b.dim(p, q + 1), reps.size());
        for (std::size_t j = 0; j < reps.size(); ++j) {
          ForestComb img;
          for (int v = q + 1; v <= n; ++v) {
            auto [g, s] = permute(reps[j], whitening(n, q, v));
            img.add(std::move(g), s);
          }
          m.set_column(j, project(img, labelled.at(p), proj.at({p, q + 1})));
        }
        m.col_keys = keys_of(p, q);
        m.row_keys = keys_of(p, q + 1);
        b.dV[{p, q}] = std::move(m);
      }
    }
  }
  for (int q = 0; q <= n; ++q) b.horizontal(q).validate();
  for (int p = 0; p <= n; ++p) b.vertical(p).validate();
  return b;
}

std::size_t expected_bicomplex_homology(const CEComplex& ce, int degree, int whites) {
  const int n = ce.arity;
  HomologyTrace trace(ce.complex, degree);
  if (trace.homology_dim() == 0) return 0;
  Rational sum = 0;
  auto group = colour_group(n, whites);
  for (auto& g : group) sum += trace(g.perm) * g.character;
  sum /= static_cast<long>(group.size());
  if (!is_integer(sum) || sum < 0) throw StructuralError("character average is not a dimension: " + to_string(sum));
  return sum.get_num().get_ui();
}

// ---------------------------------------------------------------------------
// Graph complexes

namespace {

struct EdgeTable {
  std::vector<std::pair<int, int>> edges;  // lexicographic, 0-based vertices
  explicit EdgeTable(int n) {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) edges.emplace_back(a, b);
  }
};

bool connected(std::uint64_t mask, int n, const EdgeTable& et) {
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  int components = n;
  for (std::size_t e = 0; e < et.edges.size(); ++e) {
    if (!((mask >> e) & 1u)) continue;
    int a = find(et.edges[e].first), b = find(et.edges[e].second);
    if (a != b) {
      parent[static_cast<std::size_t>(a)] = b;
      --components;
    }
  }
  return components == 1;
}

// sign of moving edge e to the front of the ordered edge list
int edge_sign(std::uint64_t mask, std::size_t e) {
  std::uint64_t below = mask & ((std::uint64_t{1} << e) - 1);
  return std::popcount(below) % 2 == 0 ? 1 : -1;
}

}  // namespace

GraphComplex build_graph_complex(GraphVariant variant, int n) {
  if (n < 1) throw DomainError("build_graph_complex: arity must be >= 1");
  EdgeTable et(n);
  const std::size_t m = et.edges.size();
  if (m >= 63) throw UnsupportedInputError("build_graph_complex: arity too large");

  GraphComplex g{variant, n, {}, {}, {}};
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    if (variant == GraphVariant::ConnectedReduced && !connected(mask, n, et)) continue;
    g.graphs[-std::popcount(mask)].push_back(mask);
  }
  for (int k = -static_cast<int>(m); k <= 0; ++k) g.graphs[k];  // every degree present

  std::map<int, std::map<std::uint64_t, std::size_t>> index;
  for (auto& [k, masks] : g.graphs) {
    auto& keys = g.complex.basis[k];
    for (std::size_t i = 0; i < masks.size(); ++i) {
      index[k][masks[i]] = i;
      std::string key = "{";
      bool first = true;
      for (std::size_t e = 0; e < m; ++e) {
        if (!((masks[i] >> e) & 1u)) continue;
        key += (first ? "" : ",") + std::to_string(et.edges[e].first + 1) + "-" + std::to_string(et.edges[e].second + 1);
        first = false;
      }
      keys.push_back(key + "}");
    }
  }

  for (auto& [k, masks] : g.graphs) {
    if (k == -static_cast<int>(m)) continue;
    SparseMatrix d(g.graphs[k - 1].size(), masks.size());
    for (std::size_t j = 0; j < masks.size(); ++j) {
      for (std::size_t e = 0; e < m; ++e) {
        if ((masks[j] >> e) & 1u) continue;
        std::uint64_t target = masks[j] | (std::uint64_t{1} << e);
        auto it = index[k - 1].find(target);
        if (it != index[k - 1].end()) d.add(it->second, j, edge_sign(masks[j], e));
      }
    }
    d.col_keys = g.complex.basis[k];
    d.row_keys = g.complex.basis[k - 1];
    g.complex.differential[k] = std::move(d);
  }
  for (auto& [k, masks] : g.graphs) {
    if (k == 0) continue;
    SparseMatrix h(g.graphs[k + 1].size(), masks.size());
    for (std::size_t j = 0; j < masks.size(); ++j) {
      for (std::size_t e = 0; e < m; ++e) {
        if (!((masks[j] >> e) & 1u)) continue;
        std::uint64_t target = masks[j] & ~(std::uint64_t{1} << e);
        auto it = index[k + 1].find(target);
        if (it != index[k + 1].end()) h.add(it->second, j, edge_sign(masks[j], e));
      }
    }
    g.homotopy[k] = std::move(h);
  }
  g.complex.validate();
  return g;
}

bool graph_homotopy_identity_holds(const GraphComplex& g) {
  const Rational scale = g.arity * (g.arity - 1) / 2;
  for (auto& [k, masks] : g.graphs) {
    const std::size_t dim = masks.size();
    SparseMatrix total(dim, dim);
    if (auto h = g.homotopy.find(k); h != g.homotopy.end()) total = total + g.complex.d(k + 1) * h->second;
    if (auto h = g.homotopy.find(k - 1); h != g.homotopy.end() && g.graphs.count(k - 1))
      total = total + h->second * g.complex.d(k);
    if (!(total == SparseMatrix::identity(dim, scale))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Identities and characters

std::vector<Integer> euler_characteristic_series(int max_n) {
  if (max_n < 1) throw DomainError("euler_characteristic_series: max_n must be >= 1");
  std::vector<Integer> out;
  for (int n = 1; n <= max_n; ++n) {
    Integer chi = 0;
    for (auto& f : enumerate_aromatic_forests(iota_labels(n), 2)) chi += f.trees.size() % 2 == 0 ? 1 : -1;
    out.push_back(chi);
  }
  return out;
}

namespace {

Integer ipow(const Integer& base, long e) {
  if (e < 0) {
    if (base == 1) return 1;
    if (base == -1) return e % 2 == 0 ? 1 : -1;
    throw DomainError("negative exponent of a non-unit");
  }
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));  // 0^0 = 1
  return r;
}

Integer binomial(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace

Integer abel_sum(int n) {
  Integer s = 0;
  for (int k = 0; k <= n; ++k) s += binomial(n, k) * ipow(k - 2, k) * ipow(n + 1 - k, n - 1 - k);
  return s;
}

bool abel_identity_holds(int n) { return abel_sum(n) == ipow(n - 1, n); }

std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto& self, int left, int max_part) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(left, max_part); p >= 1; --p) {
      cur.push_back(p);
      self(self, left - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

std::vector<int> permutation_of_type(const std::vector<int>& parts) {
  std::vector<int> perm;
  int start = 1;
  for (int len : parts) {
    for (int i = 0; i < len; ++i) perm.push_back(start + (i + 1) % len);
    start += len;
  }
  return perm;
}

Integer character_formula(const std::vector<int>& parts) {
  int n = 0;
  for (int p : parts) n += p;
  std::vector<int> a(static_cast<std::size_t>(n) + 1, 0);
  for (int p : parts) ++a[static_cast<std::size_t>(p)];
  Integer prod = 1;
  for (int k = 1; k <= n; ++k) {
    Integer base = -2;
    for (int d = 1; d <= k; ++d)
      if (k % d == 0) base += d * a[static_cast<std::size_t>(d)];
    prod *= ipow(base, a[static_cast<std::size_t>(k)]);
  }
  return prod;
}

std::vector<CharacterRow> character_check(int n) {
  CEComplex ce = build_ce_complex(CEVariant::LTilde, n);
  std::vector<HomologyTrace> traces;
  for (int k = 0; k <= n; ++k) traces.emplace_back(ce.complex, k);
  bool higher_vanish = true;
  for (int k = 1; k <= n; ++k) higher_vanish = higher_vanish && traces[static_cast<std::size_t>(k)].homology_dim() == 0;

  std::vector<CharacterRow> rows;
  for (auto& parts : partitions(n)) {
    CharacterRow row;
    row.cycle_type = parts;
    row.formula = character_formula(parts);
    auto perm = permutation_of_type(parts);
    row.trace_h0 = traces[0](perm);
    row.euler_trace = 0;
    for (int k = 0; k <= n; ++k) {
      const auto& t = traces[static_cast<std::size_t>(k)];
      if (t.homology_dim() == 0) continue;
      row.euler_trace += parity_sign(static_cast<std::size_t>(k)) * t(perm);
    }
    row.match = row.euler_trace == row.formula && (!higher_vanish || row.trace_h0 == row.formula);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace aromatica
