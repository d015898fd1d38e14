#include "aromatica/bseries.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include <json.hpp>

#include "aromatica/operad.hpp"

namespace aromatica {

// ---------------------------------------------------------------------------
// Poly

Poly Poly::constant(int nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(Monomial(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

Poly Poly::variable(int nvars, int index) {
  Poly p(nvars);
  Monomial m(static_cast<std::size_t>(nvars), 0);
  m.at(static_cast<std::size_t>(index)) = 1;
  p.add_term(m, 1);
  return p;
}

int Poly::degree() const {
  int deg = -1;
  for (auto& [m, c] : terms_) {
    int s = 0;
    for (int e : m) s += e;
    deg = std::max(deg, s);
  }
  return deg;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (static_cast<int>(m.size()) != nvars_) throw DomainError("monomial has the wrong number of variables");
  terms_.add(m, c);
}

Poly Poly::derivative(int var) const {
  Poly out(nvars_);
  const auto v = static_cast<std::size_t>(var);
  for (auto& [m, c] : terms_) {
    if (m[v] == 0) continue;
    Monomial d = m;
    --d[v];
    out.terms_.add(d, c * m[v]);
  }
  return out;
}

Rational Poly::evaluate(std::span<const Rational> point) const {
  if (static_cast<int>(point.size()) != nvars_) throw DomainError("evaluation point has the wrong dimension");
  Rational sum = 0;
  for (auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (int e = 0; e < m[i]; ++e) t *= point[i];
    sum += t;
  }
  return sum;
}

std::string Poly::to_string() const {
  return format_lincomb(terms_, [](const Monomial& m) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += "y" + std::to_string(i + 1);
      if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? std::string("1") : s;
  });
}

Poly& Poly::operator+=(const Poly& o) {
  terms_ += o.terms_;
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  terms_ -= o.terms_;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out(std::max(a.nvars_, b.nvars_));
  for (auto& [ma, ca] : a.terms_) {
    for (auto& [mb, cb] : b.terms_) {
      Monomial m = ma;
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
      out.terms_.add(m, ca * cb);
    }
  }
  return out;
}

Poly operator*(const Rational& c, Poly a) {
  a.terms_ *= c;
  return a;
}

// ---------------------------------------------------------------------------
// Vector fields

PolyVectorField PolyVectorField::zero(int d) {
  return PolyVectorField{std::vector<Poly>(static_cast<std::size_t>(d), Poly(d))};
}

PolyVectorField& PolyVectorField::operator+=(const PolyVectorField& o) {
  if (o.dim() != dim()) throw DomainError("vector fields of different dimensions");
  for (std::size_t i = 0; i < components.size(); ++i) components[i] += o.components[i];
  return *this;
}

PolyVectorField operator*(const Rational& c, PolyVectorField f) {
  for (auto& p : f.components) p = c * p;
  return f;
}

PolyVectorField operator*(const Poly& s, PolyVectorField f) {
  for (auto& p : f.components) p = s * p;
  return f;
}

PolyVectorField random_polynomial_field(int dim, int degree, std::uint32_t seed) {
  if (dim < 1 || degree < 0) throw DomainError("random_polynomial_field: bad dimension or degree");
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coeff(-3, 3);
  // all monomials of total degree <= degree, in a fixed order
  std::vector<Monomial> monomials;
  Monomial cur(static_cast<std::size_t>(dim), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == cur.size()) {
      monomials.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[i] = e;
      rec(i + 1, left - e);
    }
    cur[i] = 0;
  };
  rec(0, degree);
  PolyVectorField f = PolyVectorField::zero(dim);
  for (auto& p : f.components)
    for (auto& m : monomials) p.add_term(m, coeff(rng));
  return f;
}

PolyVectorField linear_field(const std::vector<std::vector<Rational>>& a) {
  const int d = static_cast<int>(a.size());
  PolyVectorField f = PolyVectorField::zero(d);
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(a[static_cast<std::size_t>(i)].size()) != d) throw DomainError("linear_field: matrix is not square");
    for (int j = 0; j < d; ++j)
      f.components[static_cast<std::size_t>(i)] += a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * Poly::variable(d, j);
  }
  return f;
}

Poly divergence(const PolyVectorField& f) {
  Poly out(f.dim());
  for (int a = 0; a < f.dim(); ++a) out += f.components[static_cast<std::size_t>(a)].derivative(a);
  return out;
}

Poly lie_derivative(const PolyVectorField& f, const Poly& p) {
  Poly out(f.dim());
  for (int a = 0; a < f.dim(); ++a) out += f.components[static_cast<std::size_t>(a)] * p.derivative(a);
  return out;
}

PolyVectorField jacobian_apply(const PolyVectorField& f, const PolyVectorField& g) {
  PolyVectorField out = PolyVectorField::zero(f.dim());
  for (std::size_t c = 0; c < f.components.size(); ++c) out.components[c] = lie_derivative(g, f.components[c]);
  return out;
}

// ---------------------------------------------------------------------------
// Elementary differentials

namespace {

// Partial derivatives of the components of f, memoised by sorted index list.
class DerivativeTable {
 public:
  explicit DerivativeTable(const PolyVectorField& f) : f_(f) {}

  const Poly& get(int component, std::vector<int> indices) {
    std::sort(indices.begin(), indices.end());
    auto key = std::make_pair(component, indices);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Poly p = f_.components.at(static_cast<std::size_t>(component));
    for (int i : indices) p = p.derivative(i);
    return cache_.emplace(std::move(key), std::move(p)).first->second;
  }

 private:
  const PolyVectorField& f_;
  std::map<std::pair<int, std::vector<int>>, Poly> cache_;
};

// Sums over every index assignment of a functional graph; out[v] < 0 marks
// the free root. Returns one polynomial per value of the root index, or a
// single scalar when there is no root.
std::vector<Poly> contract(const std::vector<int>& out, const PolyVectorField& f) {
  const int d = f.dim();
  const std::size_t m = out.size();
  std::size_t root = m;
  for (std::size_t v = 0; v < m; ++v)
    if (out[v] < 0) root = v;
  std::vector<std::vector<std::size_t>> in(m);
  for (std::size_t v = 0; v < m; ++v)
    if (out[v] >= 0) in[static_cast<std::size_t>(out[v])].push_back(v);

  DerivativeTable table(f);
  std::vector<Poly> result(root == m ? 1 : static_cast<std::size_t>(d), Poly(d));
  std::vector<int> idx(m, 0);
  while (true) {
    Poly term = Poly::constant(d, 1);
    for (std::size_t v = 0; v < m && !term.is_zero(); ++v) {
      std::vector<int> ders;
      for (std::size_t u : in[v]) ders.push_back(idx[u]);
      term = term * table.get(idx[v], ders);
    }
    result[root == m ? 0 : static_cast<std::size_t>(idx[root])] += term;

    std::size_t k = 0;
    while (k < m && ++idx[k] == d) idx[k++] = 0;
    if (k == m) break;
  }
  return result;
}

template <class T>
std::vector<int> local_out_map(const T& x, const std::vector<Label>& out_labels) {
  const auto& labels = x.labels();
  std::vector<int> out;
  for (Label o : out_labels) {
    if (o == kNoLabel) {
      out.push_back(-1);
    } else {
      out.push_back(static_cast<int>(std::lower_bound(labels.begin(), labels.end(), o) - labels.begin()));
    }
  }
  return out;
}

}  // namespace

PolyVectorField elementary_differential_tree(const UnlabelledKey& tau, const PolyVectorField& f) {
  if (code_kind(tau.code) != UnlabelledKind::Tree) throw DomainError("not a tree code: " + tau.code);
  const RootedTree t = tree_from_code(tau.code);
  const int d = f.dim();
  DerivativeTable table(f);
  std::function<PolyVectorField(Label)> rec = [&](Label v) {
    std::vector<PolyVectorField> kids;
    for (Label c : t.children(v)) kids.push_back(rec(c));
    PolyVectorField out = PolyVectorField::zero(d);
    std::vector<int> idx(kids.size(), 0);
    while (true) {
      Poly weight = Poly::constant(d, 1);
      for (std::size_t i = 0; i < kids.size(); ++i) weight = weight * kids[i].components[static_cast<std::size_t>(idx[i])];
      if (!weight.is_zero())
        for (int c = 0; c < d; ++c) out.components[static_cast<std::size_t>(c)] += table.get(c, idx) * weight;
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == d) idx[k++] = 0;
      if (k == idx.size()) break;
    }
    return out;
  };
  return rec(t.root());
}

PolyVectorField graph_differential(const RootedTree& t, const PolyVectorField& f) {
  return PolyVectorField{contract(local_out_map(t, t.parent_array()), f)};
}

ScalarPoly graph_differential(const Aroma& a, const PolyVectorField& f) {
  return contract(local_out_map(a, a.successor_array()), f).front();
}

ScalarPoly elementary_differential_aroma(const UnlabelledKey& alpha, const PolyVectorField& f) {
  auto kind = code_kind(alpha.code);
  if (kind != UnlabelledKind::Aroma && kind != UnlabelledKind::AromaPlus) throw DomainError("not an aroma code: " + alpha.code);
  return graph_differential(aroma_from_code(alpha.code), f);
}

PolyVectorField elementary_differential_aromatic_tree(const AromaticForest& forest, const PolyVectorField& f) {
  if (forest.trees.size() != 1) throw DomainError("an aromatic tree has exactly one tree component");
  PolyVectorField out = graph_differential(forest.trees.front(), f);
  for (auto& a : forest.aromas) out = graph_differential(a, f) * out;
  return out;
}

bool check_divergence_identity(const UnlabelledKey& tau, const PolyVectorField& f) {
  Poly lhs = divergence(elementary_differential_tree(tau, f));
  const RootedTree t = tree_from_code(tau.code);
  Poly rhs(f.dim());
  for (Label v : t.labels()) rhs += graph_differential(Aroma::close(t, v), f);
  return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Series

BSeriesCoefficients parse_coefficients_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("coefficient file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw DomainError("coefficient file must be a JSON object keyed by order");
  BSeriesCoefficients b;
  for (auto& [key, entries] : j.items()) {
    int order = 0;
    try {
      order = std::stoi(key);
    } catch (const std::exception&) {
      throw DomainError("coefficient order is not an integer: " + key);
    }
    if (order < 1) throw DomainError("coefficient order must be >= 1");
    b.order = std::max(b.order, order);
    for (auto& e : entries) {
      std::string code = e.at("tree").get<std::string>();
      if (code_kind(code) != UnlabelledKind::Tree || static_cast<int>(code_vertex_count(code)) != order)
        throw DomainError("tree " + code + " does not have order " + key);
      const auto& v = e.at("value");
      Rational q = v.is_string() ? parse_rational(v.get<std::string>()) : Rational(v.get<long>());
      b.value[code] = q;
    }
  }
  return b;
}

std::string coefficients_to_json(const BSeriesCoefficients& b) {
  nlohmann::json j = nlohmann::json::object();
  for (int order = 1; order <= b.order; ++order) j[std::to_string(order)] = nlohmann::json::array();
  for (auto& [code, q] : b.value)
    j[std::to_string(code_vertex_count(code))].push_back({{"tree", code}, {"value", to_string(q)}});
  return j.dump(2);
}

std::vector<PolyVectorField> modified_field(const BSeriesCoefficients& b, const PolyVectorField& f) {
  std::vector<PolyVectorField> out;
  for (int order = 1; order <= b.order; ++order) {
    PolyVectorField term = PolyVectorField::zero(f.dim());
    for (auto& key : enumerate_unlabelled(UnlabelledKind::Tree, order)) {
      auto it = b.value.find(key.code);
      if (it == b.value.end()) throw IncompleteCoefficientsError("missing coefficient for tree " + key.code);
      if (it->second == 0) continue;
      Rational w = it->second / Rational(symmetry_order(key));
      term += w * elementary_differential_tree(key, f);
    }
    out.push_back(std::move(term));
  }
  return out;
}

std::map<int, LinComb<UnlabelledKey>> volume_obstruction(const BSeriesCoefficients& b) {
  std::map<int, LinComb<UnlabelledKey>> out;
  for (int order = 2; order <= b.order; ++order) {
    SparseMatrix m = unlabelled_div0_matrix(order);
    SparseVec x;
    for (std::size_t j = 0; j < m.col_keys.size(); ++j) {
      auto it = b.value.find(m.col_keys[j]);
      if (it == b.value.end() || it->second == 0) continue;
      x[j] = it->second / Rational(symmetry_order({m.col_keys[j]}));
    }
    LinComb<UnlabelledKey> y;
    for (auto& [i, c] : m.apply(x)) y.add({m.row_keys[i]}, c);
    if (!y.is_zero()) out[order] = std::move(y);
  }
  return out;
}

}  // namespace aromatica
