#include "aromatica/linalg.hpp"

#include <algorithm>

namespace aromatica {

// ---------------------------------------------------------------------------
// SparseMatrix

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_) throw BasisMismatchError("matrix index out of range");
  if (v == 0) return;
  auto& col = columns_[c];
  auto [it, inserted] = col.try_emplace(r, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) col.erase(it);
  }
}

Rational SparseMatrix::at(std::size_t r, std::size_t c) const {
  auto it = columns_[c].find(r);
  return it == columns_[c].end() ? Rational(0) : it->second;
}

void SparseMatrix::set_column(std::size_t c, SparseVec v) {
  for (auto it = v.begin(); it != v.end();) {
    if (it->first >= rows_) throw BasisMismatchError("matrix row out of range");
    it = it->second == 0 ? v.erase(it) : std::next(it);
  }
  columns_[c] = std::move(v);
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (auto& c : columns_) n += c.size();
  return n;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  for (std::size_t c = 0; c < cols_; ++c)
    for (auto& [r, v] : columns_[c]) t.columns_[r].emplace(c, v);
  t.row_keys = col_keys;
  t.col_keys = row_keys;
  return t;
}

SparseVec SparseMatrix::apply(const SparseVec& x) const {
  SparseVec out;
  for (auto& [c, xc] : x) {
    if (c >= cols_) throw BasisMismatchError("vector index out of range");
    for (auto& [r, v] : columns_[c]) {
      auto [it, inserted] = out.try_emplace(r, v * xc);
      if (!inserted) {
        it->second += v * xc;
        if (it->second == 0) out.erase(it);
      }
    }
  }
  return out;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols_ != b.rows_) throw BasisMismatchError("matrix product: inner dimensions differ");
  SparseMatrix out(a.rows_, b.cols_);
  for (std::size_t j = 0; j < b.cols_; ++j) out.columns_[j] = a.apply(b.columns_[j]);
  out.row_keys = a.row_keys;
  out.col_keys = b.col_keys;
  return out;
}

namespace {
SparseMatrix combine(const SparseMatrix& a, const SparseMatrix& b, int sign) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw BasisMismatchError("matrix sum: shapes differ");
  SparseMatrix out = a;
  for (std::size_t c = 0; c < b.cols(); ++c)
    for (auto& [r, v] : b.column(c)) out.add(r, c, sign * v);
  return out;
}
}  // namespace

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, 1); }
SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, -1); }

SparseMatrix SparseMatrix::identity(std::size_t n, const Rational& scale) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.add(i, i, scale);
  return m;
}

// ---------------------------------------------------------------------------
// Fraction-free echelon machinery

namespace {

using IntVec = std::vector<std::pair<std::size_t, Integer>>;

// Clears denominators; the result is not divided by its content.
IntVec to_integer(const SparseVec& v) {
  Integer den = 1;
  for (auto& [i, q] : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  IntVec out;
  out.reserve(v.size());
  for (auto& [i, q] : v) {
    if (q == 0) continue;
    out.emplace_back(i, q.get_num() * (den / q.get_den()));
  }
  return out;
}

SparseVec to_rational(const IntVec& v) {
  SparseVec out;
  for (auto& [i, z] : v) out.emplace_hint(out.end(), i, Rational(z));
  return out;
}

// a*x - b*y
IntVec axpby(const Integer& a, const IntVec& x, const Integer& b, const IntVec& y) {
  IntVec out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  Integer t;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -b * y[j].second);
      ++j;
    } else {
      t = a * x[i].second - b * y[j].second;
      if (t != 0) out.emplace_back(x[i].first, t);
      ++i;
      ++j;
    }
  }
  return out;
}

Integer content(const IntVec& v) {
  Integer g = 0;
  for (auto& [i, z] : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

void divide_exact(IntVec& v, const Integer& g) {
  if (g == 0 || g == 1) return;
  for (auto& [i, z] : v) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
}

// Content 1, leading entry positive.
void normalize(IntVec& v) {
  if (v.empty()) return;
  divide_exact(v, content(v));
  if (v.front().second < 0)
    for (auto& [i, z] : v) z = -z;
}

Integer entry_at(const IntVec& v, std::size_t idx) {
  auto it = std::lower_bound(v.begin(), v.end(), idx, [](const auto& e, std::size_t k) { return e.first < k; });
  if (it == v.end() || it->first != idx) return 0;
  return it->second;
}

// Reduced row echelon form of echelon vectors keyed by pivot.
std::vector<SparseVec> reduce_fully(std::map<std::size_t, IntVec> rows) {
  std::vector<std::size_t> pivots;
  for (auto& [p, v] : rows) pivots.push_back(p);
  // eliminate each pivot from the rows above it, largest pivot first
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    const IntVec& u = rows[*it];
    const Integer& lead = u.front().second;
    for (auto& [q, w] : rows) {
      if (q >= *it) break;
      Integer c = entry_at(w, *it);
      if (c == 0) continue;
      w = axpby(lead, w, c, u);
      normalize(w);
    }
  }
  std::vector<SparseVec> out;
  out.reserve(rows.size());
  for (auto& [p, v] : rows) {
    normalize(v);
    out.push_back(to_rational(v));
  }
  return out;
}

}  // namespace

EchelonSpace::IntVec EchelonSpace::reduce(IntVec v) const {
  std::size_t pos = 0;
  while (pos < v.size()) {
    auto it = basis_.find(v[pos].first);
    if (it == basis_.end()) {
      ++pos;
      continue;
    }
    const IntVec& b = it->second;
    Integer c = v[pos].second;
    v = axpby(b.front().second, v, c, b);
    divide_exact(v, content(v));
  }
  return v;
}

bool EchelonSpace::insert(const SparseVec& v) {
  IntVec r = reduce(to_integer(v));
  if (r.empty()) return false;
  normalize(r);
  std::size_t pivot = r.front().first;
  basis_.emplace(pivot, std::move(r));
  return true;
}

bool EchelonSpace::contains(const SparseVec& v) const { return reduce(to_integer(v)).empty(); }

std::vector<SparseVec> EchelonSpace::canonical_basis() const { return reduce_fully(basis_); }

std::size_t rank(const SparseMatrix& m) {
  EchelonSpace space;
  for (std::size_t j = 0; j < m.cols(); ++j) space.insert(m.column(j));
  return space.dim();
}

std::vector<SparseVec> kernel_basis(const SparseMatrix& m) {
  // Left-looking elimination over columns, tracking each reduced column as a
  // combination of the original ones.
  struct Entry {
    IntVec vec;
    IntVec combo;
  };
  std::map<std::size_t, Entry> pivots;
  std::map<std::size_t, IntVec> kernel;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const SparseVec& col = m.column(j);
    Integer den = 1;
    for (auto& [i, q] : col) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    IntVec v = to_integer(col);  // den * col
    IntVec combo{{j, den}};
    std::size_t pos = 0;
    while (pos < v.size()) {
      auto it = pivots.find(v[pos].first);
      if (it == pivots.end()) {
        ++pos;
        continue;
      }
      const Entry& b = it->second;
      Integer a = b.vec.front().second;
      Integer c = v[pos].second;
      v = axpby(a, v, c, b.vec);
      combo = axpby(a, combo, c, b.combo);
      Integer g = content(v);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), content(combo).get_mpz_t());
      divide_exact(v, g);
      divide_exact(combo, g);
    }
    if (v.empty()) {
      normalize(combo);
      kernel.emplace(j, std::move(combo));
    } else {
      std::size_t p = v.front().first;
      pivots.emplace(p, Entry{std::move(v), std::move(combo)});
    }
  }
  std::vector<SparseVec> vecs;
  for (auto& [j, c] : kernel) vecs.push_back(to_rational(c));
  return canonical_span(vecs);
}

std::vector<SparseVec> image_basis(const SparseMatrix& m) {
  EchelonSpace space;
  for (std::size_t j = 0; j < m.cols(); ++j) space.insert(m.column(j));
  return space.canonical_basis();
}

std::vector<SparseVec> canonical_span(const std::vector<SparseVec>& vectors) {
  EchelonSpace space;
  for (auto& v : vectors) space.insert(v);
  return space.canonical_basis();
}

Rational trace_on_subspace(const std::vector<SparseVec>& reduced_basis,
                           const std::function<SparseVec(const SparseVec&)>& apply) {
  Rational tr = 0;
  for (auto& w : reduced_basis) {
    if (w.empty()) continue;
    auto [pivot, lead] = *w.begin();
    SparseVec img = apply(w);
    auto it = img.find(pivot);
    if (it != img.end()) tr += it->second / lead;
  }
  return tr;
}

// ---------------------------------------------------------------------------
// Chain complexes

std::size_t ChainComplex::dim(int degree) const {
  auto it = basis.find(degree);
  return it == basis.end() ? 0 : it->second.size();
}

SparseMatrix ChainComplex::d(int degree) const {
  auto it = differential.find(degree);
  if (it != differential.end()) return it->second;
  return SparseMatrix(dim(degree - 1), dim(degree));
}

void ChainComplex::validate() const {
  for (auto& [k, dk] : differential) {
    if (dk.rows() != dim(k - 1) || dk.cols() != dim(k))
      throw StructuralError("differential d_" + std::to_string(k) + " has the wrong shape");
  }
  for (auto& [k, dk] : differential) {
    auto below = differential.find(k - 1);
    if (below == differential.end()) continue;
    SparseMatrix dd = below->second * dk;
    for (std::size_t j = 0; j < dd.cols(); ++j) {
      if (!dd.column(j).empty()) {
        const auto& keys = basis.at(k);
        throw ComplexInvalidError("d∘d != 0 in degree " + std::to_string(k),
                                  j < keys.size() ? keys[j] : std::to_string(j));
      }
    }
  }
}

std::map<int, std::size_t> homology_dimensions(const ChainComplex& c) {
  c.validate();
  std::map<int, std::size_t> ranks;
  for (auto& [k, dk] : c.differential) ranks[k] = rank(dk);
  std::map<int, std::size_t> out;
  for (auto& [k, keys] : c.basis) {
    std::size_t r_out = ranks.count(k) ? ranks[k] : 0;
    std::size_t r_in = ranks.count(k + 1) ? ranks[k + 1] : 0;
    out[k] = keys.size() - r_out - r_in;
  }
  return out;
}

HomologyTrace::HomologyTrace(const ChainComplex& c, int degree) : c_(c), degree_(degree) {
  if (!c.action) throw DomainError("complex carries no permutation action");
  c.validate();
  incoming_ = image_basis(c.d(degree + 1));
  outgoing_ = image_basis(c.d(degree));
  hdim_ = c.dim(degree) - incoming_.size() - outgoing_.size();
}

SparseVec HomologyTrace::act(int degree, const SparseVec& v, std::span<const int> perm) const {
  SparseVec out;
  for (auto& [i, q] : v) {
    auto [j, s] = c_.action(degree, i, perm);
    auto [it, inserted] = out.try_emplace(j, s * q);
    if (!inserted) {
      it->second += s * q;
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

Rational HomologyTrace::operator()(std::span<const int> perm) const {
  Rational tr = 0;
  for (std::size_t i = 0; i < c_.dim(degree_); ++i) {
    auto [j, s] = c_.action(degree_, i, perm);
    if (j == i) tr += s;
  }
  tr -= trace_on_subspace(incoming_, [&](const SparseVec& v) { return act(degree_, v, perm); });
  tr -= trace_on_subspace(outgoing_, [&](const SparseVec& v) { return act(degree_ - 1, v, perm); });
  return tr;
}

Rational induced_action_trace(const ChainComplex& c, int degree, std::span<const int> perm) {
  return HomologyTrace(c, degree)(perm);
}

void dump_matrix(std::ostream& os, const SparseMatrix& m, const std::string& name) {
  os << "# matrix " << name << " " << m.rows() << " " << m.cols() << "\n";
  os << "# rows\n";
  for (std::size_t i = 0; i < m.row_keys.size(); ++i) os << i << " " << m.row_keys[i] << "\n";
  os << "# cols\n";
  for (std::size_t j = 0; j < m.col_keys.size(); ++j) os << j << " " << m.col_keys[j] << "\n";
  os << "# entries\n";
  std::vector<std::tuple<std::size_t, std::size_t, std::string>> triples;
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (auto& [i, v] : m.column(j)) triples.emplace_back(i, j, v.get_num().get_str() + "/" + v.get_den().get_str());
  std::sort(triples.begin(), triples.end());
  for (auto& [i, j, v] : triples) os << i << " " << j << " " << v << "\n";
}

}  // namespace aromatica
