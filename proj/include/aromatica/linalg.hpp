#pragma once

// Exact sparse linear algebra over the rationals.

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aromatica/errors.hpp"
#include "aromatica/lincomb.hpp"
#include "aromatica/rational.hpp"

namespace aromatica {

using SparseVec = std::map<std::size_t, Rational>;

/// Ordered duplicate-free list of keys with reverse lookup.
template <class Key>
class BasisIndex {
 public:
  BasisIndex() = default;
  explicit BasisIndex(std::vector<Key> keys) : keys_(std::move(keys)) {
    for (std::size_t i = 0; i < keys_.size(); ++i)
      if (!lookup_.emplace(keys_[i], i).second) throw BasisMismatchError("duplicate key in basis");
  }

  std::size_t size() const { return keys_.size(); }
  const Key& operator[](std::size_t i) const { return keys_[i]; }
  const std::vector<Key>& keys() const { return keys_; }

  std::optional<std::size_t> find(const Key& k) const {
    auto it = lookup_.find(k);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(const Key& k) const {
    auto it = lookup_.find(k);
    if (it == lookup_.end()) throw BasisMismatchError("key missing from basis index");
    return it->second;
  }

 private:
  std::vector<Key> keys_;
  std::map<Key, std::size_t> lookup_;
};

class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), columns_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void add(std::size_t r, std::size_t c, const Rational& v);
  Rational at(std::size_t r, std::size_t c) const;
  const SparseVec& column(std::size_t c) const { return columns_[c]; }
  void set_column(std::size_t c, SparseVec v);

  std::size_t nonzeros() const;
  bool is_zero() const { return nonzeros() == 0; }

  SparseMatrix transpose() const;
  SparseVec apply(const SparseVec& x) const;

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) = default;

  static SparseMatrix identity(std::size_t n, const Rational& scale = 1);

  /// Basis keys carried along for dumps; empty when unlabelled.
  std::vector<std::string> row_keys;
  std::vector<std::string> col_keys;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<SparseVec> columns_;
};

/// Column j is the coefficient vector of image(domain[j]) in the codomain basis.
template <class In, class Out, class F>
SparseMatrix matrix_of_map(const BasisIndex<In>& domain, const BasisIndex<Out>& codomain, F&& image) {
  SparseMatrix m(codomain.size(), domain.size());
  for (std::size_t j = 0; j < domain.size(); ++j) {
    LinComb<Out> img = image(domain[j]);
    for (const auto& [key, c] : img) {
      auto i = codomain.find(key);
      if (!i) throw BasisMismatchError("image of domain element " + std::to_string(j) + " leaves the codomain basis");
      m.add(*i, j, c);
    }
  }
  return m;
}

/// Incrementally maintained echelon basis of a subspace of Q^N, using
/// fraction-free integer row operations. Each stored vector has its pivot at
/// its smallest index.
class EchelonSpace {
 public:
  /// Returns true iff `v` was independent of the current span (and is added).
  bool insert(const SparseVec& v);
  bool contains(const SparseVec& v) const;
  std::size_t dim() const { return basis_.size(); }

  /// Reduced echelon basis: unique for the subspace, integer entries with
  /// content 1 and positive leading entry.
  std::vector<SparseVec> canonical_basis() const;

 private:
  using IntVec = std::vector<std::pair<std::size_t, Integer>>;
  IntVec reduce(IntVec v) const;
  std::map<std::size_t, IntVec> basis_;  // pivot -> vector
};

std::size_t rank(const SparseMatrix& m);

/// Kernel vectors over the column index, reduced echelon form with integer
/// entries of content 1 and positive first entry.
std::vector<SparseVec> kernel_basis(const SparseMatrix& m);

/// Canonical reduced echelon basis of the column space.
std::vector<SparseVec> image_basis(const SparseMatrix& m);

/// Reduced echelon form of span(vectors) with integer content-1 rows.
std::vector<SparseVec> canonical_span(const std::vector<SparseVec>& vectors);

/// Trace of a linear map restricted to an invariant subspace, given the
/// subspace in reduced echelon form.
Rational trace_on_subspace(const std::vector<SparseVec>& reduced_basis,
                           const std::function<SparseVec(const SparseVec&)>& apply);

// ---------------------------------------------------------------------------
// Chain complexes (homological grading, d_k : C_k -> C_{k-1})

/// Signed permutation action on a graded basis: basis element `index` in
/// `degree` is sent to (image index, sign). `perm[i]` is the image of label i+1.
using BasisAction =
    std::function<std::pair<std::size_t, int>(int degree, std::size_t index, std::span<const int> perm)>;

struct ChainComplex {
  std::map<int, std::vector<std::string>> basis;  // degree -> basis keys
  std::map<int, SparseMatrix> differential;       // degree k -> d_k
  BasisAction action;                             // optional

  std::size_t dim(int degree) const;
  /// d_k or a zero matrix of the right shape.
  SparseMatrix d(int degree) const;

  /// Throws ComplexInvalidError naming a basis element with d(d(x)) != 0.
  void validate() const;
};

std::map<int, std::size_t> homology_dimensions(const ChainComplex& c);

/// Trace of the permutation action on H_degree.
Rational induced_action_trace(const ChainComplex& c, int degree, std::span<const int> perm);

/// Precomputes image subspaces around one degree so the trace of many
/// permutations can be taken cheaply.
class HomologyTrace {
 public:
  HomologyTrace(const ChainComplex& c, int degree);
  Rational operator()(std::span<const int> perm) const;
  std::size_t homology_dim() const { return hdim_; }

 private:
  SparseVec act(int degree, const SparseVec& v, std::span<const int> perm) const;
  const ChainComplex& c_;
  int degree_;
  std::vector<SparseVec> incoming_;  // im d_{k+1} in C_k
  std::vector<SparseVec> outgoing_;  // im d_k in C_{k-1}
  std::size_t hdim_ = 0;
};

/// Text dump: header with dimensions and basis keys, then sorted "row col p/q".
void dump_matrix(std::ostream& os, const SparseMatrix& m, const std::string& name);

}  // namespace aromatica
