#pragma once

// Elementary differentials of polynomial vector fields indexed by trees,
// aromas and aromatic trees, with exact rational coefficients.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "aromatica/lincomb.hpp"
#include "aromatica/rational.hpp"
#include "aromatica/species.hpp"

namespace aromatica {

using Monomial = std::vector<int>;  // exponent of y1..yd

class Poly {
 public:
  explicit Poly(int nvars = 0) : nvars_(nvars) {}
  static Poly constant(int nvars, const Rational& c);
  static Poly variable(int nvars, int index);  // y_{index+1}

  int nvars() const { return nvars_; }
  const LinComb<Monomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.is_zero(); }
  int degree() const;

  void add_term(const Monomial& m, const Rational& c);
  Poly derivative(int var) const;
  Rational evaluate(std::span<const Rational> point) const;
  std::string to_string() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& c, Poly a);
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

 private:
  int nvars_;
  LinComb<Monomial> terms_;
};

using ScalarPoly = Poly;

struct PolyVectorField {
  std::vector<Poly> components;

  int dim() const { return static_cast<int>(components.size()); }
  static PolyVectorField zero(int d);
  PolyVectorField& operator+=(const PolyVectorField& o);
  friend PolyVectorField operator+(PolyVectorField a, const PolyVectorField& b) { return a += b; }
  friend PolyVectorField operator*(const Rational& c, PolyVectorField f);
  friend PolyVectorField operator*(const Poly& s, PolyVectorField f);
  friend bool operator==(const PolyVectorField&, const PolyVectorField&) = default;
};

/// Dense field of total degree <= `degree`, coefficients uniform in -3..3.
PolyVectorField random_polynomial_field(int dim, int degree, std::uint32_t seed);
/// f(y) = A y.
PolyVectorField linear_field(const std::vector<std::vector<Rational>>& a);

Poly divergence(const PolyVectorField& f);
/// Directional derivative sum_a f^a d_a(p).
Poly lie_derivative(const PolyVectorField& f, const Poly& p);
/// f'(g): sum_a g^a d_a(f).
PolyVectorField jacobian_apply(const PolyVectorField& f, const PolyVectorField& g);

/// Recursive rule F(tau) = f^(k)(F(tau_1), ..., F(tau_k)).
PolyVectorField elementary_differential_tree(const UnlabelledKey& tau, const PolyVectorField& f);

/// General graph rule: a vertex v carries f^{a_v}, each arc u -> v applies
/// d_{a_u} to the factor of v, repeated indices are summed. Trees keep the
/// root index free.
PolyVectorField graph_differential(const RootedTree& t, const PolyVectorField& f);
ScalarPoly graph_differential(const Aroma& a, const PolyVectorField& f);

ScalarPoly elementary_differential_aroma(const UnlabelledKey& alpha, const PolyVectorField& f);
/// One tree plus a multiset of aromas: product of the aroma scalars times the tree field.
PolyVectorField elementary_differential_aromatic_tree(const AromaticForest& forest, const PolyVectorField& f);

/// Div(F(tau)) == sum over closings alpha of F(alpha), exactly.
bool check_divergence_identity(const UnlabelledKey& tau, const PolyVectorField& f);

// ---------------------------------------------------------------------------
// Series

struct BSeriesCoefficients {
  int order = 0;                          // truncation: trees with <= order vertices
  std::map<std::string, Rational> value;  // tree code -> b(tau)
};

/// {"1": [{"tree": "()", "value": "1"}], "2": [...], ...}; order is the largest key.
BSeriesCoefficients parse_coefficients_json(const std::string& text);
std::string coefficients_to_json(const BSeriesCoefficients& b);

/// Modified field sum_tau h^(|tau|-1)/sigma(tau) b(tau) F(tau); entry k is the
/// coefficient of h^k. Every tree up to the order must have a coefficient.
std::vector<PolyVectorField> modified_field(const BSeriesCoefficients& b, const PolyVectorField& f);

/// Reduced divergence of the series, order by order, over unlabelled aromas
/// with cycle length >= 2. Orders with zero obstruction are omitted; missing
/// coefficients count as zero.
std::map<int, LinComb<UnlabelledKey>> volume_obstruction(const BSeriesCoefficients& b);

}  // namespace aromatica
