#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>

#include "aromatica/rational.hpp"

namespace aromatica {

/// Formal finite linear combination of basis keys with exact rational
/// coefficients. Zero coefficients are never stored, so two combinations are
/// equal iff their term maps are equal.
template <class Key>
class LinComb {
 public:
  using Terms = std::map<Key, Rational>;

  LinComb() = default;
  explicit LinComb(Key key, Rational coeff = 1) { add(std::move(key), coeff); }

  void add(const Key& key, const Rational& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(key, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void add(const LinComb& other, const Rational& scale = 1) {
    if (scale == 0) return;
    for (const auto& [k, c] : other.terms_) add(k, c * scale);
  }

  Rational coefficient(const Key& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  LinComb& operator+=(const LinComb& o) { add(o); return *this; }
  LinComb& operator-=(const LinComb& o) { add(o, -1); return *this; }
  LinComb& operator*=(const Rational& s) {
    if (s == 0) { terms_.clear(); return *this; }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }
  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(const Rational& s, LinComb a) { return a *= s; }
  friend LinComb operator-(LinComb a) { return a *= Rational(-1); }
  friend bool operator==(const LinComb&, const LinComb&) = default;

  /// Applies a linear map given on basis keys.
  template <class Out, class F>
  LinComb<Out> map_linear(F&& f) const {
    LinComb<Out> out;
    for (const auto& [k, c] : terms_) out.add(f(k), c);
    return out;
  }

 private:
  Terms terms_;
};

/// Bilinear extension of `f(Key1, Key2) -> LinComb<Out>`.
template <class Out, class A, class B, class F>
LinComb<Out> bilinear(const LinComb<A>& a, const LinComb<B>& b, F&& f) {
  LinComb<Out> out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) out.add(f(ka, kb), ca * cb);
  return out;
}

/// Renders "c1*k1 + c2*k2 - ..." with unit coefficients elided; "0" when empty.
template <class Key, class Fmt>
std::string format_lincomb(const LinComb<Key>& x, Fmt&& fmt) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : x) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1) out += mag.get_str() + "*";
    out += fmt(k);
    first = false;
  }
  return out;
}

}  // namespace aromatica
