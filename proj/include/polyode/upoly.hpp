#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "polyode/errors.hpp"
#include "polyode/rational.hpp"

namespace polyode {

/// Coefficient ring requirements: an integral domain with exact division
/// of multiples. Rational satisfies it; so does UPoly<R> for any such R,
/// which is how extra symbolic parameters are carried (Q[k][t] etc).
template <class R>
concept ExactRing = std::regular<R> && requires(const R& a, const R& b) {
  { a + b } -> std::convertible_to<R>;
  { a - b } -> std::convertible_to<R>;
  { a * b } -> std::convertible_to<R>;
  { -a } -> std::convertible_to<R>;
  { is_zero(a) } -> std::convertible_to<bool>;
  { exact_div(a, b) } -> std::convertible_to<R>;
};

namespace detail {
template <class R>
bool coeff_is_zero(const R& c) {
  return is_zero(c);
}
}  // namespace detail

/// Dense univariate polynomial over R, coefficients in ascending powers.
///
/// The zero polynomial is the empty coefficient list, so structural
/// equality is mathematical equality.
template <class R>
class UPoly {
 public:
  using coefficient_type = R;

  /// degree() of the zero polynomial.
  static constexpr int kMinusInfinity = std::numeric_limits<int>::min();

  UPoly() = default;
  UPoly(R constant) {  // NOLINT(google-explicit-constructor)
    if (!detail::coeff_is_zero(constant)) coeffs_.push_back(std::move(constant));
  }
  template <std::integral I>
  explicit UPoly(I constant) : UPoly(R(constant)) {}
  explicit UPoly(std::vector<R> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }
  UPoly(std::initializer_list<R> coeffs) : coeffs_(coeffs) { normalize(); }

  /// c * x^k
  static UPoly monomial(R c, std::size_t k) {
    std::vector<R> v(k + 1);
    v[k] = std::move(c);
    return UPoly(std::move(v));
  }
  /// The indeterminate itself.
  static UPoly variable() { return monomial(R(1), 1); }

  int degree() const { return coeffs_.empty() ? kMinusInfinity : int(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const std::vector<R>& coefficients() const noexcept { return coeffs_; }

  /// Coefficient of x^i; zero beyond the degree.
  R operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : R(); }
  const R& leading() const {
    if (coeffs_.empty()) throw ZeroPolynomial();
    return coeffs_.back();
  }

  /// Horner evaluation at a point of any ring that R embeds into.
  template <class S = R>
  S operator()(const S& x) const {
    S acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + S(*it);
    return acc;
  }

  UPoly operator-() const {
    UPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  UPoly& operator+=(const UPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = coeffs_[i] + o.coeffs_[i];
    normalize();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = coeffs_[i] - o.coeffs_[i];
    normalize();
    return *this;
  }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<R> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (detail::coeff_is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        out[i + j] = out[i + j] + a.coeffs_[i] * b.coeffs_[j];
    }
    return UPoly(std::move(out));
  }
  friend UPoly operator*(UPoly a, const R& s) {
    for (auto& c : a.coeffs_) c = c * s;
    a.normalize();
    return a;
  }
  friend UPoly operator*(const R& s, UPoly a) { return std::move(a) * s; }

  friend bool operator==(const UPoly&, const UPoly&) = default;

 private:
  void normalize() {
    while (!coeffs_.empty() && detail::coeff_is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<R> coeffs_;
};

template <class R>
bool is_zero(const UPoly<R>& p) {
  return p.is_zero();
}

template <class R>
UPoly<R> derivative(const UPoly<R>& p) {
  const auto& c = p.coefficients();
  if (c.size() <= 1) return {};
  std::vector<R> out(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) out[i - 1] = c[i] * R(int(i));
  return UPoly<R>(std::move(out));
}

/// Divides every coefficient exactly by a scalar.
template <class R>
UPoly<R> exact_div_scalar(const UPoly<R>& p, const R& s) {
  if (is_zero(s)) throw DivideByZero();
  std::vector<R> out;
  out.reserve(p.coefficients().size());
  for (const auto& c : p.coefficients()) out.push_back(exact_div(c, s));
  return UPoly<R>(std::move(out));
}

/// Quotient r with p = q*r. Long division whose leading-coefficient
/// divisions are exact in R; valid over any integral domain when q | p.
template <class R>
UPoly<R> exact_div(const UPoly<R>& p, const UPoly<R>& q) {
  if (q.is_zero()) throw DivideByZero();
  if (p.is_zero()) return {};
  if (p.degree() < q.degree()) throw NotDivisible();
  std::vector<R> rem = p.coefficients();
  const auto& qc = q.coefficients();
  const std::size_t dq = qc.size() - 1;
  std::vector<R> quot(rem.size() - dq);
  for (std::size_t k = quot.size(); k-- > 0;) {
    const R& top = rem[k + dq];
    if (is_zero(top)) continue;
    R factor = exact_div(top, qc.back());
    for (std::size_t j = 0; j <= dq; ++j) rem[k + j] = rem[k + j] - factor * qc[j];
    if (!is_zero(rem[k + dq])) throw NotDivisible();
    quot[k] = std::move(factor);
  }
  for (std::size_t i = 0; i < dq; ++i)
    if (!is_zero(rem[i])) throw NotDivisible();
  return UPoly<R>(std::move(quot));
}

/// Euclidean division; coefficients must form a field.
template <class R>
std::pair<UPoly<R>, UPoly<R>> divmod(const UPoly<R>& p, const UPoly<R>& q) {
  if (q.is_zero()) throw DivideByZero();
  if (p.degree() < q.degree()) return {UPoly<R>(), p};
  std::vector<R> rem = p.coefficients();
  const auto& qc = q.coefficients();
  const std::size_t dq = qc.size() - 1;
  std::vector<R> quot(rem.size() - dq);
  for (std::size_t k = quot.size(); k-- > 0;) {
    R factor = rem[k + dq] / qc.back();
    if (is_zero(factor)) continue;
    for (std::size_t j = 0; j <= dq; ++j) rem[k + j] = rem[k + j] - factor * qc[j];
    quot[k] = std::move(factor);
  }
  rem.resize(dq);
  return {UPoly<R>(std::move(quot)), UPoly<R>(std::move(rem))};
}

template <class R>
UPoly<R> monic(const UPoly<R>& p) {
  if (p.is_zero()) return p;
  return exact_div_scalar(p, p.leading());
}

/// Monic gcd over a coefficient field; gcd(0, 0) = 0.
template <class R>
UPoly<R> gcd(UPoly<R> a, UPoly<R> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// p(q(x)).
template <class R>
UPoly<R> compose(const UPoly<R>& p, const UPoly<R>& q) {
  return p.template operator()<UPoly<R>>(q);
}

/// Applies f to every coefficient (f must map zero to zero or the result
/// is renormalized anyway).
template <class S, class R, class F>
UPoly<S> map_coefficients(const UPoly<R>& p, F&& f) {
  std::vector<S> out;
  out.reserve(p.coefficients().size());
  for (const auto& c : p.coefficients()) out.push_back(f(c));
  return UPoly<S>(std::move(out));
}

/// Largest k with x^k | p (0 for the zero polynomial).
template <class R>
std::size_t trailing_zeros(const UPoly<R>& p) {
  std::size_t k = 0;
  const auto& c = p.coefficients();
  while (k < c.size() && is_zero(c[k])) ++k;
  return k == c.size() ? 0 : k;
}

/// p / x^k, assuming x^k | p.
template <class R>
UPoly<R> shift_down(const UPoly<R>& p, std::size_t k) {
  const auto& c = p.coefficients();
  if (k >= c.size()) return {};
  return UPoly<R>(std::vector<R>(c.begin() + std::ptrdiff_t(k), c.end()));
}

/// Human-readable form, highest power first, e.g. "2*x^2 - 3".
template <class R>
std::string to_string(const UPoly<R>& p, const std::string& var = "x") {
  const auto& c = p.coefficients();
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (is_zero(c[i])) continue;
    std::string coef;
    bool negative = false;
    if constexpr (std::same_as<R, Rational>) {
      negative = c[i].sign() < 0;
      coef = (negative ? -c[i] : c[i]).to_string();
    } else {
      coef = "(" + to_string(c[i]) + ")";
    }
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const bool unit = coef == "1";
    if (i == 0) {
      os << coef;
    } else {
      if (!unit) os << coef << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

template <class R>
std::ostream& operator<<(std::ostream& os, const UPoly<R>& p) {
  return os << to_string(p);
}

using RPoly = UPoly<Rational>;

/// Rational content c > 0 (sign chosen so p/c has a positive leading
/// coefficient) such that p/c has coprime integer coefficients.
inline Rational content(const UPoly<Rational>& p) {
  if (p.is_zero()) return Rational(1);
  Integer g = 0;
  Integer l = 1;
  for (const auto& c : p.coefficients()) {
    Integer num = c.numerator();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
    Integer den = c.denominator();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
  }
  Rational c(g, l);
  return p.leading().sign() < 0 ? -c : c;
}

/// Content in Q[s] of a polynomial over Q[s]: the monic gcd of all
/// coefficients times a rational factor making the quotient primitive with
/// a positive leading-leading coefficient.
inline UPoly<Rational> content(const UPoly<UPoly<Rational>>& p) {
  if (p.is_zero()) return UPoly<Rational>(Rational(1));
  UPoly<Rational> g;
  for (const auto& c : p.coefficients()) g = gcd(g, c);
  std::vector<Rational> flat;
  for (const auto& c : p.coefficients()) {
    auto q = exact_div(c, g);
    for (const auto& r : q.coefficients()) flat.push_back(r);
  }
  // Appending the leading-leading coefficient makes the sign follow it.
  flat.push_back(exact_div(p.leading(), g).leading());
  Rational r = content(UPoly<Rational>(std::move(flat)));
  return g * r;
}

/// p divided by its content.
template <class R>
UPoly<R> primitive_part(const UPoly<R>& p) {
  if (p.is_zero()) return p;
  return exact_div_scalar(p, content(p));
}

/// True iff p = c*q for some nonzero scalar c of the coefficient ring's
/// fraction field, checked by cross-multiplication with leading coefficients.
template <class R>
bool proportional(const UPoly<R>& p, const UPoly<R>& q) {
  if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
  return p * q.leading() == q * p.leading();
}

}  // namespace polyode
