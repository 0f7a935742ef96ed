#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <string>

#include "polyode/errors.hpp"
#include "polyode/upoly.hpp"

namespace polyode {

/// A coefficient of the equation: a polynomial of degree at most one in
/// the single unknown parameter t, over the scalar ring K.
template <class K>
using Scalar = UPoly<K>;

/// The unknown parameter t as a Scalar.
template <class K>
Scalar<K> unknown() {
  return Scalar<K>::variable();
}

/// c0 + c1*t
template <class K>
Scalar<K> affine(K c0, K c1) {
  return Scalar<K>({std::move(c0), std::move(c1)});
}

/// Coefficients of
///
///   (a3[0] x^3 + a3[1] x^2 + a3[2] x + a3[3]) y''
///     + (a2[0] x^2 + a2[1] x + a2[2]) y' - (tau[0] x + tau[1]) y = 0.
///
/// The zeroth-order term carries a minus sign; adapters whose source
/// equation has "+ (...) y" negate tau.
template <class K>
class BasicEquationSpec {
 public:
  using scalar_ring = K;

  BasicEquationSpec(std::array<Scalar<K>, 4> a3, std::array<Scalar<K>, 3> a2,
                    std::array<Scalar<K>, 2> tau)
      : a3_(std::move(a3)), a2_(std::move(a2)), tau_(std::move(tau)) {
    bool any = false;
    for (const auto& s : a3_) any = any || !s.is_zero();
    for (const auto& s : a2_) any = any || !s.is_zero();
    if (!any) throw NotSecondOrder();
    auto check = [](const Scalar<K>& s) {
      if (s.degree() > 1)
        throw PreconditionError("equation coefficients must be affine in the unknown");
    };
    for (const auto& s : a3_) check(s);
    for (const auto& s : a2_) check(s);
    for (const auto& s : tau_) check(s);
  }

  const Scalar<K>& a3(std::size_t i) const { return a3_.at(i); }
  const Scalar<K>& a2(std::size_t i) const { return a2_.at(i); }
  const Scalar<K>& tau(std::size_t i) const { return tau_.at(i); }
  const std::array<Scalar<K>, 4>& a3() const noexcept { return a3_; }
  const std::array<Scalar<K>, 3>& a2() const noexcept { return a2_; }
  const std::array<Scalar<K>, 2>& tau() const noexcept { return tau_; }

  /// True when no coefficient depends on the unknown.
  bool is_numeric() const {
    for (const auto& s : a3_)
      if (!s.is_constant()) return false;
    for (const auto& s : a2_)
      if (!s.is_constant()) return false;
    for (const auto& s : tau_)
      if (!s.is_constant()) return false;
    return true;
  }

  /// The equation with t replaced by a value.
  BasicEquationSpec substitute(const K& value) const {
    auto at = [&](const Scalar<K>& s) { return Scalar<K>(s(value)); };
    return BasicEquationSpec({at(a3_[0]), at(a3_[1]), at(a3_[2]), at(a3_[3])},
                             {at(a2_[0]), at(a2_[1]), at(a2_[2])}, {at(tau_[0]), at(tau_[1])});
  }

  /// y'' coefficient as a polynomial in x (numeric equations only).
  UPoly<K> p3() const { return in_x({a3_[3], a3_[2], a3_[1], a3_[0]}); }
  /// y' coefficient.
  UPoly<K> p2() const { return in_x({a2_[2], a2_[1], a2_[0]}); }
  /// tau[0] x + tau[1]; the equation reads p3 y'' + p2 y' - p1 y = 0.
  UPoly<K> p1() const { return in_x({tau_[1], tau_[0]}); }

  /// Multiplies every coefficient by a nonzero scalar.
  BasicEquationSpec scaled(const K& c) const {
    auto s = [&](const Scalar<K>& v) { return v * c; };
    return BasicEquationSpec({s(a3_[0]), s(a3_[1]), s(a3_[2]), s(a3_[3])},
                             {s(a2_[0]), s(a2_[1]), s(a2_[2])}, {s(tau_[0]), s(tau_[1])});
  }

  friend bool operator==(const BasicEquationSpec&, const BasicEquationSpec&) = default;

 private:
  static K constant_of(const Scalar<K>& s) {
    if (!s.is_constant())
      throw PreconditionError("equation still depends on the unknown parameter");
    return s[0];
  }
  static UPoly<K> in_x(std::initializer_list<Scalar<K>> ascending) {
    std::vector<K> c;
    c.reserve(ascending.size());
    for (const auto& s : ascending) c.push_back(constant_of(s));
    return UPoly<K>(std::move(c));
  }

  std::array<Scalar<K>, 4> a3_;
  std::array<Scalar<K>, 3> a2_;
  std::array<Scalar<K>, 2> tau_;
};

using EquationSpec = BasicEquationSpec<Rational>;

/// Residual P3 y'' + P2 y' - P1 y of a polynomial y (numeric equations).
template <class K>
UPoly<K> residual(const BasicEquationSpec<K>& eq, const UPoly<K>& y) {
  auto dy = derivative(y);
  return eq.p3() * derivative(dy) + eq.p2() * dy - eq.p1() * y;
}

}  // namespace polyode
