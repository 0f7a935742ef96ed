#pragma once

#include <stdexcept>
#include <vector>

#include "polyode/criteria.hpp"
#include "polyode/equation.hpp"
#include "polyode/errors.hpp"
#include "polyode/upoly.hpp"

namespace polyode {

// ---------------------------------------------------------------------------
// Davidson potential: after separating the asymptotics the radial factor
// satisfies x f'' - (2x^2 - 2(mu+1)) f' - (2mu+3-eps) x f = 0. Only even
// degrees N = 2n occur; n counts nodes.

template <class K>
BasicEquationSpec<K> davidson_spec(const Scalar<K>& mu, const Scalar<K>& eps) {
  using S = Scalar<K>;
  const S one(K(1));
  const S two(K(2));
  return BasicEquationSpec<K>({S(), S(), one, S()}, {-two, S(), two * (mu + one)},
                              {two * mu + S(K(3)) - eps, S()});
}

/// eps_n = 2 mu + 3 + 4 n
template <class K>
K davidson_eigenvalue(const K& mu, long n) {
  return K(2) * mu + K(3) + K(4 * n);
}

/// Polynomial degree of the n-node Davidson state.
inline long davidson_degree(long n) { return 2 * n; }

// ---------------------------------------------------------------------------
// Shifted Coulomb potential -Z/(r+beta) in d dimensions. With
// psi = r^{k+1} e^{-alpha(r+beta)} f and E = -alpha^2/2,
//   r(r+beta) f'' + (-2 alpha r^2 + 2(k+1-alpha beta) r + 2 beta(k+1)) f'
//     + ((2Z - 2 alpha(k+1)) r - 2 alpha beta (k+1)) f = 0.

struct CoulombProblem {
  Rational Z;
  Rational beta;
  long d = 3;
  long l = 0;

  /// k = (2l + d - 3)/2
  Rational k() const { return Rational(2 * l + d - 3) / Rational(2); }

  void validate() const {
    if (d < 2) throw PreconditionError("shifted Coulomb problem needs d >= 2");
    if (l < 0) throw PreconditionError("angular momentum must be nonnegative");
    if (beta.sign() <= 0) throw PreconditionError("shift beta must be positive");
  }
};

template <class K>
BasicEquationSpec<K> coulomb_equation(const K& k, const Scalar<K>& Z, const Scalar<K>& alpha,
                                      const Scalar<K>& beta) {
  using S = Scalar<K>;
  const S kp1(k + K(1));
  const S two(K(2));
  const S ab = alpha * beta;
  return BasicEquationSpec<K>({S(), S(K(1)), beta, S()},
                              {-two * alpha, two * (kp1 - ab), two * beta * kp1},
                              {two * alpha * kp1 - two * Z, two * ab * kp1});
}

/// Tridiagonal entries (diag, super, sub) of row j in the closed form
///   beta_j  = 2 alpha beta (k+j+1) - j(j+2k+1)
///   alpha_j = -j beta (j+2k+1)           (at row j-1, column j)
///   gamma_j = 2 alpha (j-n-1)            (at row j, column j-1)
template <class K>
BandRow<K> coulomb_closed_form_row(const K& k, const Scalar<K>& alpha, const Scalar<K>& beta,
                                   long n, long j) {
  using S = Scalar<K>;
  const K J(j);
  const S diag = alpha * beta * (K(2) * (k + J + K(1))) - S(J * (J + K(2) * k + K(1)));
  const K J1(j + 1);
  const S super = -(beta * (J1 * (J1 + K(2) * k + K(1))));
  const S sub = alpha * K(2 * (j - n - 1));
  return {sub, diag, super, S()};
}

namespace detail {

template <class K>
void check_coulomb_rows(const BasicEquationSpec<K>& eq, const K& k, const Scalar<K>& alpha,
                        const Scalar<K>& beta, long n) {
  for (long j = 0; j <= n; ++j) {
    auto generic = band_row(eq, j);
    auto closed = coulomb_closed_form_row(k, alpha, beta, n, j);
    if (generic.diag != closed.diag || generic.super1 != closed.super1 ||
        (j > 0 && generic.sub != closed.sub) || !generic.super2.is_zero())
      throw std::logic_error("Coulomb band entries disagree with the closed form");
  }
}

}  // namespace detail

/// The equation at alpha = Z/(n+k+1), which fixes the degree at n.
inline EquationSpec coulomb_spec(const CoulombProblem& p, long n) {
  p.validate();
  if (n < 0) throw PreconditionError("degree must be nonnegative");
  using S = Scalar<Rational>;
  const Rational k = p.k();
  const Rational alpha = p.Z / (Rational(n + 1) + k);
  auto eq = coulomb_equation<Rational>(k, S(p.Z), S(alpha), S(p.beta));
  detail::check_coulomb_rows<Rational>(eq, k, S(alpha), S(p.beta), n);
  return eq;
}

/// Same, with the shift beta left as the unknown t.
inline EquationSpec coulomb_spec_unknown_beta(const CoulombProblem& p, long n) {
  CoulombProblem q = p;
  q.beta = Rational(1);
  q.validate();
  using S = Scalar<Rational>;
  const Rational k = p.k();
  const Rational alpha = p.Z / (Rational(n + 1) + k);
  auto eq = coulomb_equation<Rational>(k, S(p.Z), S(alpha), unknown<Rational>());
  detail::check_coulomb_rows<Rational>(eq, k, S(alpha), unknown<Rational>(), n);
  return eq;
}

/// -Z^2 / (2 (n+k+1)^2)
inline Rational coulomb_energy(const CoulombProblem& p, long n) {
  if (p.d < 2) throw PreconditionError("shifted Coulomb problem needs d >= 2");
  const Rational m = Rational(n + 1) + p.k();
  return -(p.Z * p.Z) / (Rational(2) * m * m);
}

/// Condition on t = alpha*beta for a degree-n solution, as a primitive
/// polynomial. The determinant depends on alpha and beta only through
/// their product, so it is computed at alpha = 1 with beta = t. Factors of
/// t are removed: beta > 0 and alpha > 0 exclude t = 0. K is Rational for a
/// numeric k, or UPoly<Rational> to keep k symbolic.
template <class K>
UPoly<K> coulomb_constraint(const K& k, long n) {
  if (n < 1) throw PreconditionError("coulomb_constraint needs n >= 1");
  using S = Scalar<K>;
  const S alpha(K(1));
  const S z = alpha * (k + K(n + 1));
  auto eq = coulomb_equation<K>(k, z, alpha, unknown<K>());
  detail::check_coulomb_rows<K>(eq, k, alpha, unknown<K>(), n);
  if (!degree_condition(eq, n).is_zero())
    throw std::logic_error("Coulomb degree condition should hold by construction");
  auto det = delta_determinant(eq, n);
  if (det.is_zero()) return det;
  return primitive_part(shift_down(det, trailing_zeros(det)));
}

// ---------------------------------------------------------------------------
// x^3 y'' + alpha (x^2 - 1) y' + (beta x + gamma) y = 0

template <class K>
BasicEquationSpec<K> krylov_robnik_spec(const Scalar<K>& alpha, const Scalar<K>& beta,
                                        const Scalar<K>& gamma) {
  using S = Scalar<K>;
  return BasicEquationSpec<K>({S(K(1)), S(), S(), S()}, {alpha, S(), -alpha}, {-beta, -gamma});
}

template <class K>
struct KrylovRobnikAnalysis {
  K beta;                        // -n^2 - (alpha-1) n
  UPoly<K> gamma_constraint;     // determinant in t = gamma
};

template <class K>
KrylovRobnikAnalysis<K> krylov_robnik_analyze(const K& alpha, long n) {
  if (n < 1) throw PreconditionError("krylov_robnik_analyze needs n >= 1");
  K beta = -K(n * n) - (alpha - K(1)) * K(n);
  auto eq = krylov_robnik_spec<K>(Scalar<K>(alpha), Scalar<K>(beta), unknown<K>());
  if (!degree_condition(eq, n).is_zero())
    throw std::logic_error("Krylov-Robnik beta does not satisfy the degree condition");
  return {beta, delta_determinant(eq, n)};
}

// ---------------------------------------------------------------------------
// y'' + (p - 2x^2) y' + (delta x + alpha) y = 0

template <class K>
BasicEquationSpec<K> chhajlany_spec(const Scalar<K>& p, const Scalar<K>& delta,
                                    const Scalar<K>& alpha) {
  using S = Scalar<K>;
  return BasicEquationSpec<K>({S(), S(), S(), S(K(1))}, {S(K(-2)), S(), p}, {-delta, -alpha});
}

/// Determinant in t = alpha with delta = 2n.
template <class K>
UPoly<K> chhajlany_analyze(const K& p, long n) {
  if (n < 1) throw PreconditionError("chhajlany_analyze needs n >= 1");
  auto eq = chhajlany_spec<K>(Scalar<K>(p), Scalar<K>(K(2 * n)), unknown<K>());
  return delta_determinant(eq, n);
}

// ---------------------------------------------------------------------------
// y'' = a x^{l-2} / (b + a x^{l-1}/(m+n)) y'
//       + m(m+1) b / (x^2 (b + a x^{l-1}/(m+n))) y
// has y = x^{m+1} 2F1(-n/(l-1), (m+1)/(l-1); (2m+l)/(l-1); -a x^{l-1}/(b(n+m))),
// a polynomial when (l-1) | n.

struct HyperSolution {
  long m = 1;
  long n = 0;
  long l = 2;
  Rational a;
  Rational b;
  /// Terminating series coefficients in w = x^{l-1}.
  std::vector<Rational> series;

  long prefactor_power() const { return m + 1; }

  /// x^{m+1} * F(x^{l-1})
  RPoly polynomial() const {
    std::vector<Rational> c(std::size_t(m + 1 + (l - 1) * long(series.size() - 1) + 1));
    for (std::size_t j = 0; j < series.size(); ++j)
      c[std::size_t(m + 1) + std::size_t(l - 1) * j] = series[j];
    return RPoly(std::move(c));
  }
};

inline HyperSolution hyper_build(long m, long n, long l, const Rational& a, const Rational& b) {
  if (m < 1) throw PreconditionError("m must be a positive integer");
  if (n < 0) throw PreconditionError("n must be nonnegative");
  if (l < 2) throw PreconditionError("l must be at least 2");
  if (b.is_zero()) throw DegenerateParameters("b must be nonzero");
  if (m + n == 0) throw DegenerateParameters("m + n must be nonzero");
  if (n % (l - 1) != 0)
    throw BadDegree("n = " + std::to_string(n) + " is not a multiple of l-1 = " +
                    std::to_string(l - 1));
  const Rational L1(l - 1);
  const Rational first = Rational(-n) / L1;
  const Rational second = Rational(m + 1) / L1;
  const Rational third = Rational(2 * m + l) / L1;
  const Rational z = -a / (b * Rational(n + m));
  const long terms = n / (l - 1);
  HyperSolution sol{m, n, l, a, b, {Rational(1)}};
  Rational c(1);
  for (long j = 1; j <= terms; ++j) {
    const Rational J(j - 1);
    c = c * (first + J) * (second + J) / ((third + J) * Rational(j)) * z;
    sol.series.push_back(c);
  }
  return sol;
}

/// x^2 (b(m+n) + a x^{l-1}) y'' - (m+n) a x^l y' - (m+n) m (m+1) b y
inline RPoly hyper_residual(const HyperSolution& s) {
  const Rational mn(s.m + s.n);
  const RPoly y = s.polynomial();
  const RPoly dy = derivative(y);
  const RPoly d2y = derivative(dy);
  const RPoly lead = RPoly::monomial(s.b * mn, 2) + RPoly::monomial(s.a, std::size_t(s.l + 1));
  return lead * d2y - RPoly::monomial(mn * s.a, std::size_t(s.l)) * dy -
         y * (mn * Rational(s.m * (s.m + 1)) * s.b);
}

/// The l = 2 equation as an instance of the cubic class.
inline EquationSpec hyper_equation_spec(long m, long n, const Rational& a, const Rational& b) {
  using S = Scalar<Rational>;
  const Rational mn(m + n);
  return EquationSpec({S(a), S(b * mn), S(), S()}, {S(-mn * a), S(), S()},
                      {S(), S(mn * Rational(m * (m + 1)) * b)});
}

/// Residual check; for l = 2 also requires the degree condition, a zero
/// criterion determinant and the generic certificate at degree n+m+1.
inline bool hyper_verify(const HyperSolution& s) {
  if (!hyper_residual(s).is_zero()) return false;
  if (s.l != 2) return true;
  const auto eq = hyper_equation_spec(s.m, s.n, s.a, s.b);
  const long degree = s.polynomial().degree();
  return degree_condition(eq, degree).is_zero() && delta_determinant(eq, degree).is_zero() &&
         verify_solution(eq, s.polynomial());
}

}  // namespace polyode
