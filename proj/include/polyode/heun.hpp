#pragma once

#include "polyode/equation.hpp"
#include "polyode/errors.hpp"

namespace polyode {

// Adapters from the Heun families to the cubic class. Parameters are
// Scalars, so any one of them may be the unknown t.

/// y'' + (alpha + (beta+1)/z + (gamma+1)/(z-1)) y' + (mu/z + nu/(z-1)) y = 0
template <class K>
struct ConfluentHeunParams {
  Scalar<K> alpha, beta, gamma, mu, nu;
};

/// x y'' + (-2x^2 - beta x + alpha + 1) y'
///   + ((gamma - alpha - 2) x - (delta + (alpha+1) beta)/2) y = 0
template <class K>
struct BiconfluentHeunParams {
  Scalar<K> alpha, beta, gamma, delta;
};

/// Heun's equation with singular points 0, 1, a, infinity and accessory
/// parameter q.
template <class K>
struct GeneralHeunParams {
  Scalar<K> a, alpha, beta, gamma, delta, epsilon, q;
};

/// z(z-1) y'' + (alpha z^2 + (gamma+beta-alpha+2) z - alpha + 1) y'
///   + ((mu+nu) z - mu) y = 0
template <class K>
BasicEquationSpec<K> confluent_to_spec(const ConfluentHeunParams<K>& p) {
  using S = Scalar<K>;
  const S one(K(1));
  const S two(K(2));
  return BasicEquationSpec<K>({S(), one, -one, S()},
                              {p.alpha, p.gamma + p.beta - p.alpha + two, one - p.alpha},
                              {-(p.mu + p.nu), p.mu});
}

template <class K>
BasicEquationSpec<K> biconfluent_to_spec(const BiconfluentHeunParams<K>& p) {
  using S = Scalar<K>;
  const S one(K(1));
  const S two(K(2));
  const K half = exact_div(K(1), K(2));
  return BasicEquationSpec<K>({S(), S(), one, S()}, {-two, -p.beta, p.alpha + one},
                              {-(p.gamma - p.alpha - two), (p.delta + (p.alpha + one) * p.beta) * half});
}

/// 1 + alpha + beta - gamma - delta - epsilon
template <class K>
Scalar<K> fuchsian_residual(const GeneralHeunParams<K>& p) {
  return Scalar<K>(K(1)) + p.alpha + p.beta - p.gamma - p.delta - p.epsilon;
}

/// (z^3 - (1+a) z^2 + a z) y''
///   + ((gamma+epsilon+delta) z^2 - (a(delta+gamma) + epsilon + gamma) z + a gamma) y'
///   + (alpha beta z - q) y = 0
/// Throws FuchsianViolation unless the residual vanishes identically.
template <class K>
BasicEquationSpec<K> general_to_spec(const GeneralHeunParams<K>& p) {
  using S = Scalar<K>;
  if (auto r = fuchsian_residual(p); !r.is_zero()) throw FuchsianViolation(to_string(r, "t"));
  const S one(K(1));
  auto ab = p.alpha * p.beta;
  if (ab.degree() > 1)
    throw PreconditionError("alpha and beta cannot both be the unknown");
  return BasicEquationSpec<K>({one, -(one + p.a), p.a, S()},
                              {p.gamma + p.epsilon + p.delta,
                               -(p.a * (p.delta + p.gamma) + p.epsilon + p.gamma), p.a * p.gamma},
                              {-ab, p.q});
}

}  // namespace polyode
