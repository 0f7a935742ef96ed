#pragma once

#include <optional>

#include "polyode/equation.hpp"
#include "polyode/errors.hpp"
#include "polyode/upoly.hpp"

namespace polyode {

/// Iterate n of the asymptotic iteration method for y'' = lambda_0 y' + s_0 y
/// with lambda_0 = -P2/P3 and s_0 = P1/P3. lambda_n and s_n share the
/// denominator P3^{n+1}; only the numerators L and S are stored.
template <class K>
struct AimState {
  long n = 0;
  UPoly<K> L;
  UPoly<K> S;
};

template <class K>
AimState<K> aim_init(const BasicEquationSpec<K>& eq) {
  if (eq.p3().is_zero()) throw NotSecondOrder();
  return {0, -eq.p2(), eq.p1()};
}

/// One step of
///   lambda_n = lambda_{n-1}' + s_{n-1} + lambda_0 lambda_{n-1}
///   s_n      = s_{n-1}' + s_0 lambda_{n-1}
/// after clearing the denominator P3^{n+1}.
template <class K>
AimState<K> aim_iterate(const AimState<K>& state, const BasicEquationSpec<K>& eq) {
  const auto p3 = eq.p3();
  const auto dp3 = derivative(p3);
  const long n = state.n + 1;
  const K nk(n);
  AimState<K> next;
  next.n = n;
  next.L = derivative(state.L) * p3 - state.L * dp3 * nk + state.S * p3 - eq.p2() * state.L;
  next.S = derivative(state.S) * p3 - state.S * dp3 * nk + eq.p1() * state.L;
  return next;
}

/// Numerator of delta_n = lambda_n s_{n-1} - lambda_{n-1} s_n. The common
/// denominator P3^{2n+1} is never identically zero, so delta_n vanishes
/// identically iff this polynomial is zero.
template <class K>
UPoly<K> aim_delta(const AimState<K>& prev, const AimState<K>& cur) {
  return cur.L * prev.S - prev.L * cur.S;
}

struct AimResult {
  std::optional<long> index;  // first n with delta_n == 0 and lambda_n lambda_{n-1} != 0
  long iterations = 0;
  bool found() const { return index.has_value(); }
};

/// Default iteration cap for a requested solution degree.
inline long default_aim_cap(long degree) { return 2 * degree + 4; }

/// Scans n = 1..n_max for the termination condition of the iteration.
template <class K>
AimResult aim_test_polynomial(const BasicEquationSpec<K>& eq, long n_max) {
  if (!eq.is_numeric()) throw PreconditionError("AIM needs a fully numeric equation");
  AimState<K> prev = aim_init(eq);
  AimResult result;
  for (long i = 1; i <= n_max; ++i) {
    AimState<K> cur = aim_iterate(prev, eq);
    result.iterations = i;
    if (!cur.L.is_zero() && !prev.L.is_zero() && aim_delta(prev, cur).is_zero()) {
      result.index = i;
      return result;
    }
    prev = std::move(cur);
  }
  return result;
}

}  // namespace polyode
