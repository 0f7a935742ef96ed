#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "polyode/errors.hpp"
#include "polyode/rational.hpp"
#include "polyode/upoly.hpp"

namespace polyode {

struct Interval {
  Rational lo;
  Rational hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct RootReport {
  RPoly polynomial;
  std::vector<Interval> isolating_intervals;  // one distinct real root each, ascending
  std::vector<double> refined;                // same order as the intervals
  std::vector<Rational> exact_rational_roots;
  int nonreal_count = 0;  // distinct roots off the real line (degree of the square-free part minus real count)
};

/// p, p', then negated remainders. Remainders are rescaled by positive
/// constants, which leaves every sign variation unchanged.
inline std::vector<RPoly> sturm_chain(const RPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial();
  std::vector<RPoly> chain{p};
  RPoly next = derivative(p);
  while (!next.is_zero()) {
    chain.push_back(next);
    RPoly r = -divmod(chain[chain.size() - 2], chain.back()).second;
    if (!r.is_zero()) r = exact_div_scalar(r, abs(content(r)));
    next = std::move(r);
  }
  return chain;
}

inline int sign_variations(const std::vector<RPoly>& chain, const Rational& x) {
  int count = 0;
  int last = 0;
  for (const auto& q : chain) {
    int s = q(x).sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

/// Distinct real roots in (lo, hi].
inline int sturm_count(const std::vector<RPoly>& chain, const Rational& lo, const Rational& hi) {
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

/// p / gcd(p, p'), which has the same roots, all simple.
inline RPoly square_free_part(const RPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial();
  if (p.degree() <= 0) return p;
  return exact_div(p, gcd(p, derivative(p)));
}

/// Every real root lies in (-B, B) with B = 1 + max |c_i / lead|.
inline Rational root_bound(const RPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial();
  Rational m(0);
  const auto& c = p.coefficients();
  for (std::size_t i = 0; i + 1 < c.size(); ++i) m = std::max(m, abs(c[i] / p.leading()));
  return m + Rational(1);
}

/// The rational with the smallest denominator in [lo, hi] (lo <= hi),
/// found by continued-fraction descent.
inline Rational simplest_rational(const Rational& lo, const Rational& hi) {
  if (hi < lo) return simplest_rational(hi, lo);
  if (lo.sign() <= 0 && hi.sign() >= 0) return Rational(0);
  if (hi.sign() < 0) return -simplest_rational(-hi, -lo);
  Integer fl = floor(lo);
  if (Rational(fl) == lo) return lo;
  if (Rational(Integer(fl + 1)) <= hi) return Rational(Integer(fl + 1));
  Rational base(fl);
  return base + Rational(1) / simplest_rational(Rational(1) / (hi - base), Rational(1) / (lo - base));
}

namespace detail {

/// Moves x away from the roots of q by shrinking steps in direction dir.
inline Rational off_root(const RPoly& q, Rational x, const Rational& step, int dir) {
  Rational s = step;
  while (q(x).is_zero()) {
    x += dir > 0 ? s : -s;
    s /= Rational(2);
  }
  return x;
}

}  // namespace detail

/// Bisection on Sturm counts until every interval isolates one distinct
/// root. Endpoints that are roots are nudged outward.
inline RootReport isolate_real_roots(const RPoly& p, Rational lo, Rational hi) {
  if (p.is_zero()) throw ZeroPolynomial();
  if (!(lo < hi)) throw PreconditionError("isolate_real_roots: need lo < hi");
  RootReport report;
  report.polynomial = p;
  const RPoly q = square_free_part(p);
  if (q.degree() <= 0) return report;
  const Rational tiny = (hi - lo) / Rational(1 << 20);
  lo = detail::off_root(q, lo, tiny, -1);
  hi = detail::off_root(q, hi, tiny, +1);
  const auto chain = sturm_chain(q);

  std::vector<std::pair<Interval, int>> stack{{{lo, hi}, sturm_count(chain, lo, hi)}};
  while (!stack.empty()) {
    auto [iv, count] = stack.back();
    stack.pop_back();
    if (count == 0) continue;
    if (count == 1) {
      report.isolating_intervals.push_back(iv);
      continue;
    }
    Rational width = iv.hi - iv.lo;
    Rational mid = iv.lo + width / Rational(2);
    mid = detail::off_root(q, mid, width / Rational(8), +1);
    int left = sturm_count(chain, iv.lo, mid);
    stack.push_back({{mid, iv.hi}, count - left});
    stack.push_back({{iv.lo, mid}, left});
  }
  std::sort(report.isolating_intervals.begin(), report.isolating_intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  report.nonreal_count = q.degree() - int(report.isolating_intervals.size());
  return report;
}

namespace detail {

/// Halves an isolating interval of a simple root of q until its width is
/// below `width`. Returns the exact root if a midpoint hits it.
inline std::optional<Rational> shrink(const RPoly& q, Interval& iv, const Rational& width) {
  int s_lo = q(iv.lo).sign();
  while (iv.hi - iv.lo >= width) {
    Rational mid = (iv.lo + iv.hi) / Rational(2);
    int s = q(mid).sign();
    if (s == 0) {
      iv = {mid, mid};
      return mid;
    }
    if (s == s_lo) {
      iv.lo = mid;
    } else {
      iv.hi = mid;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Root of p in an isolating interval to within `tolerance`. Multiple roots
/// are handled by working on the square-free part.
inline double refine_root(const RPoly& p, Interval iv, double tolerance = 1e-12) {
  if (p.is_zero()) throw ZeroPolynomial();
  const RPoly q = square_free_part(p);
  if (iv.lo == iv.hi) {
    if (!q(iv.lo).is_zero()) throw NotIsolating();
    return iv.lo.to_double();
  }
  if (q(iv.lo).is_zero() || q(iv.hi).is_zero()) {
    if (q(iv.hi).is_zero() && sturm_count(sturm_chain(q), iv.lo, iv.hi) == 1)
      return iv.hi.to_double();
    throw NotIsolating();
  }
  if (sturm_count(sturm_chain(q), iv.lo, iv.hi) != 1) throw NotIsolating();
  if (auto exact = detail::shrink(q, iv, from_double(tolerance))) return exact->to_double();
  return ((iv.lo + iv.hi) / Rational(2)).to_double();
}

/// The exact value of the root isolated by iv if it is rational. A rational
/// root r/s of an integer polynomial has s | lead, so once the interval is
/// narrower than 1/lead^2 the simplest rational in it is the only candidate.
inline std::optional<Rational> exact_rational_root(const RPoly& p, Interval iv) {
  const RPoly q = primitive_part(square_free_part(p));
  if (iv.lo == iv.hi) return q(iv.lo).is_zero() ? std::optional<Rational>(iv.lo) : std::nullopt;
  const Rational lead = abs(q.leading());
  if (auto hit = detail::shrink(q, iv, Rational(1) / (lead * lead * Rational(2)))) return hit;
  Rational candidate = simplest_rational(iv.lo, iv.hi);
  if (q(candidate).is_zero()) return candidate;
  return std::nullopt;
}

/// Isolation over a range covering every real root, refinement to the
/// tolerance and exact detection of rational roots.
inline RootReport find_real_roots(const RPoly& p, double tolerance = 1e-12) {
  if (p.is_zero()) throw ZeroPolynomial();
  if (p.degree() <= 0) {
    RootReport empty;
    empty.polynomial = p;
    return empty;
  }
  Rational bound = std::max(Rational(1000000), root_bound(p));
  RootReport report = isolate_real_roots(p, -bound, bound);
  for (const auto& iv : report.isolating_intervals) {
    if (auto r = exact_rational_root(p, iv)) {
      report.exact_rational_roots.push_back(*r);
      report.refined.push_back(r->to_double());
    } else {
      report.refined.push_back(refine_root(p, iv, tolerance));
    }
  }
  return report;
}

}  // namespace polyode
