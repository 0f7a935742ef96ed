#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polyode/equation.hpp"
#include "polyode/errors.hpp"
#include "polyode/matrix.hpp"
#include "polyode/upoly.hpp"

namespace polyode {

/// The four band entries of row k of the criterion matrix. Row k is the
/// coefficient of x^k in the residual (negated), read as a linear form in
/// c_{k-1}, c_k, c_{k+1}, c_{k+2}.
template <class K>
struct BandRow {
  Scalar<K> sub;     // multiplies c_{k-1}
  Scalar<K> diag;    // multiplies c_k
  Scalar<K> super1;  // multiplies c_{k+1}
  Scalar<K> super2;  // multiplies c_{k+2}
};

template <class K>
BandRow<K> band_row(const BasicEquationSpec<K>& eq, long k) {
  auto c = [](long v) { return K(v); };
  return {
      eq.tau(0) - eq.a3(0) * c((k - 2) * (k - 1)) - eq.a2(0) * c(k - 1),
      eq.tau(1) - eq.a3(1) * c(k * (k - 1)) - eq.a2(1) * c(k),
      -(eq.a3(2) * c((k + 1) * k) + eq.a2(2) * c(k + 1)),
      -(eq.a3(3) * c((k + 2) * (k + 1))),
  };
}

/// tau[0] - n(n-1) a3[0] - n a2[0]; a degree-n polynomial solution needs it
/// to vanish (identically, or at the chosen value of the unknown).
template <class K>
Scalar<K> degree_condition(const BasicEquationSpec<K>& eq, long n) {
  if (n < 0) throw PreconditionError("degree must be nonnegative");
  return eq.tau(0) - eq.a3(0) * K(n * (n - 1)) - eq.a2(0) * K(n);
}

/// Leading-coefficient test for the generalized class whose coefficients
/// have degrees k+2, k+1, k: tau_{k,0} = n(n-1) a_{k+2,0} + n a_{k+1,0}.
template <class K>
bool necessary_condition_general(const K& leading_a_k2, const K& leading_a_k1,
                                 const K& leading_tau_k, long n, long k) {
  if (n < 0 || k < 0) throw PreconditionError("n and k must be nonnegative");
  return leading_tau_k == leading_a_k2 * K(n * (n - 1)) + leading_a_k1 * K(n);
}

template <class K>
struct CriterionMatrix {
  long n = 0;
  Matrix<Scalar<K>> entries;
};

/// The (n+1)x(n+1) banded matrix whose nullspace holds the coefficient
/// vectors c_0..c_n of degree-n polynomial solutions.
template <class K>
CriterionMatrix<K> build_criterion_matrix(const BasicEquationSpec<K>& eq, long n) {
  if (n < 0) throw PreconditionError("degree must be nonnegative");
  const auto size = std::size_t(n + 1);
  CriterionMatrix<K> m{n, Matrix<Scalar<K>>(size, size)};
  for (std::size_t k = 0; k < size; ++k) {
    auto row = band_row(eq, long(k));
    if (k >= 1) m.entries(k, k - 1) = row.sub;
    m.entries(k, k) = row.diag;
    if (k + 1 < size) m.entries(k, k + 1) = row.super1;
    if (k + 2 < size) m.entries(k, k + 2) = row.super2;
  }
  // Row n+1 of the residual only sees c_n, through its sub entry; that
  // entry must be the degree condition or the truncation is unsound.
  if (band_row(eq, n + 1).sub != degree_condition(eq, n))
    throw std::logic_error("criterion matrix truncation does not match the degree condition");
  return m;
}

/// Determinant of the criterion matrix as a polynomial in the unknown.
template <class K>
Scalar<K> delta_determinant(const BasicEquationSpec<K>& eq, long n) {
  return bareiss_determinant(build_criterion_matrix(eq, n).entries);
}

/// y = sum c_k x^k, normalized to a primitive integer vector whose highest
/// nonzero entry is positive.
struct PolySolution {
  std::vector<Rational> coefficients;
  int reported_degree = 0;
  bool residual_is_zero = false;

  UPoly<Rational> polynomial() const { return UPoly<Rational>(coefficients); }
};

/// Scales c to a primitive integer vector with positive leading entry and
/// trims zeros above the leading entry.
inline std::vector<Rational> normalize_coefficients(std::span<const Rational> c) {
  UPoly<Rational> p(std::vector<Rational>(c.begin(), c.end()));
  if (p.is_zero()) throw PreconditionError("coefficient vector is zero");
  return primitive_part(p).coefficients();
}

/// True iff sum c_k x^k makes the residual vanish identically.
template <class K>
bool verify_solution(const BasicEquationSpec<K>& eq, std::span<const K> c) {
  UPoly<K> y(std::vector<K>(c.begin(), c.end()));
  return residual(eq, y).is_zero();
}

template <class K>
bool verify_solution(const BasicEquationSpec<K>& eq, const UPoly<K>& y) {
  return residual(eq, y).is_zero();
}

/// Basis of the right nullspace by exact Gauss-Jordan elimination over a
/// field.
template <class T>
std::vector<std::vector<T>> nullspace_basis(Matrix<T> m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && is_zero(m(p, c))) ++p;
    if (p == rows) continue;
    m.swap_rows(r, p);
    T inv = T(1) / m(r, c);
    for (std::size_t j = c; j < cols; ++j) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      T f = m(i, c);
      for (std::size_t j = c; j < cols; ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(cols);
    v[free] = T(1);
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -m(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

struct NullspaceResult {
  std::vector<PolySolution> basis;
  bool ambiguous() const { return basis.size() > 1; }
};

class AmbiguousNullspace : public Error {
 public:
  explicit AmbiguousNullspace(std::vector<PolySolution> basis)
      : Error("criterion matrix has nullity " + std::to_string(basis.size())),
        basis_(std::move(basis)) {}
  const std::vector<PolySolution>& basis() const noexcept { return basis_; }

 private:
  std::vector<PolySolution> basis_;
};

/// Every nullspace direction of the criterion matrix, each normalized and
/// certified by substitution. Throws NoNullspace when the matrix is
/// nonsingular.
inline NullspaceResult construct_solutions(const EquationSpec& eq, long n) {
  if (!eq.is_numeric())
    throw PreconditionError("construct_solution needs a fully numeric equation");
  if (!degree_condition(eq, n).is_zero())
    throw PreconditionError("degree condition does not hold for n = " + std::to_string(n));
  const auto cm = build_criterion_matrix(eq, n);
  Matrix<Rational> numeric(cm.entries.rows(), cm.entries.cols());
  for (std::size_t i = 0; i < numeric.rows(); ++i)
    for (std::size_t j = 0; j < numeric.cols(); ++j) numeric(i, j) = cm.entries(i, j)[0];
  auto basis = nullspace_basis(std::move(numeric));
  if (basis.empty()) throw NoNullspace();
  NullspaceResult out;
  for (auto& v : basis) {
    PolySolution s;
    s.coefficients = normalize_coefficients(v);
    s.reported_degree = int(s.coefficients.size()) - 1;
    s.residual_is_zero = verify_solution<Rational>(eq, s.coefficients);
    if (!s.residual_is_zero)
      throw std::logic_error("nullspace vector failed the residual certificate");
    out.basis.push_back(std::move(s));
  }
  return out;
}

/// The polynomial solution of degree at most n. Throws AmbiguousNullspace
/// (carrying the basis) when the nullity exceeds one.
inline PolySolution construct_solution(const EquationSpec& eq, long n) {
  auto result = construct_solutions(eq, n);
  if (result.ambiguous()) throw AmbiguousNullspace(std::move(result.basis));
  return std::move(result.basis.front());
}

// Classical three-coefficient class
//   (a20 x^2 + a21 x + a22) y'' + (a10 x + a11) y' - tau00 y = 0.

template <class K>
struct ClassicalEquation {
  K a20, a21, a22, a10, a11;
};

/// n(n-1) a20 + n a10
template <class K>
K classical_tau(const K& a20, const K& a10, long n) {
  return a20 * K(n * (n - 1)) + a10 * K(n);
}

/// The classical equation as an instance of the cubic class.
template <class K>
BasicEquationSpec<K> embed_classical(const ClassicalEquation<K>& ce, const K& tau00) {
  using S = Scalar<K>;
  return BasicEquationSpec<K>({S(), S(ce.a20), S(ce.a21), S(ce.a22)}, {S(), S(ce.a10), S(ce.a11)},
                              {S(), S(tau00)});
}

/// y_0 = 1, y_1 = a10 x + a11.
template <class K>
std::pair<UPoly<K>, UPoly<K>> classical_seed(const ClassicalEquation<K>& ce) {
  return {UPoly<K>(K(1)), UPoly<K>({ce.a11, ce.a10})};
}

/// y_{n+2} from y_n and y_{n+1} by the three-term recurrence; coefficients
/// must form a field.
template <class K>
UPoly<K> classical_recurrence_step(const ClassicalEquation<K>& ce, const UPoly<K>& y_n,
                                   const UPoly<K>& y_n1, long n) {
  const K& a20 = ce.a20;
  const K& a21 = ce.a21;
  const K& a22 = ce.a22;
  const K& a10 = ce.a10;
  const K& a11 = ce.a11;
  const K N(n);
  const K d1 = N * a20 + a10;
  const K d2 = K(2) * N * a20 + a10;
  if (is_zero(d1) || is_zero(d2)) throw DegenerateDenominator();
  const K odd = (K(2) * N + K(1)) * a20 + a10;
  const K even = K(2) * (N + K(1)) * a20 + a10;
  const K x_coef = odd * even / d1;
  const K c_coef = odd *
                   (K(2) * N * (N + K(1)) * a20 * a21 + K(2) * (N + K(1)) * a10 * a21 -
                    K(2) * a11 * a20 + a10 * a11) /
                   (d1 * d2);
  const K y_coef = (N + K(1)) * even *
                   (K(4) * N * N * a22 * a20 * a20 + a20 * a11 * a11 + K(4) * N * a20 * a10 * a22 -
                    N * N * a20 * a21 * a21 + a10 * a10 * a22 - a11 * a10 * a21 -
                    N * a10 * a21 * a21) /
                   (d1 * d2);
  return UPoly<K>({c_coef, x_coef}) * y_n1 + y_n * y_coef;
}

/// y_0..y_{count-1}.
template <class K>
std::vector<UPoly<K>> classical_polynomials(const ClassicalEquation<K>& ce, std::size_t count) {
  std::vector<UPoly<K>> ys;
  auto [y0, y1] = classical_seed(ce);
  if (count > 0) ys.push_back(y0);
  if (count > 1) ys.push_back(y1);
  for (std::size_t i = 2; i < count; ++i)
    ys.push_back(classical_recurrence_step(ce, ys[i - 2], ys[i - 1], long(i) - 2));
  return ys;
}

}  // namespace polyode
