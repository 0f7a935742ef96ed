#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace polyode;
using namespace polyode::testing;

namespace {

using P = UPoly<Rational>;
using SymScalar = Scalar<P>;
const P sym_var = P::variable();

SymScalar c(const P& p) { return SymScalar(p); }
SymScalar c(const Q& v) { return SymScalar(P(v)); }

Q entry(const Matrix<S>& m, long r, long col) { return m(std::size_t(r), std::size_t(col))[0]; }

}  // namespace

// Confluent family -----------------------------------------------------------

TEST(Confluent, DegreeConditionForAllSmallN) {
  // alpha symbolic, mu = t, nu = 0: the condition is mu + nu = -n alpha
  for (long n = 0; n <= 8; ++n) {
    auto eq = confluent_to_spec<P>({c(sym_var), c(q(3, 2)), c(q(-1, 3)), unknown<P>(), SymScalar()});
    const SymScalar t = unknown<P>();
    EXPECT_EQ(degree_condition(eq, n), -(t + c(sym_var * Q(n)))) << "n=" << n;
  }
}

TEST(Confluent, AdapterCoefficients) {
  auto eq = confluent_to_spec<Rational>({S(q(2)), S(q(3)), S(q(5)), S(q(7)), S(q(11))});
  EXPECT_EQ(eq.a3(), (std::array<S, 4>{S(), S(q(1)), S(q(-1)), S()}));
  EXPECT_EQ(eq.a2(), (std::array<S, 3>{S(q(2)), S(q(5 + 3 - 2 + 2)), S(q(1 - 2))}));
  EXPECT_EQ(eq.tau(), (std::array<S, 2>{S(q(-18)), S(q(7))}));
}

TEST(Confluent, DisplayedMatrixRows) {
  const Q alpha = 2, beta = 3, gamma = 5, mu = 7;
  const long n = 5;
  const Q nu = -Q(n) * alpha - mu;
  auto m = build_criterion_matrix(confluent_to_spec<Rational>({S(alpha), S(beta), S(gamma), S(mu), S(nu)}), n)
               .entries;
  const Q g = gamma + beta - alpha + Q(2);
  EXPECT_EQ(entry(m, 0, 0), mu);
  EXPECT_EQ(entry(m, 0, 1), alpha - Q(1));
  EXPECT_EQ(entry(m, 1, 0), Q(n) * alpha);
  EXPECT_EQ(entry(m, 1, 1), mu - g);
  EXPECT_EQ(entry(m, 2, 1), Q(n - 1) * alpha);
  EXPECT_EQ(entry(m, 2, 2), mu - Q(2) * (gamma + beta - alpha + Q(3)));
  EXPECT_EQ(entry(m, n, n - 1), alpha);
  EXPECT_EQ(entry(m, n, n), mu - Q(n) * (Q(n - 1) + g));
  // The displayed superdiagonal k(alpha-1) only holds at k = 1; the
  // equation itself gives (k+1)(k-1+alpha) at row k.
  for (long k = 0; k < n; ++k) {
    EXPECT_EQ(entry(m, k, k + 1), Q(k + 1) * (Q(k - 1) + alpha));
    if (k >= 1) {
      EXPECT_NE(entry(m, k, k + 1), Q(k + 1) * (alpha - Q(1))) << "row " << k;
    }
  }
}

TEST(Confluent, DegreeOneDeterminant) {
  // mu (mu - (gamma+beta-alpha+2)) - alpha (alpha-1), with nu = -alpha - mu
  const Q alpha = q(3, 2), beta = q(-1), gamma = q(4);
  const S t = unknown<Rational>();
  auto eq = confluent_to_spec<Rational>({S(alpha), S(beta), S(gamma), t, S(-alpha) - t});
  const S g(gamma + beta - alpha + Q(2));
  EXPECT_EQ(delta_determinant(eq, 1), t * (t - g) - S(alpha * (alpha - Q(1))));
}

// Biconfluent family ---------------------------------------------------------

TEST(Biconfluent, DegreeConditionForAllSmallN) {
  // alpha symbolic, gamma = t: the condition is gamma = alpha + 2(n+1)
  for (long n = 0; n <= 8; ++n) {
    auto eq = biconfluent_to_spec<P>({c(sym_var), c(q(2)), unknown<P>(), c(q(5))});
    auto dc = degree_condition(eq, n);
    ASSERT_EQ(dc.degree(), 1);
    EXPECT_EQ(dc(sym_var + P(Q(2 * (n + 1)))), P()) << "n=" << n;
  }
}

TEST(Biconfluent, DisplayedTableRows) {
  const Q alpha = 3, beta = 5, delta = 7;
  const long n = 5;
  const Q gamma = alpha + Q(2 * (n + 1));
  auto m = build_criterion_matrix(biconfluent_to_spec<Rational>({S(alpha), S(beta), S(gamma), S(delta)}), n)
               .entries;
  const Q h = (delta + (alpha + Q(1)) * beta) / Q(2);
  const Q sub = -(gamma - alpha - Q(2));
  EXPECT_EQ(entry(m, 0, 0), h);
  EXPECT_EQ(entry(m, 0, 1), -(alpha + Q(1)));
  EXPECT_EQ(entry(m, 1, 0), sub);
  EXPECT_EQ(entry(m, 1, 1), h + beta);
  EXPECT_EQ(entry(m, 1, 2), -Q(2) * (alpha + Q(2)));
  EXPECT_EQ(entry(m, 2, 1), sub + Q(2));
  EXPECT_EQ(entry(m, 2, 2), h + Q(2) * beta);
  EXPECT_EQ(entry(m, 2, 3), -Q(3) * (alpha + Q(3)));
  EXPECT_EQ(entry(m, n - 1, n - 2), sub + Q(2 * (n - 2)));
  EXPECT_EQ(entry(m, n - 1, n), -Q(n) * (alpha + Q(n)));
  EXPECT_EQ(entry(m, n, n - 1), sub + Q(2 * (n - 1)));
  // The last two displayed diagonal entries carry extra terms; the
  // equation gives h + k beta on every row.
  const Q shown_n1 = h - Q((n - 1) * (n - 2)) + Q(n - 1) * beta;
  const Q shown_n = h * beta - Q(n * (n - 1)) + Q(n) * beta;
  EXPECT_EQ(entry(m, n - 1, n - 1), h + Q(n - 1) * beta);
  EXPECT_NE(entry(m, n - 1, n - 1), shown_n1);
  EXPECT_EQ(entry(m, n, n), h + Q(n) * beta);
  EXPECT_NE(entry(m, n, n), shown_n);
}

TEST(Biconfluent, DegreeZeroCondition) {
  const S t = unknown<Rational>();
  auto eq = biconfluent_to_spec<Rational>({S(q(1)), S(q(3)), S(q(3)), t});
  // 1x1 determinant (delta + (alpha+1) beta)/2
  EXPECT_EQ(delta_determinant(eq, 0), (t + S(q(6))) * q(1, 2));
}

// General family -------------------------------------------------------------

TEST(General, DegreeConditionForAllSmallN) {
  // alpha symbolic, beta from the Fuchsian relation
  const Q gamma = q(2, 3), delta = q(5), epsilon = q(-1, 2);
  const P alpha = sym_var;
  const P beta = P(gamma + delta + epsilon - Q(1)) - alpha;
  for (long n = 0; n <= 8; ++n) {
    GeneralHeunParams<P> hp{c(q(3)), c(alpha), c(beta), c(gamma), c(delta), c(epsilon), c(q(1))};
    auto dc = degree_condition(general_to_spec<P>(hp), n);
    const P ab = alpha * beta;
    const P expected = -ab - P(Q(n * (n - 1))) - P(Q(n) * (gamma + epsilon + delta));
    EXPECT_EQ(dc, c(expected)) << "n=" << n;
    // equivalently alpha = -n or beta = -n
    EXPECT_EQ(dc, -c((alpha + P(Q(n))) * (beta + P(Q(n))))) << "n=" << n;
  }
}

TEST(General, DisplayedTableRows) {
  const Q a = 3, gamma = 2, delta = 5, epsilon = 7;
  const long n = 5;
  const Q alpha(-n);
  const Q beta = gamma + delta + epsilon - Q(1) - alpha;
  const Q qq = 11;
  auto eq = general_to_spec<Rational>({S(a), S(alpha), S(beta), S(gamma), S(delta), S(epsilon), S(qq)});
  auto m = build_criterion_matrix(eq, n).entries;
  const Q s = gamma + epsilon + delta;
  const Q w = a * (delta + gamma) + epsilon + gamma;
  EXPECT_EQ(entry(m, 0, 0), qq);
  EXPECT_EQ(entry(m, 0, 1), -a * gamma);
  EXPECT_EQ(entry(m, 1, 0), -alpha * beta);
  EXPECT_EQ(entry(m, 1, 1), qq + w);
  EXPECT_EQ(entry(m, 1, 2), -Q(2) * a * (Q(1) + gamma));
  EXPECT_EQ(entry(m, 2, 1), -alpha * beta - s);
  EXPECT_EQ(entry(m, 2, 2), qq + Q(2) * (a + Q(1)) + Q(2) * w);
  EXPECT_EQ(entry(m, n, n - 1), -alpha * beta - Q(n - 1) * (Q(n - 2) + s));
  // Displayed (2,3) entry and last diagonal entry disagree with the
  // equation; the generated values follow the equation.
  EXPECT_EQ(entry(m, 2, 3), -Q(3) * (Q(2) * a + a * gamma));
  EXPECT_NE(entry(m, 2, 3), -Q(3) * (-Q(2) * w + a * gamma));
  EXPECT_EQ(entry(m, n, n), qq + Q(n * (n - 1)) * (Q(1) + a) + Q(n) * w);
  EXPECT_NE(entry(m, n, n), qq + Q(n * (n - 1)) * (Q(1) + a) +
                                Q(n) * (a * (delta + gamma) + epsilon + delta));
}

TEST(General, FuchsianViolation) {
  GeneralHeunParams<Rational> hp{S(q(2)), S(q(1)), S(q(1)), S(q(1)), S(q(1)), S(q(2)), S(q(0))};
  try {
    general_to_spec(hp);
    FAIL() << "expected FuchsianViolation";
  } catch (const FuchsianViolation& e) {
    EXPECT_EQ(e.residual(), "-1");
  }
  EXPECT_EQ(fuchsian_residual(hp), S(q(-1)));
}

TEST(General, UnknownAccessoryParameter) {
  // alpha = -1, beta = 2, a = 2, gamma = delta = 1, epsilon = 0, q unknown
  GeneralHeunParams<Rational> hp{S(q(2)), S(q(-1)), S(q(2)), S(q(1)), S(q(1)), S(q(0)),
                                 unknown<Rational>()};
  auto det = delta_determinant(general_to_spec(hp), 1);
  EXPECT_EQ(det, poly({4, 5, 1}));  // (q+1)(q+4)
  for (long value : {-1, -4}) {
    auto s = construct_solution(general_to_spec(hp).substitute(Q(value)), 1);
    EXPECT_TRUE(s.residual_is_zero);
  }
}
