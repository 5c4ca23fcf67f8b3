#include <gtest/gtest.h>

#include "bethe/errors.hpp"
#include "bethe/operators.hpp"
#include "bethe/parse.hpp"
#include "bethe/populations.hpp"
#include "oracles.hpp"

using namespace bethe;
using bethe::testing::leibniz_det;
using bethe::testing::random_poly;
using bethe::testing::random_rat;

namespace {

const Poly X = Poly::x();

SchrodingerOp op(const char* p, const char* u) { return {parse_poly(p), parse_ratfunc(u)}; }

Rat eval_delta(const DeltaPoly& d, const Rat& lambda) {
  Rat v = 0, pw = 1;
  for (const auto& c : d.coeffs) {
    v += c.value().coeff(0) * pw;
    pw *= lambda;
  }
  return v;
}

// The banded matrix written out in full.
Rat delta_by_leibniz(const Rat& m, const std::vector<Rat>& a, const std::vector<Rat>& b, const Rat& lambda) {
  const int n = static_cast<int>(Rat(2 * m).get_num().get_si()) + 1;
  std::vector<std::vector<Rat>> h(n, std::vector<Rat>(n, Rat(0)));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c <= r; ++c) h[r][c] = a[r - c] + lambda * b[r - c];
    if (r + 1 < n) h[r][r + 1] = (r + 1) * (n - 1 - r);
  }
  return leibniz_det(h);
}

struct Entries {
  std::vector<Rat> a, b;
  std::vector<QElem> qa, qb;
};

Entries random_entries(std::mt19937& rng, int n, const Poly& p, const Rat& s) {
  Entries e;
  for (int k = 0; k < n; ++k) {
    e.a.push_back(random_rat(rng));
    e.b.push_back(k == 0 ? Rat(0) : p.taylor_coeff(k - 1).eval(s));
  }
  for (int k = 0; k < n; ++k) {
    e.qa.emplace_back(e.a[k]);
    e.qb.emplace_back(e.b[k]);
  }
  return e;
}

}  // namespace

TEST(Operators, FromPairExamples) {
  auto a = from_pair({1, 1}, TPair(1, 1), 0);
  EXPECT_TRUE(a.U.is_zero());
  auto b = from_pair({X, 1}, TPair(1, 1), 1);
  EXPECT_EQ(b.U, RationalFunction(Poly(2), X * X));
  // L_1 of the trivial pair only sees T_1 = x^{2l}: U = l(l+1)/x^2.
  auto c = from_pair({1, 1}, TPair(X, X * X), 1);
  EXPECT_EQ(c.P, pow(X, 3));
  EXPECT_EQ(c.U, RationalFunction(Poly(2), X * X));
  auto d = from_pair({1, 1}, TPair(X * X, X), 1);
  EXPECT_EQ(d.U, RationalFunction(Poly(make_rat(3, 4)), X * X));
}

TEST(Operators, FuchsianCheck) {
  EXPECT_TRUE(fuchsian_check(op("1", "0")));
  EXPECT_TRUE(fuchsian_check(op("1", "2/x^2")));
  EXPECT_FALSE(fuchsian_check(op("1", "x")));
  EXPECT_FALSE(fuchsian_check(op("1", "1/x^3")));
}

TEST(Operators, PolesAndExponents) {
  auto a = poles_and_exponents(op("1", "2/x^2"));
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].pole_class, X);
  EXPECT_EQ(a[0].m, Rat(1));
  auto b = poles_and_exponents(op("1", "(3/4)/x^2"));
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].m, make_rat(1, 2));
  EXPECT_THROW(poles_and_exponents(op("1", "1/x^2")), NotTriangularNumber);
  // Irrational pole class with a common exponent.
  auto c = poles_and_exponents(op("1", "6/(x^2-2)^2"));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].pole_class, X * X - 2);
}

TEST(Delta, SmallClosedForms) {
  std::mt19937 rng(4);
  Poly p = random_poly(rng, 3);
  Rat s = random_rat(rng);
  for (int it = 0; it < 10; ++it) {
    auto e = random_entries(rng, 3, p, s);
    auto half = delta_from_entries(make_rat(1, 2), e.qa, e.qb);
    auto one = delta_from_entries(Rat(1), e.qa, e.qb);
    for (Rat lam : {Rat(0), Rat(1), make_rat(-3, 2)}) {
      Rat a_m1 = e.a[0], a0 = e.a[1] + lam * e.b[1], a1 = e.a[2] + lam * e.b[2];
      EXPECT_EQ(eval_delta(half, lam), a_m1 * a_m1 - a0);
      EXPECT_EQ(eval_delta(one, lam), a_m1 * a_m1 * a_m1 - 4 * a0 * a_m1 + 4 * a1);
    }
  }
}

TEST(Delta, MatchesLeibnizExpansion) {
  std::mt19937 rng(8);
  for (int twice_m = 1; twice_m <= 5; ++twice_m) {
    Rat m = make_rat(twice_m, 2);
    for (int it = 0; it < 4; ++it) {
      Poly p = random_poly(rng, 4);
      Rat s = random_rat(rng);
      auto e = random_entries(rng, twice_m + 1, p, s);
      auto d = delta_from_entries(m, e.qa, e.qb);
      auto r = delta_rec_from_entries(m, e.qa, e.qb);
      for (Rat lam : {Rat(0), Rat(2), make_rat(-1, 3)}) {
        Rat expected = delta_by_leibniz(m, e.a, e.b, lam);
        EXPECT_EQ(eval_delta(d, lam), expected);
        EXPECT_EQ(eval_delta(r, lam), expected);
      }
    }
  }
}

TEST(Delta, LeadingCoefficientClosedForm) {
  std::mt19937 rng(12);
  for (int twice_m = 1; twice_m <= 7; ++twice_m) {
    Rat m = make_rat(twice_m, 2);
    for (int it = 0; it < 20; ++it) {
      Poly p = random_poly(rng, 5);
      Rat s = random_rat(rng);
      if (p.eval(s) == 0) continue;
      auto e = random_entries(rng, twice_m + 1, p, s);
      auto d = delta_from_entries(m, e.qa, e.qb);
      int top = (twice_m % 2) ? (twice_m + 1) / 2 : twice_m / 2;
      Rat lead = leading_delta_coeff(m, e.a[0], p.eval(s), p.derivative().eval(s));
      EXPECT_EQ(d.coeff(top).value().coeff(0), lead) << "m = " << m;
      EXPECT_LE(d.degree(), top);
    }
  }
  // Written-out forms for m = 1 and m = 1/2.
  Rat am1(3), ps(2), pp(5);
  EXPECT_EQ(leading_delta_coeff(Rat(1), am1, ps, pp), -4 * ps * (am1 - pp / ps));
  EXPECT_EQ(leading_delta_coeff(make_rat(1, 2), am1, ps, pp), -ps);
}

TEST(Delta, OperatorRoutesAgree) {
  TPair t(X * X, 1);
  for (const auto& node : enumerate_population(t, 3)) {
    for (int j = 0; j < 2; ++j) {
      SchrodingerOp L = from_pair(node.pair, t, j);
      for (const auto& datum : poles_and_exponents(L)) {
        if (datum.m == 0) continue;
        auto a = delta_poly(L, datum);
        auto b = delta_poly_rec(L, datum);
        ASSERT_EQ(a.coeffs.size(), b.coeffs.size());
        for (std::size_t k = 0; k < a.coeffs.size(); ++k) EXPECT_EQ(a.coeffs[k], b.coeffs[k]);
      }
    }
  }
}

TEST(Delta, VanishesForInverseSquare) {
  auto L = op("1", "2/x^2");
  auto data = poles_and_exponents(L);
  ASSERT_EQ(data.size(), 1u);
  EXPECT_TRUE(delta_poly(L, data[0]).is_zero());
}

TEST(Residues, Examples) {
  auto a = residue_check(op("1", "2/x^2"));
  EXPECT_TRUE(a.ok());
  auto b = residue_check(op("1", "2/(x^2*(x-1)^2)"));
  EXPECT_FALSE(b.ok());
  bool seen = false;
  for (const auto& e : b.entries) {
    if (e.pole_class != X) continue;
    seen = true;
    EXPECT_EQ(e.a_minus1 - e.expected, QElem(4));
    EXPECT_FALSE(e.ok);
  }
  EXPECT_TRUE(seen);
}

TEST(LambdaMF, Examples) {
  EXPECT_TRUE(is_lambda_mf(op("1", "2/x^2")).lambda_mf);
  EXPECT_TRUE(is_lambda_mf(op("1", "0")).lambda_mf);
  auto v = is_lambda_mf(op("1", "2/(x^2*(x-1)^2)"));
  EXPECT_TRUE(v.fuchsian);
  EXPECT_FALSE(v.lambda_mf);
  EXPECT_FALSE(is_lambda_mf(op("1", "x")).lambda_mf);
}

TEST(LambdaMF, PopulationOperators) {
  for (const TPair& t : {TPair(1, 1), TPair(X * X, 1), TPair(X * X - 2, X)}) {
    for (const auto& node : enumerate_population(t, 2)) {
      for (int j = 0; j < 2; ++j) {
        SchrodingerOp L = from_pair(node.pair, t, j);
        auto v = is_lambda_mf(L);
        EXPECT_TRUE(v.lambda_mf) << v.reason;
        EXPECT_TRUE(residue_check(L).ok());
      }
    }
  }
}

TEST(Kernel, BasisAnnihilatedByOperator) {
  for (const TPair& t : {TPair(1, 1), TPair(X * X, 1)}) {
    for (const auto& node : enumerate_population(t, 2)) {
      for (int j = 0; j < 2; ++j) {
        SchrodingerOp L = from_pair(node.pair, t, j);
        auto [f1, f2] = kernel_functions(kernel_basis(node.pair, t, j));
        EXPECT_TRUE(apply(L, f1).r.is_zero());
        EXPECT_TRUE(apply(L, f2).r.is_zero());
      }
    }
  }
  auto kb = kernel_basis({1, 1}, TPair(1, 1), 1);
  EXPECT_EQ(kb.num1, Poly(1));
  EXPECT_EQ(kb.num2, X);
}

TEST(Kernel, ExponentAt) {
  EXPECT_EQ(exponent_at(op("1", "6/x^2"), Rat(0)), Rat(2));
  EXPECT_EQ(exponent_at(op("1", "6/x^2"), Rat(1)), Rat(0));
}
