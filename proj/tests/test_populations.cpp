#include <gtest/gtest.h>

#include <set>

#include "bethe/errors.hpp"
#include "bethe/parse.hpp"
#include "bethe/populations.hpp"
#include "bethe/wronskian.hpp"
#include "oracles.hpp"

using namespace bethe;

namespace {
const Poly X = Poly::x();
Poly P(const char* s) { return parse_poly(s); }
const TPair T11(1, 1);
}  // namespace

TEST(Genericity, Examples) {
  EXPECT_TRUE(is_generic({1, 1}, T11).generic);
  auto r = is_generic({pow(X, 3), 1}, TPair(X * X, 1));
  EXPECT_FALSE(r.generic);
  EXPECT_EQ(r.failing, "gcd(y0,T0)");
  EXPECT_EQ(r.witness, X * X);
  auto s = is_generic({X, X}, T11);
  EXPECT_FALSE(s.generic);
  EXPECT_EQ(s.failing, "gcd(y0,y1)");
  EXPECT_EQ(s.witness, X);
}

TEST(Reproduction, SolveExamples) {
  auto a = solve_reproduction(1, 1);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->particular, X);
  EXPECT_EQ(a->direction, Poly(1));
  auto b = solve_reproduction(1, X * X);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->particular, Poly::monomial(make_rat(1, 3), 3));
  auto c = solve_reproduction(X, X * X);
  ASSERT_TRUE(c);
  EXPECT_EQ(wronskian2(X, c->particular), X * X);
  EXPECT_EQ(c->particular.coeff(1), Rat(0));
  EXPECT_EQ(c->particular, X * X);
  // x^2 y' - 2x y = 1 fails at x = 0.
  auto d = solve_reproduction(X * X, Poly(1));
  EXPECT_FALSE(d);
}

TEST(Reproduction, FamilySolvesEquationForAnyParameter) {
  Poly y = P("x^2 - 3");
  Poly w = P("2*x^4 + x");
  auto fam = solve_reproduction(y, wronskian2(y, w));
  ASSERT_TRUE(fam);
  for (int c = -2; c <= 2; ++c) EXPECT_EQ(wronskian2(y, fam->particular + Rat(c) * fam->direction), wronskian2(y, w));
}

TEST(Fertility, Examples) {
  EXPECT_TRUE(is_fertile({1, 1}, T11));
  EXPECT_TRUE(is_critical({1, 1}, T11));
  EXPECT_TRUE(is_critical({1, 1}, TPair(X * X, X * X)));
  // Wr(x^3, .) = x^2 is solved by -1/3 + c x^3.
  EXPECT_TRUE(is_fertile({pow(X, 3), 1}, TPair(X * X, 1)));
  // x^2 y' - 2x y = 1 fails at x = 0.
  EXPECT_FALSE(is_fertile({X * X, 1}, T11));
}

TEST(Reproduction, StepsAndFamilyClosure) {
  PopulationNode root{{1, 1}, T11, {}, {}};
  auto n1 = reproduce(root, {0, Rat(0), false});
  EXPECT_EQ(n1.pair, PolyPair(X, 1));
  auto n2 = reproduce(n1, {1, Rat(0), false});
  EXPECT_EQ(n2.pair.y0, X);
  EXPECT_EQ(n2.pair.y1, pow(X, 3));
  // Reproducing twice in one direction stays in the same family.
  auto again = reproduce(n2, {1, Rat(5), false});
  auto fam = reproduction_family(n1.pair, T11, 1);
  ASSERT_TRUE(fam);
  Poly diff = again.pair.y1 - n2.pair.y1;
  EXPECT_TRUE(diff.is_zero() || diff.degree() <= fam->direction.degree());
  EXPECT_THROW(reproduce({{X * X, 1}, T11, {}, {}}, {0, Rat(0), false}), Infertile);
}

TEST(Population, DepthOneExamples) {
  auto pop = enumerate_population(T11, 1, {Rat(0)});
  std::set<std::string> got;
  for (const auto& n : pop) got.insert(to_string(n.pair.y0) + "|" + to_string(n.pair.y1));
  EXPECT_EQ(got, (std::set<std::string>{"1|1", "x|1", "1|x"}));

  auto pop2 = enumerate_population(TPair(X * X, 1), 1, {Rat(0)});
  got.clear();
  for (const auto& n : pop2) got.insert(to_string(n.pair.y0) + "|" + to_string(n.pair.y1));
  EXPECT_EQ(got, (std::set<std::string>{"1|1", "x^3|1", "1|x"}));
}

TEST(Population, NodesAreFertileWithValidCertificates) {
  for (const TPair& t : {T11, TPair(X * X, 1), TPair(X * X, X * X), TPair(X, X)}) {
    int generic = 0;
    for (const auto& node : enumerate_population(t, 3)) {
      EXPECT_TRUE(is_fertile(node.pair, t)) << to_string(node.pair.y0) << ", " << to_string(node.pair.y1);
      EXPECT_EQ(is_critical(node.pair, t), is_generic(node.pair, t).generic);
      if (is_generic(node.pair, t).generic) ++generic;
      auto path = replay(t, node.word);
      ASSERT_EQ(path.back().pair, node.pair);
      for (std::size_t s = 0; s < node.certificates.size(); ++s) {
        const auto& c = node.certificates[s];
        const Poly& other = path[s + 1].pair.y(c.direction + 1);
        EXPECT_EQ(wronskian2(c.old_y, c.new_y), c.scale * t.T(c.direction) * other * other);
      }
    }
    EXPECT_GT(generic, 1);
  }
}

TEST(Weyl, DegreePrediction) {
  EXPECT_EQ(weyl_degree_predict(weights_of(T11), {0, 0}, 0), std::make_pair(1, 0));
  EXPECT_EQ(weyl_degree_predict(weights_of(TPair(X * X, 1)), {0, 0}, 0), std::make_pair(3, 0));
  WeightVector mu{Rat(3), Rat(-1), Rat(2)};
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(mu.shifted_reflect(i).shifted_reflect(i), mu);
    EXPECT_EQ(mu.reflect(i).pairing(i), -mu.pairing(i));
  }
}

TEST(Weyl, PredictionMatchesGenericReproduction) {
  for (const TPair& t : {T11, TPair(X * X, 1), TPair(P("x^2 - 1"), X)}) {
    auto w = weights_of(t);
    for (const auto& node : enumerate_population(t, 3)) {
      for (int i = 0; i < 2; ++i) {
        auto fam = reproduction_family(node.pair, t, i);
        ASSERT_TRUE(fam);
        // A generic member has the top degree of the family.
        int top = std::max(fam->particular.degree(), fam->direction.degree());
        auto pred = weyl_degree_predict(w, {node.pair.y0.degree(), node.pair.y1.degree()}, i);
        int old = node.pair.y(i).degree();
        int predicted = (i == 0) ? pred.first : pred.second;
        EXPECT_TRUE(top == predicted || (top == old && predicted < old))
            << "T=(" << t.T0() << "," << t.T1() << ") node (" << node.pair.y0 << "," << node.pair.y1 << ") i=" << i;
      }
    }
  }
}

TEST(Bethe, Residuals) {
  EXPECT_EQ(bethe_residuals({1, 1}, T11), 0.0);
  EXPECT_EQ(bethe_residuals({X, 1}, T11), 0.0);
  TPair t(X * X, 1);
  for (const auto& node : enumerate_population(t, 3))
    if (is_generic(node.pair, t).generic) EXPECT_LT(bethe_residuals(node.pair, t), 1e-8);
  EXPECT_THROW(bethe_residuals({X, X}, T11), NotGeneric);
}

TEST(SuperFertile, Examples) {
  auto a = normalize_superfertile({1, 1}, TPair(X * X, 1));
  EXPECT_EQ(a.f0, Poly(1));
  EXPECT_EQ(a.f1, Poly(1));
  auto b = normalize_superfertile({X, X}, T11);
  EXPECT_EQ(b.f0, X);
  EXPECT_EQ(b.f1, X);
  EXPECT_EQ(b.pair, PolyPair(1, 1));
  EXPECT_EQ(b.tdata, T11);
}

TEST(SuperFertile, MultiplicationRoundTrip) {
  TPair t(1, X * X);
  for (const auto& node : enumerate_population(t, 2)) {
    for (const auto& [f0, f1] : {std::pair<Poly, Poly>{X, 1}, {X - 3, X - 3}}) {
      auto [pair0, t0] = multiply_pair(node.pair, t, f0, f1);
      auto back = normalize_superfertile(pair0, t0);
      EXPECT_EQ(back.pair, node.pair);
      EXPECT_EQ(back.tdata, t);
    }
  }
}

TEST(SuperFertile, MultiplyRejectsNonPolynomialData) {
  EXPECT_EQ(multiply_pair({1, 1}, T11, 1, 1).first, PolyPair(1, 1));
  auto m = multiply_pair({1, 1}, T11, X, X);
  EXPECT_EQ(m.first, PolyPair(X, X));
  EXPECT_EQ(m.second, T11);
  EXPECT_THROW(multiply_pair({1, 1}, TPair(X * X, 1), X, 1), NotPolynomial);
}

TEST(Population, DescendToRoot) {
  TPair t(X * X, 1);
  for (const auto& node : enumerate_population(t, 3)) {
    PolyPair cur = node.pair;
    for (const auto& [before, step] : descend_to_root(node.pair, t)) {
      EXPECT_EQ(before, cur);
      auto fam = reproduction_family(cur, t, step.direction);
      ASSERT_TRUE(fam);
      cur.y(step.direction) = fam->lowest();
    }
    EXPECT_EQ(cur, PolyPair(1, 1));
  }
}
