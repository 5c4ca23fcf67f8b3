#include <gtest/gtest.h>

#include "bethe/darboux.hpp"
#include "bethe/errors.hpp"
#include "bethe/parse.hpp"
#include "bethe/populations.hpp"

using namespace bethe;

namespace {

const Poly X = Poly::x();

SchrodingerOp op(const char* p, const char* u) { return {parse_poly(p), parse_ratfunc(u)}; }

}  // namespace

TEST(Darboux, PotentialExamples) {
  EXPECT_EQ(darboux_potential(op("1", "0"), KernelElement{X, 1}).U, RationalFunction(Poly(2), X * X));
  EXPECT_EQ(darboux_potential(op("1", "2/x^2"), KernelElement{X * X, 1}).U, RationalFunction(Poly(6), X * X));
  EXPECT_TRUE(darboux_potential(op("1", "0"), KernelElement{1, 1}).U.is_zero());
  EXPECT_THROW(darboux_potential(op("1", "0"), KernelElement{X * X, 1}), NotInKernel);
}

TEST(Darboux, PairExamples) {
  TPair t(1, 1);
  auto a = darboux_pair({1, 1}, t, 1, {Rat(0), Rat(1)});
  EXPECT_EQ(a.pair, PolyPair(1, 1));
  EXPECT_TRUE(a.certified);
  auto b = darboux_pair({1, 1}, t, 1, {Rat(1), Rat(0)});
  EXPECT_EQ(b.pair, PolyPair(X, 1));
  EXPECT_EQ(from_pair(b.pair, b.tdata, 1).U, RationalFunction(Poly(2), X * X));
  EXPECT_TRUE(b.certified);
  auto c = darboux_pair({1, 1}, TPair(X * X, 1), 1, {Rat(0), Rat(1)});
  EXPECT_TRUE(c.certified);
  EXPECT_EQ(c.tdata, TPair(1, X * X));
  EXPECT_THROW(darboux_pair({1, 1}, t, 1, {Rat(0), Rat(0)}), std::invalid_argument);
}

TEST(Darboux, DoubleSwapReturnsLine) {
  TPair t(X * X, 1);
  for (const auto& node : enumerate_population(t, 2)) {
    auto once = darboux_pair(node.pair, t, 1, {Rat(0), Rat(1)});
    auto twice = darboux_pair(once.pair, once.tdata, 1, {Rat(0), Rat(1)});
    EXPECT_EQ(twice.tdata, t);
    EXPECT_EQ(canonical_line(twice.pair, t), canonical_line(node.pair, t));
  }
}

TEST(Darboux, PredictedExponents) {
  auto L = op("1", "0");
  KernelElement psi{X, 1};
  EXPECT_TRUE(same_exponents(predicted_exponents(L, psi), exponent_map(darboux_potential(L, psi))));
  EXPECT_EQ(exponent_on(predicted_exponents(L, psi), X), Rat(1));
  // P = x^2 with a regular kernel element at 0.
  auto M = op("x^2", "0");
  KernelElement one{Poly(1), 1};
  EXPECT_EQ(exponent_on(predicted_exponents(M, one), X), Rat(1));
}

TEST(Darboux, KernelOfOperator) {
  auto ks = kernel_of_op(op("1", "2/x^2"));
  EXPECT_EQ(ks.Q, pow(X, 2));
  EXPECT_EQ(ks.N1, Poly(1));
  EXPECT_EQ(ks.N2, pow(X, 3));
}

TEST(Darboux, ObstructionSet) {
  EXPECT_TRUE(in_obstruction_set(make_rat(3, 2), 2));  // -1/2 + 2
  EXPECT_FALSE(in_obstruction_set(Rat(1), 2));
  EXPECT_TRUE(in_obstruction_set(make_rat(1, 2), 0));
  EXPECT_FALSE(in_obstruction_set(Rat(0), 0));
}

TEST(Darboux, ReduceExponents) {
  auto r = reduce_exponents(op("1", "6/x^2"));
  for (const auto& [q, m] : exponent_map(r.canonical)) EXPECT_TRUE(m == 0 || m == 1);
  EXPECT_EQ(r.steps.size(), 1u);
  auto fixed = reduce_exponents(op("1", "2/x^2"));
  EXPECT_TRUE(fixed.steps.empty());
  EXPECT_THROW(reduce_exponents(op("1", "2/(x^2*(x-1)^2)")), NotLambdaMF);
}

TEST(Darboux, RecoverExamples) {
  auto a = recover_line(op("1", "2/x^2"));
  EXPECT_EQ(a.pair, PolyPair(X, 1));
  EXPECT_EQ(a.tdata, TPair(1, 1));
  for (int k = 0; k <= 4; ++k) {
    for (int tm = 0; tm <= k; ++tm) {
      Rat mp = make_rat(tm, 2);
      SchrodingerOp L{pow(X, k), RationalFunction(Poly(mp * (mp + 1)), X * X)};
      if (mp == 0) L.U = RationalFunction();
      auto r = recover_line(L);
      EXPECT_EQ(from_pair(r.pair, r.tdata, 1).U, L.U);
      EXPECT_EQ(r.tdata, TPair(pow(X, k - tm), pow(X, tm))) << "k=" << k << " 2m'=" << tm;
      EXPECT_EQ(r.pair, PolyPair(1, 1));
    }
  }
}

TEST(Darboux, RecoverRoundTrip) {
  for (const TPair& t : {TPair(1, 1), TPair(X * X, 1), TPair(X, X)}) {
    for (const auto& node : enumerate_population(t, 2)) {
      auto r = recover_line(from_pair(node.pair, t, 1));
      EXPECT_EQ(r.tdata, t);
      EXPECT_EQ(canonical_line(r.pair, t), canonical_line(node.pair, t));
      EXPECT_EQ(replay_word(r.word).first, r.pair);
    }
  }
}

TEST(Classify, Examples) {
  auto a = classify_xk(op("x^2", "(3/4)/x^2"));
  EXPECT_EQ(a.m, make_rat(1, 2));
  EXPECT_EQ(a.word.size(), 0u);
  auto b = classify_xk(op("1", "0"));
  EXPECT_EQ(b.m, Rat(0));
  EXPECT_THROW(classify_xk(op("x^2-1", "0")), NotXk);
}

TEST(Classify, CanonicalM) {
  EXPECT_EQ(canonical_m(Rat(0), 0), Rat(0));
  EXPECT_EQ(canonical_m(Rat(1), 0), Rat(0));
  EXPECT_EQ(canonical_m(make_rat(1, 2), 2), make_rat(1, 2));
  EXPECT_EQ(canonical_m(make_rat(5, 2), 2), make_rat(1, 2));
  for (int k = 0; k <= 6; ++k) {
    for (int tm = 0; 2 * tm <= k; ++tm) {
      Rat m = make_rat(tm, 2);
      if (m > make_rat(k, 4)) continue;
      EXPECT_EQ(canonical_m(m, k), m);
      EXPECT_EQ(canonical_m(m + make_rat(k + 2, 2), k), m);
    }
  }
}

TEST(Classify, ScrambledOperators) {
  for (int k = 0; k <= 3; ++k) {
    TPair t(pow(X, k), 1);
    for (const auto& node : enumerate_population(t, 2)) {
      SchrodingerOp L = from_pair(node.pair, t, 1);
      auto c = classify_xk(L);
      EXPECT_LE(c.m, make_rat(k, 4));
      auto [pair, tdata] = replay_word(c.word);
      EXPECT_EQ(from_pair(pair, tdata, 1).U, L.U);
    }
  }
}

TEST(Intertwiner, SmallNodes) {
  TPair t(X * X, 1);
  for (const auto& node : enumerate_population(t, 2)) {
    for (const KernelChoice& c : {KernelChoice{Rat(0), Rat(1)}, KernelChoice{Rat(1), Rat(2)}}) {
      for (const auto& e : intertwiner_check(node.pair, t, 1, c)) EXPECT_TRUE(e.pass) << e.test;
    }
  }
  // psi = 1 for d^2: D_psi = d.
  auto L = op("1", "0");
  QuasiRational one{RationalFunction(1), RationalFunction()};
  QuasiRational x2{RationalFunction(X * X), RationalFunction()};
  for (const auto& e : intertwiner_check(L, one, {{"x^2", x2}})) EXPECT_TRUE(e.pass);
}
