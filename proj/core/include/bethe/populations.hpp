#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bethe/poly.hpp"

namespace bethe {

/// Data (T0, T1), both monic and nonzero; indices are taken mod 2.
class TPair {
 public:
  TPair() : t0_(1), t1_(1), p_(1) {}
  /// Monic-normalizes; throws std::invalid_argument on a zero entry.
  TPair(const Poly& t0, const Poly& t1);

  const Poly& T0() const { return t0_; }
  const Poly& T1() const { return t1_; }
  const Poly& T(int i) const { return (i & 1) ? t1_ : t0_; }
  const Poly& P() const { return p_; }
  TPair swapped() const { return {t1_, t0_}; }

  friend bool operator==(const TPair& a, const TPair& b) { return a.t0_ == b.t0_ && a.t1_ == b.t1_; }

 private:
  Poly t0_, t1_, p_;
};

/// (y0, y1), monic; the scalar factor carries no information.
struct PolyPair {
  Poly y0{1};
  Poly y1{1};

  PolyPair() = default;
  PolyPair(const Poly& a, const Poly& b);

  const Poly& y(int i) const { return (i & 1) ? y1 : y0; }
  Poly& y(int i) { return (i & 1) ? y1 : y0; }
  PolyPair swapped() const { return {y1, y0}; }

  friend bool operator==(const PolyPair& a, const PolyPair& b) { return a.y0 == b.y0 && a.y1 == b.y1; }
};

/// Coordinates in the basis (omega_0, omega_1, delta).
struct WeightVector {
  Rat c0, c1, cdelta;

  static WeightVector omega(int i);
  static WeightVector delta() { return {Rat(0), Rat(0), Rat(1)}; }
  static WeightVector rho() { return {Rat(1), Rat(1), Rat(1)}; }
  /// alpha_1 = 2 omega_1 - 2 omega_0, alpha_0 = delta - alpha_1.
  static WeightVector alpha(int i);

  /// <mu, alpha_i^vee>.
  const Rat& pairing(int i) const { return (i & 1) ? c1 : c0; }
  /// s_i(mu) = mu - <mu, alpha_i^vee> alpha_i.
  WeightVector reflect(int i) const;
  /// s_i . mu = s_i(mu + rho) - rho.
  WeightVector shifted_reflect(int i) const;

  friend WeightVector operator+(const WeightVector& a, const WeightVector& b) {
    return {a.c0 + b.c0, a.c1 + b.c1, a.cdelta + b.cdelta};
  }
  friend WeightVector operator-(const WeightVector& a, const WeightVector& b) {
    return {a.c0 - b.c0, a.c1 - b.c1, a.cdelta - b.cdelta};
  }
  friend WeightVector operator*(const Rat& s, const WeightVector& a) {
    return {s * a.c0, s * a.c1, s * a.cdelta};
  }
  friend bool operator==(const WeightVector& a, const WeightVector& b) {
    return a.c0 == b.c0 && a.c1 == b.c1 && a.cdelta == b.cdelta;
  }
};

struct ReproductionStep {
  int direction = 0;
  Rat constant{0};
  /// Take the lowest-degree member of the family instead of particular + c*y.
  bool lowest_degree = false;
};

/// Wr(old_y, new_y) = scale * T_i * y_{i+1}^2 for the step in direction i.
struct WronskianCertificate {
  int direction = 0;
  Poly old_y;
  Poly new_y;
  Rat scale{1};
};

struct PopulationNode {
  PolyPair pair;
  TPair tdata;
  std::vector<ReproductionStep> word;
  std::vector<WronskianCertificate> certificates;
};

struct GenericityReport {
  bool generic = true;
  std::string failing;  // e.g. "gcd(y0,T0)"
  Poly witness{1};      // the offending gcd
};

/// The one-parameter family {particular + c*y} of solutions of Wr(y, .) = W.
/// `particular` satisfies Wr(y, particular) = W exactly and has no x^deg(y)
/// term.
struct ReproductionFamily {
  Poly particular;
  Poly direction;
  /// Lowest-degree member, monic.
  Poly lowest() const;
};

GenericityReport is_generic(const PolyPair& pair, const TPair& t);

/// Solves Wr(y, ytilde) = W over polynomials by exact linear algebra; empty
/// when there is no polynomial solution.
std::optional<ReproductionFamily> solve_reproduction(const Poly& y, const Poly& w);

/// Family for direction i: Wr(y_i, .) = T_i y_{i+1}^2.
std::optional<ReproductionFamily> reproduction_family(const PolyPair& pair, const TPair& t, int i);

bool is_fertile(const PolyPair& pair, const TPair& t);
bool is_critical(const PolyPair& pair, const TPair& t);

/// Throws Infertile when direction `step.direction` has no solution.
PopulationNode reproduce(const PopulationNode& node, const ReproductionStep& step);

/// Replays `word` from (1,1); every intermediate node, root first.
std::vector<PopulationNode> replay(const TPair& t, const std::vector<ReproductionStep>& word);

/// All nodes reachable from (1,1) by alternating words of length <= depth,
/// with the family parameter drawn from `constants`. Duplicate pairs are
/// kept once (shortest word first).
std::vector<PopulationNode> enumerate_population(const TPair& t, int depth,
                                                 const std::vector<Rat>& constants = {Rat(0), Rat(1)});

/// One weight per class of points with equal (ord T0, ord T1), already
/// multiplied by the number of points in the class.
std::vector<WeightVector> weights_of(const TPair& t);

/// Degrees forced by the shifted reflection s_i when a reproduction in
/// direction i changes the degree of y_i.
std::pair<int, int> weyl_degree_predict(const std::vector<WeightVector>& weights, std::pair<int, int> degs, int i);

/// Largest absolute left-hand side of the Bethe ansatz equations evaluated
/// at numerically computed roots. Throws NotGeneric, NonConvergence.
double bethe_residuals(const PolyPair& pair, const TPair& t, double tol = 1e-13);

struct SuperFertileNormalization {
  Poly f0{1}, f1{1};
  PolyPair pair;
  TPair tdata;
  std::vector<ReproductionStep> reduction;
};

/// Writes a super-fertile pair as (f0 y0, f1 y1) with y in a population
/// for T = (T0 f1^2/f0^2, T1 f0^2/f1^2). Throws NotSuperFertile,
/// NotPolynomial.
SuperFertileNormalization normalize_superfertile(const PolyPair& pair, const TPair& t);

/// ((f0 y0, f1 y1), (T0 f0^2/f1^2, T1 f1^2/f0^2)); throws NotPolynomial.
std::pair<PolyPair, TPair> multiply_pair(const PolyPair& pair, const TPair& t, const Poly& f0, const Poly& f1);

/// Replaces y1 by the lowest-degree member of its direction-1 family, the
/// canonical representative of the line [y^{[1]}]. Throws Infertile.
PolyPair canonical_line(const PolyPair& pair, const TPair& t);

/// Lowers degrees by reproductions until (1,1) is reached; the returned
/// word, replayed in reverse, climbs back. Throws Error when the pair is not
/// in the population of (1,1).
std::vector<std::pair<PolyPair, ReproductionStep>> descend_to_root(const PolyPair& pair, const TPair& t);

}  // namespace bethe
