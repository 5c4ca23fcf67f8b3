#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bethe/populations.hpp"

namespace bethe {

/// Antiderivative constants of one step
///   phi_{n+1} = int T_i ( int T_{i+1} phi_n + inner ) + outer.
/// The `outer` constant of the last step used adds a multiple of phi_1 = 1
/// and leaves theta unchanged; earlier outer constants do not.
struct StepConstants {
  Rat inner{0};
  Rat outer{0};
};

struct PhiSequence {
  TPair tdata;
  int direction = 0;
  std::vector<Poly> phis;  // phis[0] = phi_1 = 1
  std::vector<StepConstants> constants;
};

struct ThetaSequence {
  TPair tdata;
  int direction = 0;
  std::vector<Poly> raw;     // Wr(phi_1..phi_n) / (T_i^{a_n} T_{i+1}^{a_{n-1}})
  std::vector<Poly> thetas;  // monic
  std::vector<Rat> scales;   // raw[n] = scales[n] * thetas[n]
  std::vector<StepConstants> constants;
};

/// a_{2r} = r^2, a_{2r+1} = r(r+1).
long a_seq(int n);

/// phi_1..phi_n; missing constants are zero.
PhiSequence phi_sequence(const TPair& t, int i, int n, const std::vector<StepConstants>& constants = {});

/// theta_0..theta_{n_max}. Throws InexactDivision if the quotient is not a
/// polynomial.
ThetaSequence theta_sequence(const TPair& t, int i, int n_max, const std::vector<StepConstants>& constants = {});

Poly theta_raw(const TPair& t, int i, int n, const std::vector<StepConstants>& constants = {});
/// Monic theta_n.
Poly theta_n(const TPair& t, int i, int n, const std::vector<StepConstants>& constants = {});

struct RecursionCheck {
  int n = 0;
  bool pass = false;
  /// Wr(theta_{n-1}, theta_{n+1}) = scalar * T_{n+i} theta_n^2 for the monic thetas.
  Rat scalar{0};
};

struct RecursionReport {
  std::vector<RecursionCheck> checks;
  bool all_pass() const;
};

RecursionReport verify_theta_recursion(const ThetaSequence& seq);

/// Monic Adler-Moser polynomial theta_n for T = (1,1).
Poly adler_moser(int n, const std::vector<StepConstants>& constants = {});

/// (y0 o f, y1 o f) with data (f' T0 o f, f' T1 o f).
std::pair<PolyPair, TPair> compose_change_of_variables(const PolyPair& pair, const TPair& t, const Poly& f);
ThetaSequence compose_change_of_variables(const ThetaSequence& seq, const Poly& f);

struct ThetaMatch {
  bool matched = false;
  /// Theta direction: the first reproduction of the word is in direction 1 - i.
  int direction = 0;
  std::vector<StepConstants> constants;
  std::string detail;
};

/// Finds inner constants for which the pairs along `node.word` are
/// (theta_n o f, theta_{n+1} o f) up to order, with theta computed for
/// `theta_t`. With f = x and theta_t = node.tdata this identifies a
/// population node with a theta pair.
ThetaMatch match_population_node(const PopulationNode& node, const TPair& theta_t, const Poly& f = Poly::x());

}  // namespace bethe
