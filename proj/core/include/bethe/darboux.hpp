#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bethe/operators.hpp"

namespace bethe {

/// Selects psi = (c1*ytilde_j + c2*y_j) / (sqrt(T_j) y_{j+1}) in the kernel
/// of L_j(y, T); ytilde_j is the particular solution of the direction-j
/// reproduction. Projective: (c1, c2) and (s*c1, s*c2) act the same.
struct KernelChoice {
  Rat c1{0};
  Rat c2{1};
};

struct DarbouxStep {
  KernelChoice choice;
  PolyPair pair;  // snapshot after the step
  TPair tdata;
};

/// Pair-level Darboux transformations, all acting on L_1 forms.
struct DarbouxWord {
  PolyPair start_pair;
  TPair start_t;
  std::vector<DarbouxStep> steps;

  std::size_t size() const { return steps.size(); }
};

/// psi = N / sqrt(Q).
struct KernelElement {
  Poly N;
  Poly Q{1};

  QuasiRational as_function() const { return QuasiRational::over_sqrt(RationalFunction(N), Q); }
};

/// Ker(d^2 - U) = span{N1, N2} / sqrt(Q) with Q = prod q^{2m} over pole
/// classes; N1 has the lowest possible degree, N2 has no x^{deg N1} term.
struct KernelSpace {
  Poly Q{1};
  Poly N1, N2;

  KernelElement element(const KernelChoice& c) const { return {c.c1 * N1 + c.c2 * N2, Q}; }
};

/// Modified exponent per class of points, classes pairwise coprime. Points
/// not covered have exponent 0.
using ExponentMap = std::vector<std::pair<Poly, Rat>>;

ExponentMap exponent_map(const SchrodingerOp& op);
/// Exponent on a class contained in one of the map's classes (0 if none).
Rat exponent_on(const ExponentMap& map, const Poly& piece);
bool same_exponents(const ExponentMap& a, const ExponentMap& b);

/// h = ln'(sqrt(P) psi).
RationalFunction darboux_h(const SchrodingerOp& op, const KernelElement& psi);

/// P^{-1}(d^2 - (h^2 - h')). Throws NotInKernel unless
/// U = (h - P'/(2P))^2 + (h - P'/(2P))'.
SchrodingerOp darboux_potential(const SchrodingerOp& op, const RationalFunction& h);
SchrodingerOp darboux_potential(const SchrodingerOp& op, const KernelElement& psi);

struct DarbouxPairResult {
  PolyPair pair;
  TPair tdata;
  /// from_pair(pair, tdata, j) equals the potential-level transform.
  bool certified = false;
};

/// L_j(y, T)^psi = L_j(swap(y'), swap(T)) where y' is y with y_j replaced by
/// c1*ytilde_j + c2*y_j. Throws Infertile, std::invalid_argument for (0,0).
DarbouxPairResult darboux_pair(const PolyPair& pair, const TPair& t, int j, const KernelChoice& choice);

/// Replays the word from its start; returns the final (pair, T).
std::pair<PolyPair, TPair> replay_word(const DarbouxWord& word);

/// Exponents of L^psi from the local exponents mu_s of psi:
/// m~ = max(k/2 + mu, -1 - k/2 - mu), k = ord_s P.
ExponentMap predicted_exponents(const SchrodingerOp& op, const KernelElement& psi);

/// Polynomial kernel of a lambda-monodromy-free operator. Throws
/// RecoveryFailed if no two-dimensional space is found up to degree d_max
/// (after doubling it a few times); d_max <= 0 selects the bound from the
/// exponent at infinity.
KernelSpace kernel_of_op(const SchrodingerOp& op, int d_max = 0);

/// True when m at a zero of P of order k lies in -1/2 + (k/2 + 1) Z_{>0}.
bool in_obstruction_set(const Rat& m, int k);

struct PotentialStep {
  KernelChoice choice;   // in the basis of kernel_of_op(before)
  KernelElement psi;
  SchrodingerOp before;
  SchrodingerOp after;
};

struct ReductionResult {
  SchrodingerOp canonical;
  std::vector<PotentialStep> steps;
};

/// Generic Darboux transformations until m_s in {0,1} off the zeros of P
/// and m_z <= k_z/2 at a zero of order k_z. Throws ObstructionViolated,
/// NotLambdaMF.
ReductionResult reduce_exponents(const SchrodingerOp& op, int max_steps = 64);

struct RecoveredLine {
  PolyPair pair;
  TPair tdata;
  /// From the critical point reached by reduce_exponents back to `pair`.
  DarbouxWord word;
};

/// (y, T) with from_pair(y, T, 1) = op. Throws NotLambdaMF, RecoveryFailed.
RecoveredLine recover_line(const SchrodingerOp& op);

struct XkClassification {
  int k = 0;
  Rat m{0};
  Rat m0{0};  // modified exponent of op at x = 0
  /// Starts at ((1,1), T) with L_1 = x^{-k}(d^2 - m(m+1)/x^2).
  DarbouxWord word;
};

/// Canonical m <= k/4 with m0 - m or m0 - (k/2 - m) in (k/2 + 1) Z_{>=0}.
Rat canonical_m(const Rat& m0, int k);

/// Throws NotXk, NotLambdaMF.
XkClassification classify_xk(const SchrodingerOp& op);

struct IntertwinerEntry {
  std::string test;
  bool pass = false;
};

/// L^psi D_psi f = D_psi L f with D_psi = P^{-1/2}(d - ln' psi), checked
/// exactly on quasi-rational test functions.
std::vector<IntertwinerEntry> intertwiner_check(const SchrodingerOp& op, const QuasiRational& psi,
                                                const std::vector<std::pair<std::string, QuasiRational>>& tests);

/// Pair-backed form: psi from `choice`, tests are the kernel frame elements
/// and x times them.
std::vector<IntertwinerEntry> intertwiner_check(const PolyPair& pair, const TPair& t, int j,
                                                const KernelChoice& choice);

}  // namespace bethe
