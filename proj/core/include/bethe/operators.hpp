#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bethe/populations.hpp"
#include "bethe/quotient.hpp"
#include "bethe/ratfunc.hpp"

namespace bethe {

/// L = P^{-1} (d^2 - U), P monic.
struct SchrodingerOp {
  Poly P{1};
  RationalFunction U;

  SchrodingerOp() = default;
  SchrodingerOp(const Poly& p, const RationalFunction& u);
};

/// Local data at the roots of a squarefree pole class q of U. All roots of
/// q share the modified exponent m.
struct LocalDatum {
  Poly pole_class;
  std::shared_ptr<const Poly> modulus;
  Rat m{0};
  QElem a_minus2;
  QElem a_minus1;
};

/// Polynomial in lambda with coefficients in Q[s]/(q).
struct DeltaPoly {
  std::vector<QElem> coeffs;  // coeffs[k] multiplies lambda^k

  bool is_zero() const;
  /// -1 for the zero polynomial.
  int degree() const;
  QElem coeff(int k) const;
};

/// Kernel of L_j(y, T): span{num1, num2} / (sqrt(T_j) y_{j+1}), with
/// num1 = y_j and num2 the particular solution of Wr(y_j, .) = T_j y_{j+1}^2.
struct KernelBasis {
  int j = 0;
  Poly num1, num2;
  Poly den;        // y_{j+1}
  Poly sqrt_of;    // T_j
};

/// r * exp(int rho); closed under d/dx and multiplication by rational
/// functions. Used to apply operators to functions involving sqrt(T).
struct QuasiRational {
  RationalFunction r;
  RationalFunction rho;

  QuasiRational derivative() const { return {r.derivative() + r * rho, rho}; }
  /// f / sqrt(t), t a polynomial.
  static QuasiRational over_sqrt(const RationalFunction& f, const Poly& t);
};

/// (d^2 - U) psi.
QuasiRational apply(const SchrodingerOp& op, const QuasiRational& psi);

/// L_j(y, T): P = T0 T1, U = g' + g^2 with
/// g = y_j'/y_j - T_j'/(2 T_j) - y_{j+1}'/y_{j+1}.
SchrodingerOp from_pair(const PolyPair& pair, const TPair& t, int j);

/// Poles of order <= 2 and deg num(U) <= deg den(U) - 2.
bool fuchsian_check(const SchrodingerOp& op);

/// Pole classes with their modified exponents; simple poles get m = 0.
/// Throws NotTriangularNumber if some a_{-2} is not m(m+1) with 2m a
/// non-negative integer, Error if op is not Fuchsian.
std::vector<LocalDatum> poles_and_exponents(const SchrodingerOp& op);

/// Determinant of the (2m+1) x (2m+1) lower Hessenberg matrix with first
/// column a_{-1}, a_0(lambda), ..., a_{2m-1}(lambda), diagonal a_{-1} and
/// superdiagonal 1*2m, 2*(2m-1), ..., 2m*1, where
/// a_j(s, lambda) = a_j(s, 0) + lambda P^{(j)}(s)/j!.
DeltaPoly delta_poly(const SchrodingerOp& op, const LocalDatum& datum);

/// Same determinant from the column-elimination recursion for p_l; returns
/// (-1)^{2m} ((2m)!)^2 p_{2m}. Throws DivisionByZeroInRecursion.
DeltaPoly delta_poly_rec(const SchrodingerOp& op, const LocalDatum& datum);

/// Both determinant routes on explicit entries: a[k] = a_{k-1}(s, 0) for
/// k = 0..2m, b[k] = lambda-slope of a_{k-1} (b[0] = 0, b[1] = P(s)).
DeltaPoly delta_from_entries(const Rat& m, const std::vector<QElem>& a, const std::vector<QElem>& b);
DeltaPoly delta_rec_from_entries(const Rat& m, const std::vector<QElem>& a, const std::vector<QElem>& b);

/// Closed form of the top lambda-coefficient of Delta. Half-integer m:
/// (-1)^{3m-1/2} ((2m)!)^2 Ps^{m+1/2} / (2^{m-1/2} (m-1/2)! (2m-1)!!).
/// Integer m: (-1)^m Ps^m ((2m)!)^2 / ((2m-1)!!)^2 * (a_{-1} - P'(s) m(m+1)/(2 Ps)).
Rat leading_delta_coeff(const Rat& m, const Rat& a_minus1, const Rat& ps, const Rat& pprime_s);
QElem leading_delta_coeff(const Rat& m, const QElem& a_minus1, const QElem& ps, const QElem& pprime_s);

struct ResidueEntry {
  Poly pole_class;
  Rat m{0};
  QElem a_minus1;
  QElem expected;  // m(m+1) P'(s) / (2 P(s))
  bool integral_m = true;
  bool ok = true;
};

struct ResidueReport {
  std::vector<ResidueEntry> entries;  // pole classes coprime to P
  bool residues_sum_to_zero = true;
  bool ok() const;
};

ResidueReport residue_check(const SchrodingerOp& op);

struct PoleEvidence {
  LocalDatum datum;
  DeltaPoly delta;
  bool vanishes = false;
};

struct LambdaMFVerdict {
  bool lambda_mf = false;
  bool fuchsian = false;
  std::string reason;
  std::vector<PoleEvidence> evidence;
};

LambdaMFVerdict is_lambda_mf(const SchrodingerOp& op);

/// Throws Infertile when direction j has no polynomial solution.
KernelBasis kernel_basis(const PolyPair& pair, const TPair& t, int j);

/// The two kernel elements as quasi-rational functions.
std::pair<QuasiRational, QuasiRational> kernel_functions(const KernelBasis& kb);

/// Modified exponent at a rational point (0 where U is regular).
Rat exponent_at(const SchrodingerOp& op, const Rat& s);

}  // namespace bethe
