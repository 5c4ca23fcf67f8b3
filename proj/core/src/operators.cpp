#include "bethe/operators.hpp"

#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>

#include "bethe/classes.hpp"
#include "bethe/errors.hpp"
#include "bethe/laurent.hpp"
#include "bethe/roots.hpp"

namespace bethe {

SchrodingerOp::SchrodingerOp(const Poly& p, const RationalFunction& u) : U(u) {
  if (p.is_zero()) throw std::invalid_argument("SchrodingerOp: P must be non-zero");
  P = p.monic();
}

bool DeltaPoly::is_zero() const {
  for (const auto& c : coeffs)
    if (!c.is_zero()) return false;
  return true;
}

int DeltaPoly::degree() const {
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k)
    if (!coeffs[static_cast<std::size_t>(k)].is_zero()) return k;
  return -1;
}

QElem DeltaPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs.size())) return QElem(0);
  return coeffs[static_cast<std::size_t>(k)];
}

QuasiRational QuasiRational::over_sqrt(const RationalFunction& f, const Poly& t) {
  return {f, -RationalFunction(t.derivative(), t) * RationalFunction(Rat(1, 2))};
}

QuasiRational apply(const SchrodingerOp& op, const QuasiRational& psi) {
  QuasiRational d2 = psi.derivative().derivative();
  return {d2.r - op.U * psi.r, psi.rho};
}

SchrodingerOp from_pair(const PolyPair& pair, const TPair& t, int j) {
  const Poly& tj = t.T(j);
  RationalFunction g = log_derivative(pair.y(j)) - RationalFunction(Rat(1, 2)) * RationalFunction(tj.derivative(), tj) -
                       log_derivative(pair.y(j + 1));
  return SchrodingerOp(t.P(), g.derivative() + g * g);
}

bool fuchsian_check(const SchrodingerOp& op) {
  if (op.U.is_zero()) return true;
  if (op.U.num().degree() > op.U.den().degree() - 2) return false;
  return squarefree_decomposition(op.U.den()).size() <= 2;
}

namespace {

std::optional<Rat> rat_sqrt(const Rat& r) {
  if (r < 0) return std::nullopt;
  const Int& n = r.get_num();
  const Int& d = r.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  Int sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  Rat out(sn, sd);
  out.canonicalize();
  return out;
}

// m >= 0 with m(m+1) = c and 2m integral.
std::optional<Rat> triangular_m(const Rat& c) {
  auto root = rat_sqrt(1 + 4 * c);
  if (!root) return std::nullopt;
  Rat m = (*root - 1) / 2;
  if (m < 0 || !is_half_integer(m)) return std::nullopt;
  return m;
}

LocalDatum make_datum(const SchrodingerOp& op, const Poly& q, const Rat& m) {
  LocalDatum d;
  d.pole_class = q.monic();
  d.modulus = make_modulus(q);
  d.m = m;
  LaurentSlice s = laurent_expand(op.U, d.modulus, 0);
  d.a_minus2 = s.at(-2);
  d.a_minus1 = s.at(-1);
  return d;
}

void double_pole_data(const SchrodingerOp& op, const Poly& piece, std::vector<LocalDatum>& out) {
  auto mod = make_modulus(piece);
  QElem v = laurent_expand(op.U, mod, 0).at(-2);
  if (v.is_rational()) {
    auto m = triangular_m(v.rational_value());
    if (!m) throw NotTriangularNumber("a_{-2} = " + to_string(v.rational_value()) + " at roots of " + to_string(piece) +
                                      " is not m(m+1) for a half-integer m");
    out.push_back(make_datum(op, piece, *m));
    return;
  }
  // a_{-2} differs between roots: split by the numerically suggested
  // constants, each verified by an exact gcd.
  std::set<long> twice_m;
  for (const Complex& z : roots_numeric(piece)) {
    Complex c = eval_complex(v.value(), z);
    Complex m = (std::sqrt(1.0 + 4.0 * c) - 1.0) / 2.0;
    long n = std::lround(2.0 * m.real());
    if (n >= 0) twice_m.insert(n);
  }
  Poly rest = piece;
  for (long n : twice_m) {
    Rat m(n, 2);
    m.canonicalize();
    Poly g = gcd(rest, v.value() - Poly(m * (m + 1)));
    if (g.degree() <= 0) continue;
    out.push_back(make_datum(op, g, m));
    rest = exact_div(rest, g);
  }
  if (rest.degree() > 0)
    throw NotTriangularNumber("a_{-2} at roots of " + to_string(rest) + " is not m(m+1) for a half-integer m");
}

using LPoly = std::vector<QElem>;

LPoly lp_mul(const LPoly& a, const LPoly& b) {
  if (a.empty() || b.empty()) return {};
  LPoly out(a.size() + b.size() - 1, QElem(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

void lp_axpy(LPoly& acc, const QElem& s, const LPoly& x) {
  if (acc.size() < x.size()) acc.resize(x.size(), QElem(0));
  for (std::size_t i = 0; i < x.size(); ++i) acc[i] += s * x[i];
}

DeltaPoly finish(LPoly c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  return DeltaPoly{std::move(c)};
}

int twice(const Rat& m) {
  Rat t = 2 * m;
  if (!is_integer(t) || t < 0) throw std::invalid_argument("modified exponent must be a non-negative half-integer");
  return static_cast<int>(t.get_num().get_si());
}

Int factorial(long n) {
  Int out = 1;
  for (long k = 2; k <= n; ++k) out *= k;
  return out;
}

Int double_factorial(long n) {
  Int out = 1;
  for (long k = n; k > 1; k -= 2) out *= k;
  return out;
}

void entries_for(const SchrodingerOp& op, const LocalDatum& datum, std::vector<QElem>& a, std::vector<QElem>& b) {
  const int n = twice(datum.m);
  LaurentSlice s = laurent_expand(op.U, datum.modulus, std::max(n - 1, 0));
  a.clear();
  b.clear();
  for (int k = 0; k <= n; ++k) {
    a.push_back(s.at(k - 1));
    b.push_back(k == 0 ? QElem(datum.modulus, Poly()) : QElem::lift(datum.modulus, op.P.taylor_coeff(k - 1)));
  }
}

// Splits a squarefree piece so that each part lies either off the zeros of
// P or on zeros of one common order.
std::vector<Poly> refine_by(const Poly& piece, const Poly& p) {
  Poly g = gcd(piece, p);
  if (g.degree() <= 0) return {piece};
  std::vector<Poly> out;
  const Poly inputs[] = {g, p};
  for (const Poly& b : coprime_base(inputs))
    if (gcd(b, g) == b) out.push_back(b);
  Poly rest = exact_div(piece, g);
  if (rest.degree() > 0) out.push_back(rest);
  return out;
}

}  // namespace

std::vector<LocalDatum> poles_and_exponents(const SchrodingerOp& op) {
  if (!fuchsian_check(op)) throw Error("operator is not Fuchsian");
  std::vector<LocalDatum> out;
  if (op.U.den().degree() <= 0) return out;
  auto parts = squarefree_decomposition(op.U.den());
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (parts[k].degree() <= 0) continue;
    for (const Poly& rough : split_rational_roots(parts[k])) {
      for (const Poly& piece : refine_by(rough, op.P)) {
        if (k == 0) {
          out.push_back(make_datum(op, piece, Rat(0)));
        } else {
          double_pole_data(op, piece, out);
        }
      }
    }
  }
  return out;
}

DeltaPoly delta_from_entries(const Rat& m, const std::vector<QElem>& a, const std::vector<QElem>& b) {
  const int n = twice(m) + 1;
  if (static_cast<int>(a.size()) < n || static_cast<int>(b.size()) < n)
    throw std::invalid_argument("delta_from_entries: need 2m+1 entries");
  auto entry = [&](int k) { return LPoly{a[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(k)]}; };
  auto super = [&](int r) { return Rat((r + 1) * (n - 1 - r)); };

  // Expansion of the lower Hessenberg determinant along its last row.
  std::vector<LPoly> d{LPoly{QElem(1)}};
  for (int k = 1; k <= n; ++k) {
    LPoly acc;
    for (int c = 0; c < k; ++c) {
      Rat coeff = ((k - 1 - c) % 2 == 0) ? Rat(1) : Rat(-1);
      for (int r = c; r <= k - 2; ++r) coeff *= super(r);
      if (coeff == 0) continue;
      lp_axpy(acc, QElem(coeff), lp_mul(entry(k - 1 - c), d[static_cast<std::size_t>(c)]));
    }
    d.push_back(std::move(acc));
  }
  return finish(d.back());
}

DeltaPoly delta_rec_from_entries(const Rat& m, const std::vector<QElem>& a, const std::vector<QElem>& b) {
  const int n = twice(m);
  if (static_cast<int>(a.size()) < n + 1 || static_cast<int>(b.size()) < n + 1)
    throw std::invalid_argument("delta_rec_from_entries: need 2m+1 entries");
  // A(j) = a_j(s, lambda)
  auto A = [&](int j) { return LPoly{a[static_cast<std::size_t>(j + 1)], b[static_cast<std::size_t>(j + 1)]}; };
  std::vector<LPoly> p{A(-1)};
  for (int l = 0; l < n; ++l) {
    LPoly next = A(l);
    for (int j = 0; j <= l; ++j) {
      const long den = static_cast<long>(l - j + 1) * (n - l + j);
      if (den == 0) throw DivisionByZeroInRecursion("zero denominator at l = " + std::to_string(l));
      lp_axpy(next, QElem(Rat(-1, 1) / Rat(den)), lp_mul(A(j - 1), p[static_cast<std::size_t>(l - j)]));
    }
    p.push_back(std::move(next));
  }
  Int f = factorial(n);
  Rat scale(f * f);
  if (n % 2 == 1) scale = -scale;
  LPoly out;
  lp_axpy(out, QElem(scale), p.back());
  return finish(out);
}

DeltaPoly delta_poly(const SchrodingerOp& op, const LocalDatum& datum) {
  std::vector<QElem> a, b;
  entries_for(op, datum, a, b);
  return delta_from_entries(datum.m, a, b);
}

DeltaPoly delta_poly_rec(const SchrodingerOp& op, const LocalDatum& datum) {
  std::vector<QElem> a, b;
  entries_for(op, datum, a, b);
  return delta_rec_from_entries(datum.m, a, b);
}

QElem leading_delta_coeff(const Rat& m, const QElem& a_minus1, const QElem& ps, const QElem& pprime_s) {
  const int n = twice(m);
  const Int nf = factorial(n);
  const Rat nf2(nf * nf);
  if (n % 2 == 1) {
    const long k = (n - 1) / 2;  // m = k + 1/2
    QElem pw(1);
    for (long i = 0; i <= k; ++i) pw *= ps;
    Rat c = nf2 / (Rat(Int(1) << static_cast<mp_bitcnt_t>(k)) * Rat(factorial(k)) * Rat(double_factorial(n - 1)));
    if (k % 2 == 0) c = -c;
    return QElem(c) * pw;
  }
  const long mi = n / 2;
  QElem pw(1);
  for (long i = 0; i < mi; ++i) pw *= ps;
  const Int df = double_factorial(n - 1);
  Rat c = nf2 / Rat(df * df);
  if (mi % 2 == 1) c = -c;
  if (mi == 0) return a_minus1;
  QElem bracket = a_minus1 - QElem(make_rat(mi * (mi + 1), 2)) * pprime_s * ps.inverse();
  return QElem(c) * pw * bracket;
}

Rat leading_delta_coeff(const Rat& m, const Rat& a_minus1, const Rat& ps, const Rat& pprime_s) {
  if (ps == 0) throw std::invalid_argument("leading_delta_coeff: P(s) must be non-zero");
  return leading_delta_coeff(m, QElem(a_minus1), QElem(ps), QElem(pprime_s)).rational_value();
}

bool ResidueReport::ok() const {
  if (!residues_sum_to_zero) return false;
  for (const auto& e : entries)
    if (!e.ok) return false;
  return true;
}

ResidueReport residue_check(const SchrodingerOp& op) {
  ResidueReport rep;
  for (const LocalDatum& d : poles_and_exponents(op)) {
    if (gcd(d.pole_class, op.P).degree() > 0) continue;
    ResidueEntry e;
    e.pole_class = d.pole_class;
    e.m = d.m;
    e.a_minus1 = d.a_minus1;
    const QElem ps = QElem::lift(d.modulus, op.P);
    const QElem dps = QElem::lift(d.modulus, op.P.derivative());
    e.expected = QElem(d.m * (d.m + 1) / 2) * dps * ps.inverse();
    e.integral_m = is_integer(d.m);
    e.ok = e.integral_m && e.a_minus1 == e.expected;
    rep.entries.push_back(std::move(e));
  }
  const int dd = op.U.den().degree();
  if (dd >= 1) rep.residues_sum_to_zero = op.U.num().coeff(dd - 1) == 0;
  return rep;
}

LambdaMFVerdict is_lambda_mf(const SchrodingerOp& op) {
  LambdaMFVerdict v;
  v.fuchsian = fuchsian_check(op);
  if (!v.fuchsian) {
    v.reason = "potential is not Fuchsian";
    return v;
  }
  std::vector<LocalDatum> data;
  try {
    data = poles_and_exponents(op);
  } catch (const NotTriangularNumber& e) {
    v.reason = e.what();
    return v;
  }
  v.lambda_mf = true;
  for (const LocalDatum& d : data) {
    auto pieces = split_on_demand(d.pole_class, [&](std::shared_ptr<const Poly> mod) {
      LocalDatum local = make_datum(op, *mod, d.m);
      return std::make_pair(local, delta_poly(op, local));
    });
    for (auto& [q, res] : pieces) {
      PoleEvidence ev{res.first, res.second, res.second.is_zero()};
      if (!ev.vanishes && v.lambda_mf) {
        v.lambda_mf = false;
        v.reason = "Delta(s, lambda) does not vanish at roots of " + to_string(q);
      }
      v.evidence.push_back(std::move(ev));
    }
  }
  return v;
}

KernelBasis kernel_basis(const PolyPair& pair, const TPair& t, int j) {
  auto fam = reproduction_family(pair, t, j);
  if (!fam) throw Infertile("pair is not fertile in direction " + std::to_string(j & 1));
  return KernelBasis{j & 1, pair.y(j), fam->particular, pair.y(j + 1), t.T(j)};
}

std::pair<QuasiRational, QuasiRational> kernel_functions(const KernelBasis& kb) {
  return {QuasiRational::over_sqrt(RationalFunction(kb.num1, kb.den), kb.sqrt_of),
          QuasiRational::over_sqrt(RationalFunction(kb.num2, kb.den), kb.sqrt_of)};
}

Rat exponent_at(const SchrodingerOp& op, const Rat& s) {
  if (op.U.den().eval(s) != 0) return Rat(0);
  for (const LocalDatum& d : poles_and_exponents(op))
    if (d.pole_class.eval(s) == 0) return d.m;
  throw std::logic_error("exponent_at: pole not covered by any class");
}

}  // namespace bethe
