#include "bethe/darboux.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bethe/classes.hpp"
#include "bethe/errors.hpp"
#include "bethe/linsolve.hpp"

namespace bethe {

namespace {

const RationalFunction kHalf(Rat(1, 2));

RationalFunction half_log_derivative(const Poly& p) { return kHalf * log_derivative(p); }

Poly lcm(const Poly& a, const Poly& b) { return exact_div(a * b, gcd(a, b)).monic(); }

// Coefficient vectors of polynomial combinations: finds (c_0, .., c_{n-1})
// with sum c_i cols[i] = 0; returns the null space basis.
std::vector<std::vector<Rat>> poly_nullspace(const std::vector<Poly>& cols) {
  int rows = 1;
  for (const auto& c : cols) rows = std::max(rows, c.degree() + 1);
  Matrix<Rat> a(rows, cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k)
    for (int r = 0; r <= cols[k].degree(); ++r) a(r, k) = cols[k].coeff(r);
  return linear_solve(a, std::vector<Rat>(rows, Rat(0))).nullspace;
}

// Numerator of r after clearing the denominator d (d a multiple of den r).
Poly cleared(const RationalFunction& r, const Poly& d) {
  RationalFunction v = r * RationalFunction(d);
  if (!v.is_polynomial()) throw std::logic_error("cleared: denominator does not divide");
  return v.num();
}

// Choice (c1, c2) whose kernel element F/(sqrt(T_j) y_{j+1}) has F'/F = r.
KernelChoice choice_with_log_derivative(const PolyPair& pair, const TPair& t, int j, const RationalFunction& r) {
  auto fam = reproduction_family(pair, t, j);
  if (!fam) throw Infertile("pair is not fertile in direction " + std::to_string(j & 1));
  RationalFunction a = RationalFunction(fam->particular).derivative() - r * RationalFunction(fam->particular);
  RationalFunction b = RationalFunction(pair.y(j)).derivative() - r * RationalFunction(pair.y(j));
  Poly d = lcm(a.den(), b.den());
  auto ns = poly_nullspace({cleared(a, d), cleared(b, d)});
  if (ns.size() != 1) throw RecoveryFailed("kernel element is not in the span of the frame");
  return KernelChoice{ns[0][0], ns[0][1]};
}

bool covered_consistently(const ExponentMap& a, const ExponentMap& b) {
  for (const auto& [qa, ma] : a) {
    if (ma == 0) continue;
    Poly covered(1);
    for (const auto& [qb, mb] : b) {
      Poly g = gcd(qa, qb);
      if (g.degree() <= 0) continue;
      if (mb != ma) return false;
      covered *= g;
    }
    if (covered.monic() != qa.monic()) return false;
  }
  return true;
}

}  // namespace

ExponentMap exponent_map(const SchrodingerOp& op) {
  ExponentMap out;
  for (const auto& d : poles_and_exponents(op))
    if (d.m != 0) out.emplace_back(d.pole_class, d.m);
  return out;
}

Rat exponent_on(const ExponentMap& map, const Poly& piece) {
  for (const auto& [q, m] : map)
    if (gcd(q, piece).degree() > 0) return m;
  return Rat(0);
}

bool same_exponents(const ExponentMap& a, const ExponentMap& b) {
  return covered_consistently(a, b) && covered_consistently(b, a);
}

RationalFunction darboux_h(const SchrodingerOp& op, const KernelElement& psi) {
  if (psi.N.is_zero()) throw std::invalid_argument("darboux_h: psi must be non-zero");
  return half_log_derivative(op.P) + log_derivative(psi.N) - half_log_derivative(psi.Q);
}

SchrodingerOp darboux_potential(const SchrodingerOp& op, const RationalFunction& h) {
  RationalFunction g = h - half_log_derivative(op.P);
  if (op.U != g * g + g.derivative()) throw NotInKernel("psi is not in the kernel of the operator");
  return SchrodingerOp(op.P, h * h - h.derivative());
}

SchrodingerOp darboux_potential(const SchrodingerOp& op, const KernelElement& psi) {
  return darboux_potential(op, darboux_h(op, psi));
}

DarbouxPairResult darboux_pair(const PolyPair& pair, const TPair& t, int j, const KernelChoice& choice) {
  j &= 1;
  if (choice.c1 == 0 && choice.c2 == 0) throw std::invalid_argument("darboux_pair: kernel choice (0,0)");
  Poly f = choice.c2 * pair.y(j);
  if (choice.c1 != 0) {
    auto fam = reproduction_family(pair, t, j);
    if (!fam) throw Infertile("pair is not fertile in direction " + std::to_string(j));
    f += choice.c1 * fam->particular;
  }
  if (f.is_zero()) throw std::invalid_argument("darboux_pair: kernel choice gives zero");

  PolyPair moved = pair;
  moved.y(j) = f.monic();
  DarbouxPairResult out{moved.swapped(), t.swapped(), false};

  const SchrodingerOp op = from_pair(pair, t, j);
  const KernelElement psi{f, t.T(j) * pair.y(j + 1) * pair.y(j + 1)};
  out.certified = darboux_potential(op, psi).U == from_pair(out.pair, out.tdata, j).U;
  return out;
}

std::pair<PolyPair, TPair> replay_word(const DarbouxWord& word) {
  PolyPair pair = word.start_pair;
  TPair t = word.start_t;
  for (const auto& s : word.steps) {
    auto r = darboux_pair(pair, t, 1, s.choice);
    pair = r.pair;
    t = r.tdata;
  }
  return {pair, t};
}

ExponentMap predicted_exponents(const SchrodingerOp& op, const KernelElement& psi) {
  std::vector<Poly> inputs{op.P, psi.N, psi.Q};
  if (op.U.den().degree() > 0) inputs.push_back(op.U.den());
  ExponentMap out;
  for (const Poly& q : coprime_base(inputs)) {
    const Rat k(multiplicity(op.P, q));
    const Rat mu = Rat(multiplicity(psi.N, q)) - Rat(multiplicity(psi.Q, q)) / 2;
    const Rat a = k / 2 + mu;
    const Rat b = -1 - k / 2 - mu;
    const Rat m = a > b ? a : b;
    if (m != 0) out.emplace_back(q, m);
  }
  return out;
}

KernelSpace kernel_of_op(const SchrodingerOp& op, int d_max) {
  KernelSpace ks;
  for (const auto& d : poles_and_exponents(op)) {
    const Rat twice_m = 2 * d.m;
    ks.Q *= pow(d.pole_class, static_cast<int>(twice_m.get_num().get_si()));
  }
  // psi = N / sqrt(Q): N'' + 2 g0 N' + (g0' + g0^2 - U) N = 0, g0 = -Q'/(2Q)
  const RationalFunction g0 = -half_log_derivative(ks.Q);
  const RationalFunction c1 = RationalFunction(Rat(2)) * g0;
  const RationalFunction c0 = g0.derivative() + g0 * g0 - op.U;
  const Poly den = lcm(c1.den(), c0.den());
  const Poly p2 = den, p1 = cleared(c1, den), p0 = cleared(c0, den);

  if (d_max <= 0) {
    const int dd = op.U.den().degree();
    double cinf = 0.0;
    if (!op.U.is_zero() && op.U.num().degree() == dd - 2) cinf = op.U.num().lc().get_d();
    const double rho = (1.0 + std::sqrt(std::max(1.0 + 4.0 * cinf, 0.0))) / 2.0;
    d_max = static_cast<int>(std::floor(rho + ks.Q.degree() / 2.0 + 1e-9));
    d_max = std::max(d_max, 0);
  }

  for (int attempt = 0; attempt < 4; ++attempt, d_max = 2 * d_max + 8) {
    std::vector<Poly> cols;
    for (int k = 0; k <= d_max; ++k) {
      Poly c = p0 * Poly::monomial(Rat(1), k);
      if (k >= 1) c += Rat(k) * p1 * Poly::monomial(Rat(1), k - 1);
      if (k >= 2) c += Rat(k * (k - 1)) * p2 * Poly::monomial(Rat(1), k - 2);
      cols.push_back(std::move(c));
    }
    auto ns = poly_nullspace(cols);
    if (ns.size() < 2) continue;
    if (ns.size() > 2) throw std::logic_error("kernel_of_op: kernel of dimension > 2");
    Poly a(ns[0]), b(ns[1]);
    if (a.degree() == b.degree()) b -= (b.lc() / a.lc()) * a;
    if (a.degree() > b.degree()) std::swap(a, b);
    ks.N1 = a.monic();
    ks.N2 = (b - b.coeff(ks.N1.degree()) * ks.N1).monic();
    return ks;
  }
  throw RecoveryFailed("no two-dimensional polynomial kernel up to degree " + std::to_string(d_max));
}

bool in_obstruction_set(const Rat& m, int k) {
  const Rat step = make_rat(k, 2) + 1;
  const Rat n = (m + Rat(1, 2)) / step;
  return is_integer(n) && n > 0;
}

namespace {

bool reduced(const SchrodingerOp& op) {
  for (const auto& d : poles_and_exponents(op)) {
    if (gcd(d.pole_class, op.P).degree() > 0) {
      const int k = multiplicity(op.P, d.pole_class);
      if (in_obstruction_set(d.m, k))
        throw ObstructionViolated("modified exponent " + to_string(d.m) + " at roots of " +
                                  to_string(d.pole_class) + " is obstructed");
      if (d.m > make_rat(k, 2)) return false;
    } else if (d.m > 1) {
      return false;
    }
  }
  return true;
}

}  // namespace

ReductionResult reduce_exponents(const SchrodingerOp& op, int max_steps) {
  auto verdict = is_lambda_mf(op);
  if (!verdict.lambda_mf) throw NotLambdaMF("operator is not lambda-monodromy free: " + verdict.reason);
  ReductionResult out{op, {}};
  while (!reduced(out.canonical)) {
    if (static_cast<int>(out.steps.size()) >= max_steps)
      throw Error("reduce_exponents: no fixed point after " + std::to_string(max_steps) + " steps");
    const KernelSpace ks = kernel_of_op(out.canonical);
    const Poly bad = ks.Q * out.canonical.P;
    std::optional<KernelChoice> pick;
    for (long c = 0; c < 256 && !pick; ++c) {
      KernelChoice ch{Rat(1), Rat(c)};
      if (gcd(ks.element(ch).N, bad).degree() <= 0) pick = ch;
    }
    if (!pick) throw Error("reduce_exponents: no generic kernel element found");
    PotentialStep step{*pick, ks.element(*pick), out.canonical, {}};
    step.after = darboux_potential(step.before, step.psi);
    out.canonical = step.after;
    out.steps.push_back(std::move(step));
  }
  return out;
}

RecoveredLine recover_line(const SchrodingerOp& op) {
  const ReductionResult red = reduce_exponents(op);
  const SchrodingerOp& base = red.canonical;
  const Poly& p = base.P;

  Poly t1(1), y0(1);
  for (const auto& d : poles_and_exponents(base)) {
    if (gcd(d.pole_class, p).degree() > 0) {
      t1 *= pow(d.pole_class, static_cast<int>(Rat(2 * d.m).get_num().get_si()));
    } else if (d.m == 1) {
      y0 *= d.pole_class;
    } else {
      throw RecoveryFailed("pole off the zeros of P with m = " + to_string(d.m) + " after reduction");
    }
  }
  Poly t0;
  try {
    t0 = exact_div(p, t1);
  } catch (const InexactDivision&) {
    throw RecoveryFailed("T1 does not divide P");
  }
  const KernelSpace ks = kernel_of_op(base);
  if (ks.Q != (t1 * y0 * y0).monic()) throw RecoveryFailed("kernel frame is not sqrt(T1) y0");

  RecoveredLine out;
  out.pair = PolyPair(y0, ks.N1);
  out.tdata = TPair(t0, t1);
  if (from_pair(out.pair, out.tdata, 1).U != base.U) throw RecoveryFailed("base operator is not L_1(y, T)");
  out.word.start_pair = out.pair;
  out.word.start_t = out.tdata;

  for (auto it = red.steps.rbegin(); it != red.steps.rend(); ++it) {
    // before = after^chi with chi = 1/(sqrt(P) psi), ln' chi = -h
    const RationalFunction h = darboux_h(it->before, it->psi);
    const RationalFunction r =
        -h + half_log_derivative(out.tdata.T1()) + log_derivative(out.pair.y0);
    const KernelChoice choice = choice_with_log_derivative(out.pair, out.tdata, 1, r);
    auto res = darboux_pair(out.pair, out.tdata, 1, choice);
    if (!res.certified || from_pair(res.pair, res.tdata, 1).U != it->before.U)
      throw RecoveryFailed("pair-level replay does not reproduce the operator");
    out.pair = res.pair;
    out.tdata = res.tdata;
    out.word.steps.push_back(DarbouxStep{choice, out.pair, out.tdata});
  }
  return out;
}

Rat canonical_m(const Rat& m0, int k) {
  const Rat period = make_rat(k, 2) + 1;
  auto in_lattice = [&](const Rat& d) {
    if (d < 0) return false;
    return is_integer(d / period);
  };
  for (int twice = 0; 2 * twice <= k; ++twice) {
    const Rat m = make_rat(twice, 2);
    if (4 * m > k) break;
    if (in_lattice(m0 - m) || in_lattice(m0 - (make_rat(k, 2) - m))) return make_rat(twice, 2);
  }
  throw ObstructionViolated("no canonical m for m0 = " + to_string(m0) + ", k = " + std::to_string(k));
}

XkClassification classify_xk(const SchrodingerOp& op) {
  const int k = op.P.degree();
  if (op.P != Poly::monomial(Rat(1), k)) throw NotXk("P is not a power of x: " + to_string(op.P));
  auto verdict = is_lambda_mf(op);
  if (!verdict.lambda_mf) throw NotLambdaMF("operator is not lambda-monodromy free: " + verdict.reason);

  XkClassification out;
  out.k = k;
  out.m0 = exponent_at(op, Rat(0));
  out.m = canonical_m(out.m0, k);

  const RecoveredLine line = recover_line(op);
  const TPair& t = line.tdata;
  const auto path = descend_to_root(line.pair, t);

  std::vector<DarbouxStep> steps;
  auto push = [&](const PolyPair& pair, const TPair& tt, const KernelChoice& c) {
    auto r = darboux_pair(pair, tt, 1, c);
    if (!r.certified) throw std::logic_error("classify_xk: uncertified Darboux step");
    if (!steps.empty() && steps.back().choice.c1 == 0 && c.c1 == 0) {
      steps.pop_back();  // two swaps cancel
    } else {
      steps.push_back(DarbouxStep{c, r.pair, r.tdata});
    }
    return r;
  };

  const Rat l = make_rat(t.T1().degree(), 2);
  PolyPair cur;
  if (4 * l <= k) {
    out.word.start_pair = cur;
    out.word.start_t = t;
  } else {
    out.word.start_pair = cur;
    out.word.start_t = t.swapped();
    push(cur, t.swapped(), KernelChoice{Rat(0), Rat(1)});
  }
  if (make_rat(out.word.start_t.T1().degree(), 2) != out.m)
    throw std::logic_error("classify_xk: recovered data disagrees with the exponent congruence");

  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    const PolyPair& higher = it->first;
    const int i = it->second.direction;
    auto fam = reproduction_family(cur, t, i);
    if (!fam) throw std::logic_error("classify_xk: infertile pair on the ascent");
    auto ns = poly_nullspace({fam->particular, cur.y(i), -higher.y(i)});
    if (ns.size() != 1 || ns[0][2] == 0) throw std::logic_error("classify_xk: ascent step not in the family");
    const KernelChoice c{ns[0][0] / ns[0][2], ns[0][1] / ns[0][2]};
    if (i == 1) {
      auto r = push(cur, t, c);
      push(r.pair, r.tdata, KernelChoice{Rat(0), Rat(1)});
    } else {
      auto r = push(cur, t, KernelChoice{Rat(0), Rat(1)});
      push(r.pair, r.tdata, c);
    }
    cur = higher;
  }
  out.word.steps = std::move(steps);

  auto [fp, ft] = replay_word(out.word);
  if (from_pair(fp, ft, 1).U != op.U) throw std::logic_error("classify_xk: word does not reproduce the operator");
  return out;
}

namespace {

QuasiRational times(const RationalFunction& f, const QuasiRational& q) { return {f * q.r, q.rho}; }

QuasiRational apply_d(const SchrodingerOp& op, const RationalFunction& lnpsi, const QuasiRational& f) {
  QuasiRational d = f.derivative();
  return {d.r - lnpsi * f.r, f.rho - half_log_derivative(op.P)};
}

QuasiRational apply_l(const SchrodingerOp& op, const QuasiRational& f) {
  return times(RationalFunction(Poly(1), op.P), apply(op, f));
}

}  // namespace

std::vector<IntertwinerEntry> intertwiner_check(const SchrodingerOp& op, const QuasiRational& psi,
                                                const std::vector<std::pair<std::string, QuasiRational>>& tests) {
  const RationalFunction lnpsi = log_derivative(psi.r) + psi.rho;
  const RationalFunction h = lnpsi + half_log_derivative(op.P);
  const SchrodingerOp transformed(op.P, h * h - h.derivative());
  std::vector<IntertwinerEntry> out;
  for (const auto& [name, f] : tests) {
    QuasiRational lhs = apply_l(transformed, apply_d(op, lnpsi, f));
    QuasiRational rhs = apply_d(op, lnpsi, apply_l(op, f));
    out.push_back({name, lhs.r == rhs.r && lhs.rho == rhs.rho});
  }
  return out;
}

std::vector<IntertwinerEntry> intertwiner_check(const PolyPair& pair, const TPair& t, int j,
                                                const KernelChoice& choice) {
  const SchrodingerOp op = from_pair(pair, t, j);
  const KernelBasis kb = kernel_basis(pair, t, j);
  auto [psi1, psi2] = kernel_functions(kb);
  const QuasiRational psi =
      QuasiRational::over_sqrt(RationalFunction(choice.c1 * kb.num2 + choice.c2 * kb.num1, kb.den), kb.sqrt_of);
  const RationalFunction x(Poly::x());
  return intertwiner_check(op, psi,
                           {{"psi1", psi1},
                            {"psi2", psi2},
                            {"x*psi1", times(x, psi1)},
                            {"x*psi2", times(x, psi2)},
                            {"1", QuasiRational{RationalFunction(1), RationalFunction()}},
                            {"x", QuasiRational{x, RationalFunction()}}});
}

}  // namespace bethe
