#include "bethe/populations.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "bethe/classes.hpp"
#include "bethe/errors.hpp"
#include "bethe/linsolve.hpp"
#include "bethe/roots.hpp"
#include "bethe/wronskian.hpp"

namespace bethe {

TPair::TPair(const Poly& t0, const Poly& t1) {
  if (t0.is_zero() || t1.is_zero()) throw std::invalid_argument("TPair: T0 and T1 must be non-zero");
  t0_ = t0.monic();
  t1_ = t1.monic();
  p_ = t0_ * t1_;
}

PolyPair::PolyPair(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) throw std::invalid_argument("PolyPair: components must be non-zero");
  y0 = a.monic();
  y1 = b.monic();
}

WeightVector WeightVector::omega(int i) {
  return (i & 1) ? WeightVector{Rat(0), Rat(1), Rat(0)} : WeightVector{Rat(1), Rat(0), Rat(0)};
}

WeightVector WeightVector::alpha(int i) {
  WeightVector a1{Rat(-2), Rat(2), Rat(0)};
  return (i & 1) ? a1 : delta() - a1;
}

WeightVector WeightVector::reflect(int i) const { return *this - pairing(i) * alpha(i); }

WeightVector WeightVector::shifted_reflect(int i) const { return (*this + rho()).reflect(i) - rho(); }

Poly ReproductionFamily::lowest() const {
  if (!particular.is_zero() && particular.degree() < direction.degree()) return particular.monic();
  return direction.monic();
}

GenericityReport is_generic(const PolyPair& pair, const TPair& t) {
  GenericityReport r;
  auto fail = [&](const std::string& what, const Poly& g) {
    r.generic = false;
    r.failing = what;
    r.witness = g;
  };
  for (int i = 0; i < 2; ++i) {
    Poly g = gcd(pair.y(i), t.T(i));
    if (g.degree() > 0) {
      fail("gcd(y" + std::to_string(i) + ",T" + std::to_string(i) + ")", g);
      return r;
    }
  }
  for (int i = 0; i < 2; ++i) {
    const Poly& y = pair.y(i);
    if (!is_squarefree(y)) {
      const std::string name = "y" + std::to_string(i);
      fail("gcd(" + name + "," + name + "')", gcd(y, y.derivative()));
      return r;
    }
  }
  Poly g = gcd(pair.y0, pair.y1);
  if (g.degree() > 0) fail("gcd(y0,y1)", g);
  return r;
}

std::optional<ReproductionFamily> solve_reproduction(const Poly& y, const Poly& w) {
  if (y.is_zero()) throw std::invalid_argument("solve_reproduction: y must be non-zero");
  const int dy = y.degree();
  if (w.is_zero()) return ReproductionFamily{Poly(), y};
  const int dw = w.degree();
  const int bound = std::max(dw + 1 - dy, dy);
  const int cols = bound + 1;
  const int rows = std::max(bound + dy, dw + 1);

  Matrix<Rat> a(rows, cols);
  const Poly dy_poly = y.derivative();
  for (int k = 0; k <= bound; ++k) {
    // Wr(y, x^k) = k y x^{k-1} - y' x^k
    Poly col = (-dy_poly) * Poly::monomial(Rat(1), k);
    if (k > 0) col += Rat(k) * y * Poly::monomial(Rat(1), k - 1);
    for (int r = 0; r <= col.degree(); ++r) a(r, k) = col.coeff(r);
  }
  std::vector<Rat> rhs(rows, Rat(0));
  for (int r = 0; r <= dw; ++r) rhs[r] = w.coeff(r);

  auto sol = linear_solve(a, rhs);
  if (!sol.consistent()) return std::nullopt;
  Poly part(*sol.particular);
  part -= (part.coeff(dy) / y.lc()) * y;
  if (wronskian2(y, part) != w) throw std::logic_error("solve_reproduction: solution check failed");
  return ReproductionFamily{part, y};
}

std::optional<ReproductionFamily> reproduction_family(const PolyPair& pair, const TPair& t, int i) {
  const Poly& other = pair.y(i + 1);
  return solve_reproduction(pair.y(i), t.T(i) * other * other);
}

bool is_fertile(const PolyPair& pair, const TPair& t) {
  return reproduction_family(pair, t, 0).has_value() && reproduction_family(pair, t, 1).has_value();
}

bool is_critical(const PolyPair& pair, const TPair& t) {
  return is_generic(pair, t).generic && is_fertile(pair, t);
}

PopulationNode reproduce(const PopulationNode& node, const ReproductionStep& step) {
  const int i = step.direction & 1;
  auto fam = reproduction_family(node.pair, node.tdata, i);
  if (!fam) throw Infertile("pair is not fertile in direction " + std::to_string(i));

  Poly fresh = step.lowest_degree ? fam->lowest() : fam->particular + step.constant * fam->direction;
  if (fresh.is_zero()) throw Infertile("reproduction produced the zero polynomial");
  const Rat lead = fresh.lc();
  fresh = fresh.monic();

  PopulationNode out = node;
  WronskianCertificate cert{i, node.pair.y(i), fresh, Rat(1) / lead};
  if (step.lowest_degree && fresh == fam->direction.monic()) cert.scale = Rat(0);
  out.pair.y(i) = fresh;
  out.word.push_back(step);
  out.certificates.push_back(std::move(cert));
  return out;
}

std::vector<PopulationNode> replay(const TPair& t, const std::vector<ReproductionStep>& word) {
  std::vector<PopulationNode> nodes;
  nodes.push_back(PopulationNode{PolyPair{}, t, {}, {}});
  for (const auto& s : word) nodes.push_back(reproduce(nodes.back(), s));
  return nodes;
}

namespace {

struct PairLess {
  bool operator()(const PolyPair& a, const PolyPair& b) const {
    auto key = [](const PolyPair& p) { return to_string(p.y0) + "|" + to_string(p.y1); };
    return key(a) < key(b);
  }
};

}  // namespace

std::vector<PopulationNode> enumerate_population(const TPair& t, int depth, const std::vector<Rat>& constants) {
  std::vector<PopulationNode> nodes;
  std::set<PolyPair, PairLess> seen;
  nodes.push_back(PopulationNode{PolyPair{}, t, {}, {}});
  seen.insert(nodes.front().pair);

  std::size_t frontier = 0;
  for (int level = 0; level < depth; ++level) {
    const std::size_t end = nodes.size();
    for (std::size_t k = frontier; k < end; ++k) {
      for (int dir = 0; dir < 2; ++dir) {
        if (!nodes[k].word.empty() && nodes[k].word.back().direction == dir) continue;
        if (!reproduction_family(nodes[k].pair, t, dir)) continue;
        for (const Rat& c : constants) {
          PopulationNode child = reproduce(nodes[k], ReproductionStep{dir, c, false});
          if (seen.insert(child.pair).second) nodes.push_back(std::move(child));
        }
      }
    }
    frontier = end;
  }
  return nodes;
}

std::vector<WeightVector> weights_of(const TPair& t) {
  const Poly inputs[] = {t.T0(), t.T1()};
  std::vector<WeightVector> out;
  for (const Poly& q : coprime_base(inputs)) {
    const Rat l2(multiplicity(t.T0(), q));
    const Rat m2(multiplicity(t.T1(), q));
    WeightVector w = l2 * WeightVector::omega(0) + m2 * WeightVector::omega(1);
    out.push_back(Rat(q.degree()) * w);
  }
  return out;
}

std::pair<int, int> weyl_degree_predict(const std::vector<WeightVector>& weights, std::pair<int, int> degs, int i) {
  WeightVector sum{Rat(0), Rat(0), Rat(0)};
  for (const auto& w : weights) sum = sum + w;
  const WeightVector lambda =
      sum - Rat(degs.first) * WeightVector::alpha(0) - Rat(degs.second) * WeightVector::alpha(1);
  const WeightVector diff = sum - lambda.shifted_reflect(i);
  // diff = d0' alpha_0 + d1' alpha_1 = (2 d0' - 2 d1') omega_0 + (2 d1' - 2 d0') omega_1 + d0' delta
  const Rat d0 = diff.cdelta;
  const Rat d1 = (diff.c1 + 2 * d0) / 2;
  if (!is_integer(d0) || !is_integer(d1)) throw std::logic_error("weyl_degree_predict: non-integral degrees");
  return {static_cast<int>(d0.get_num().get_si()), static_cast<int>(d1.get_num().get_si())};
}

double bethe_residuals(const PolyPair& pair, const TPair& t, double tol) {
  auto gen = is_generic(pair, t);
  if (!gen.generic) throw NotGeneric("pair is not generic: " + gen.failing + " = " + to_string(gen.witness));

  std::vector<Complex> roots[2];
  for (int i = 0; i < 2; ++i)
    if (pair.y(i).degree() > 0) roots[i] = roots_numeric(pair.y(i), tol);

  double worst = 0.0;
  for (int i = 0; i < 2; ++i) {
    const Poly& ti = t.T(i);
    const Poly dti = ti.derivative();
    const auto& own = roots[i];
    const auto& other = roots[(i + 1) & 1];
    for (std::size_t a = 0; a < own.size(); ++a) {
      Complex s = own[a];
      Complex acc = 0;
      for (std::size_t b = 0; b < own.size(); ++b)
        if (b != a) acc += 1.0 / (s - own[b]);
      for (const Complex& o : other) acc -= 1.0 / (s - o);
      acc -= eval_complex(dti, s) / (2.0 * eval_complex(ti, s));
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

namespace {

// Sum over repeated roots of their multiplicity.
int excess(const Poly& y) {
  auto parts = squarefree_decomposition(y);
  int e = 0;
  for (std::size_t k = 1; k < parts.size(); ++k) e += static_cast<int>(k + 1) * parts[k].degree();
  return e;
}

Poly repeated_part(const Poly& y) {
  auto parts = squarefree_decomposition(y);
  Poly r(1);
  for (std::size_t k = 1; k < parts.size(); ++k) r *= pow(parts[k], static_cast<int>(k + 1));
  return r;
}

// Product of (x - z)^{ord_z y} over the roots z of `where`.
Poly part_on(const Poly& y, const Poly& where) {
  Poly out(1);
  Poly rest = y;
  const Poly sq = squarefree_part(where);
  for (;;) {
    Poly g = gcd(rest, sq);
    if (g.degree() <= 0) break;
    out *= g;
    rest = exact_div(rest, g);
  }
  return out;
}

}  // namespace

SuperFertileNormalization normalize_superfertile(const PolyPair& pair, const TPair& t) {
  SuperFertileNormalization out;
  PolyPair hat = pair;
  const int budget = excess(pair.y0) + excess(pair.y1) + 4;
  for (int iter = 0; iter < budget; ++iter) {
    bool changed = false;
    for (int i = 0; i < 2; ++i) {
      auto fam = reproduction_family(hat, t, i);
      if (!fam) throw NotSuperFertile("infertile in direction " + std::to_string(i));
      const Poly r = repeated_part(hat.y(i));
      if (r.degree() <= 0 || divides(r, fam->particular)) continue;
      bool lowered = false;
      for (long c = 0; c < 64 && !lowered; ++c) {
        Poly cand = fam->particular + Rat(c) * fam->direction;
        if (cand.is_zero()) continue;
        cand = cand.monic();
        if (excess(cand) < excess(hat.y(i))) {
          hat.y(i) = cand;
          out.reduction.push_back(ReproductionStep{i, Rat(c), false});
          lowered = changed = true;
        }
      }
      if (!lowered) throw NotSuperFertile("no reproduction removes the repeated roots of y" + std::to_string(i));
    }
    if (!changed) break;
  }

  out.f0 = part_on(hat.y0, hat.y1 * t.T0());
  out.f1 = part_on(hat.y1, hat.y0 * t.T1());
  try {
    out.pair = PolyPair(exact_div(pair.y0, out.f0), exact_div(pair.y1, out.f1));
  } catch (const InexactDivision&) {
    throw NotSuperFertile("common factor does not divide the pair");
  }
  const Poly f0sq = out.f0 * out.f0;
  const Poly f1sq = out.f1 * out.f1;
  try {
    out.tdata = TPair(exact_div(t.T0() * f1sq, f0sq), exact_div(t.T1() * f0sq, f1sq));
  } catch (const InexactDivision&) {
    throw NotPolynomial("reduced data is not polynomial");
  }
  if (!is_fertile(out.pair, out.tdata)) throw NotSuperFertile("reduced pair is not fertile");
  return out;
}

std::pair<PolyPair, TPair> multiply_pair(const PolyPair& pair, const TPair& t, const Poly& f0, const Poly& f1) {
  const Poly f0sq = f0 * f0;
  const Poly f1sq = f1 * f1;
  try {
    return {PolyPair(f0 * pair.y0, f1 * pair.y1),
            TPair(exact_div(t.T0() * f0sq, f1sq), exact_div(t.T1() * f1sq, f0sq))};
  } catch (const InexactDivision&) {
    throw NotPolynomial("T0 f0^2/f1^2 or T1 f1^2/f0^2 is not a polynomial");
  }
}

PolyPair canonical_line(const PolyPair& pair, const TPair& t) {
  auto fam = reproduction_family(pair, t, 1);
  if (!fam) throw Infertile("pair is not fertile in direction 1");
  PolyPair out = pair;
  out.y1 = fam->lowest();
  return out;
}

std::vector<std::pair<PolyPair, ReproductionStep>> descend_to_root(const PolyPair& pair, const TPair& t) {
  std::vector<std::pair<PolyPair, ReproductionStep>> path;
  PolyPair cur = pair;
  const PolyPair root;
  while (!(cur == root)) {
    bool moved = false;
    for (int i = 0; i < 2 && !moved; ++i) {
      auto fam = reproduction_family(cur, t, i);
      if (!fam) continue;
      Poly low = fam->lowest();
      if (low.degree() < cur.y(i).degree()) {
        path.emplace_back(cur, ReproductionStep{i, Rat(0), true});
        cur.y(i) = low;
        moved = true;
      }
    }
    if (!moved) throw Error("pair does not descend to (1,1): stuck at (" + to_string(cur.y0) + ", " +
                            to_string(cur.y1) + ")");
  }
  return path;
}

}  // namespace bethe
