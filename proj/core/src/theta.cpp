#include "bethe/theta.hpp"

#include <algorithm>
#include <stdexcept>

#include "bethe/errors.hpp"
#include "bethe/linsolve.hpp"
#include "bethe/wronskian.hpp"

namespace bethe {

long a_seq(int n) {
  if (n < 0) throw std::invalid_argument("a_seq: n must be non-negative");
  const long r = n / 2;
  return (n % 2 == 0) ? r * r : r * (r + 1);
}

PhiSequence phi_sequence(const TPair& t, int i, int n, const std::vector<StepConstants>& constants) {
  if (n < 1) throw std::invalid_argument("phi_sequence: n must be at least 1");
  PhiSequence seq{t, i & 1, {Poly(1)}, {}};
  for (int k = 1; k < n; ++k) {
    StepConstants c = (static_cast<std::size_t>(k - 1) < constants.size()) ? constants[k - 1] : StepConstants{};
    Poly inner = (t.T(i + 1) * seq.phis.back()).antiderivative(c.inner);
    seq.phis.push_back((t.T(i) * inner).antiderivative(c.outer));
    seq.constants.push_back(c);
  }
  return seq;
}

namespace {

Poly raw_from_phis(const TPair& t, int i, const std::vector<Poly>& phis, int n) {
  if (n == 0) return Poly(1);
  Poly w = wronskian_n(std::span<const Poly>(phis.data(), n));
  const Poly den = pow(t.T(i), static_cast<int>(a_seq(n))) * pow(t.T(i + 1), static_cast<int>(a_seq(n - 1)));
  return exact_div(w, den);
}

}  // namespace

ThetaSequence theta_sequence(const TPair& t, int i, int n_max, const std::vector<StepConstants>& constants) {
  if (n_max < 0) throw std::invalid_argument("theta_sequence: n_max must be non-negative");
  PhiSequence phis = phi_sequence(t, i, std::max(n_max, 1), constants);
  ThetaSequence seq;
  seq.tdata = t;
  seq.direction = i & 1;
  seq.constants = phis.constants;
  for (int n = 0; n <= n_max; ++n) {
    Poly raw = raw_from_phis(t, i, phis.phis, n);
    seq.scales.push_back(raw.lc());
    seq.thetas.push_back(raw.monic());
    seq.raw.push_back(std::move(raw));
  }
  return seq;
}

Poly theta_raw(const TPair& t, int i, int n, const std::vector<StepConstants>& constants) {
  if (n < 0) throw std::invalid_argument("theta_raw: n must be non-negative");
  if (n == 0) return Poly(1);
  PhiSequence phis = phi_sequence(t, i, n, constants);
  return raw_from_phis(t, i, phis.phis, n);
}

Poly theta_n(const TPair& t, int i, int n, const std::vector<StepConstants>& constants) {
  return theta_raw(t, i, n, constants).monic();
}

bool RecursionReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

RecursionReport verify_theta_recursion(const ThetaSequence& seq) {
  RecursionReport rep;
  for (std::size_t n = 1; n + 1 < seq.raw.size(); ++n) {
    const Poly& tn = seq.tdata.T(static_cast<int>(n) + seq.direction);
    RecursionCheck c;
    c.n = static_cast<int>(n);
    Poly lhs = wronskian2(seq.raw[n - 1], seq.raw[n + 1]);
    c.pass = lhs == tn * seq.raw[n] * seq.raw[n];
    Poly mlhs = wronskian2(seq.thetas[n - 1], seq.thetas[n + 1]);
    Poly mrhs = tn * seq.thetas[n] * seq.thetas[n];
    if (!mlhs.is_zero()) {
      c.scalar = mlhs.lc() / mrhs.lc();
      c.pass = c.pass && mlhs == c.scalar * mrhs;
    } else {
      c.pass = false;
    }
    rep.checks.push_back(c);
  }
  return rep;
}

Poly adler_moser(int n, const std::vector<StepConstants>& constants) {
  return theta_n(TPair(Poly(1), Poly(1)), 0, n, constants);
}

std::pair<PolyPair, TPair> compose_change_of_variables(const PolyPair& pair, const TPair& t, const Poly& f) {
  if (f.degree() < 1) throw std::invalid_argument("compose_change_of_variables: f must be non-constant");
  const Poly df = f.derivative();
  return {PolyPair(pair.y0.compose(f), pair.y1.compose(f)), TPair(df * t.T0().compose(f), df * t.T1().compose(f))};
}

ThetaSequence compose_change_of_variables(const ThetaSequence& seq, const Poly& f) {
  if (f.degree() < 1) throw std::invalid_argument("compose_change_of_variables: f must be non-constant");
  const Poly df = f.derivative();
  ThetaSequence out;
  out.tdata = TPair(df * seq.tdata.T0().compose(f), df * seq.tdata.T1().compose(f));
  out.direction = seq.direction;
  out.constants = seq.constants;
  for (const Poly& r : seq.raw) {
    Poly c = r.compose(f);
    out.scales.push_back(c.lc());
    out.thetas.push_back(c.monic());
    out.raw.push_back(std::move(c));
  }
  return out;
}

ThetaMatch match_population_node(const PopulationNode& node, const TPair& theta_t, const Poly& f) {
  ThetaMatch m;
  if (node.word.empty()) {
    m.matched = node.pair == PolyPair{};
    m.detail = m.matched ? "root" : "root pair is not (1,1)";
    return m;
  }
  for (std::size_t s = 1; s < node.word.size(); ++s) {
    if (node.word[s].direction == node.word[s - 1].direction) {
      m.detail = "word repeats a direction";
      return m;
    }
  }
  const int i = 1 - node.word.front().direction;
  m.direction = i;
  std::vector<PopulationNode> path = replay(node.tdata, node.word);
  m.constants.assign(node.word.size(), StepConstants{});

  for (std::size_t s = 1; s <= node.word.size(); ++s) {
    const int n = static_cast<int>(s) + 1;
    std::vector<StepConstants> cs(m.constants.begin(), m.constants.begin() + static_cast<long>(s));
    cs.back().inner = 0;
    Poly a = theta_raw(theta_t, i, n, cs).compose(f);
    cs.back().inner = 1;
    Poly b = theta_raw(theta_t, i, n, cs).compose(f) - a;
    const PolyPair& target = path[s].pair;
    const int d = node.word[s - 1].direction;
    const Poly& v = target.y(d);

    const int rows = std::max({a.degree(), b.degree(), v.degree()}) + 1;
    Matrix<Rat> mat(rows, 2);
    std::vector<Rat> rhs(rows, Rat(0));
    for (int r = 0; r < rows; ++r) {
      mat(r, 0) = a.coeff(r);
      mat(r, 1) = b.coeff(r);
      rhs[r] = v.coeff(r);
    }
    auto sol = linear_solve(mat, rhs);
    if (!sol.consistent() || (*sol.particular)[0] == 0) {
      m.detail = "step " + std::to_string(s) + ": component is not a theta";
      return m;
    }
    const Rat c = (*sol.particular)[1] / (*sol.particular)[0];
    m.constants[s - 1].inner = c;
    cs.back().inner = c;
    const Poly prev = theta_raw(theta_t, i, n - 1, cs).compose(f).monic();
    if (theta_raw(theta_t, i, n, cs).compose(f).monic() != v || target.y(d + 1) != prev) {
      m.detail = "step " + std::to_string(s) + ": pair is not (theta_n, theta_{n+1})";
      return m;
    }
  }
  m.matched = true;
  return m;
}

}  // namespace bethe
