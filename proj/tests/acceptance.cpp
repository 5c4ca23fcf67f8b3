// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "bethe/darboux.hpp"
#include "bethe/errors.hpp"
#include "bethe/operators.hpp"
#include "bethe/populations.hpp"
#include "bethe/theta.hpp"
#include "cli.hpp"

using namespace bethe;

namespace {

const Poly X = Poly::x();

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<TPair> t_set() { return {TPair(1, 1), TPair(X * X, 1), TPair(X * X, X * X), TPair(X, X)}; }

std::string t_str(const TPair& t) { return "(" + to_string(t.T0()) + ", " + to_string(t.T1()) + ")"; }
std::string pair_str(const PolyPair& y) { return "(" + to_string(y.y0) + ", " + to_string(y.y1) + ")"; }

Rat random_rat(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 6);
  return make_rat(num(rng), den(rng));
}

// Nodes of all populations in the T set up to `depth`, tagged with their T.
std::vector<std::pair<TPair, PopulationNode>> pooled_nodes(int depth) {
  std::vector<std::pair<TPair, PopulationNode>> out;
  for (const TPair& t : t_set())
    for (auto& n : enumerate_population(t, depth)) out.emplace_back(t, std::move(n));
  return out;
}

// Lowest member of the direction-j family in place of y_j.
PolyPair line_of(PolyPair y, const TPair& t, int j) {
  y.y(j) = reproduction_family(y, t, j)->lowest();
  return y;
}

template <class T>
std::vector<T> sample(std::vector<T> v, std::size_t k, std::mt19937& rng) {
  std::shuffle(v.begin(), v.end(), rng);
  if (v.size() > k) v.resize(k);
  return v;
}

Outcome theta_recursion() {
  std::mt19937 rng(101);
  int checks = 0;
  for (const TPair& t : t_set()) {
    for (int i = 0; i < 2; ++i) {
      for (int trial = 0; trial < 3; ++trial) {
        std::vector<StepConstants> cs;
        for (int k = 0; k < 9; ++k) cs.push_back({random_rat(rng), random_rat(rng)});
        auto rep = verify_theta_recursion(theta_sequence(t, i, 9, cs));
        for (const auto& c : rep.checks) {
          if (c.n > 8) continue;
          ++checks;
          if (!c.pass) return {false, "T=" + t_str(t) + " i=" + std::to_string(i) + " n=" + std::to_string(c.n)};
        }
      }
    }
  }
  return {true, std::to_string(checks) + " identities exact"};
}

Outcome population_theta() {
  int nodes = 0;
  for (const TPair& t : t_set()) {
    for (const auto& node : enumerate_population(t, 5)) {
      ++nodes;
      auto m = match_population_node(node, t);
      if (!m.matched) return {false, "T=" + t_str(t) + " node " + pair_str(node.pair) + ": " + m.detail};
    }
  }
  return {true, std::to_string(nodes) + " nodes matched to theta pairs"};
}

Outcome lambda_mf_population() {
  int ops = 0, irrational = 0, residues = 0;
  for (const TPair& t : t_set()) {
    for (const auto& node : enumerate_population(t, 5)) {
      for (int j = 0; j < 2; ++j) {
        SchrodingerOp L = from_pair(node.pair, t, j);
        auto v = is_lambda_mf(L);
        ++ops;
        if (!v.lambda_mf)
          return {false, "T=" + t_str(t) + " node " + pair_str(node.pair) + " j=" + std::to_string(j) + ": " + v.reason};
        for (const auto& e : v.evidence) {
          if (e.datum.pole_class.degree() > 1) ++irrational;
          if (!e.vanishes) return {false, "Delta does not vanish at " + to_string(e.datum.pole_class)};
        }
        auto r = residue_check(L);
        for (const auto& e : r.entries) {
          ++residues;
          if (!e.ok || !e.integral_m) return {false, "residue violation at " + to_string(e.pole_class)};
        }
      }
    }
  }
  return {true, std::to_string(ops) + " operators, " + std::to_string(irrational) + " pole classes over quotient rings, " +
                    std::to_string(residues) + " residues"};
}

Outcome counterexample() {
  SchrodingerOp L{Poly(1), RationalFunction(Poly(2), pow(X * (X - 1), 2))};
  auto v = is_lambda_mf(L);
  if (v.lambda_mf) return {false, "reported lambda-monodromy free"};
  for (const auto& e : residue_check(L).entries) {
    if (e.pole_class != X) continue;
    QElem value = e.a_minus1 - e.expected;
    if (value == QElem(4) && !e.ok) return {true, "not lambda-mf; residue violation at x = 0 is " + to_string(value)};
    return {false, "residue violation at x = 0 is " + to_string(value)};
  }
  return {false, "no residue entry at x = 0"};
}

Outcome delta_cross_validation() {
  std::mt19937 rng(202);
  int sets = 0;
  for (int twice_m = 1; twice_m <= 6; ++twice_m) {
    Rat m = make_rat(twice_m, 2);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Rat> pc;
      for (int k = 0; k < 6; ++k) pc.push_back(random_rat(rng));
      Poly p(pc);
      Rat s = random_rat(rng);
      if (p.eval(s) == 0) s += 1;
      if (p.eval(s) == 0) continue;
      std::vector<QElem> a, b;
      for (int k = 0; k <= twice_m; ++k) {
        a.emplace_back(random_rat(rng));
        b.emplace_back(k == 0 ? Rat(0) : p.taylor_coeff(k - 1).eval(s));
      }
      auto d = delta_from_entries(m, a, b);
      auto r = delta_rec_from_entries(m, a, b);
      if (d.coeffs.size() != r.coeffs.size()) return {false, "degree mismatch at m=" + m.get_str()};
      for (std::size_t k = 0; k < d.coeffs.size(); ++k)
        if (!(d.coeffs[k] == r.coeffs[k])) return {false, "coefficient mismatch at m=" + m.get_str()};
      const int top = (twice_m + 1) / 2;
      Rat lead = leading_delta_coeff(m, a[0].rational_value(), p.eval(s), p.derivative().eval(s));
      Rat got = d.coeff(top).rational_value();
      if (got != lead || d.degree() > top) return {false, "leading coefficient mismatch at m=" + m.get_str()};
      ++sets;
    }
  }
  return {true, std::to_string(sets) + " coefficient sets, both routes and the closed leading term agree"};
}

Outcome darboux_dictionary() {
  std::mt19937 rng(303);
  auto nodes = sample(pooled_nodes(3), 50, rng);
  int n = 0;
  for (const auto& [t, node] : nodes) {
    const int j = static_cast<int>(rng() % 2);
    KernelChoice c{random_rat(rng), random_rat(rng)};
    if (c.c1 == 0 && c.c2 == 0) c.c2 = 1;
    const std::string where = "T=" + t_str(t) + " node " + pair_str(node.pair) + " j=" + std::to_string(j);
    auto r = darboux_pair(node.pair, t, j, c);
    if (!r.certified) return {false, where + ": pair and potential transforms differ"};
    SchrodingerOp before = from_pair(node.pair, t, j);
    SchrodingerOp after = from_pair(r.pair, r.tdata, j);
    if (!is_lambda_mf(after).lambda_mf) return {false, where + ": transformed operator not lambda-mf"};
    // psi = (c1 ytilde_j + c2 y_j) / sqrt(T_j y_{j+1}^2)
    KernelBasis kb = kernel_basis(node.pair, t, j);
    KernelElement psi{c.c1 * kb.num2 + c.c2 * kb.num1, kb.sqrt_of * kb.den * kb.den};
    if (!same_exponents(predicted_exponents(before, psi), exponent_map(after)))
      return {false, where + ": exponents differ from prediction"};
    auto once = darboux_pair(node.pair, t, j, c);
    auto twice = darboux_pair(once.pair, once.tdata, j, {Rat(0), Rat(1)});
    if (!(twice.tdata == t) || !(line_of(twice.pair, t, j) == line_of(node.pair, t, j)))
      return {false, where + ": double swap does not return to the line"};
    ++n;
  }
  return {true, std::to_string(n) + " nodes with random kernel choices"};
}

Outcome recovery_round_trip() {
  std::mt19937 rng(404);
  auto nodes = sample(pooled_nodes(3), 50, rng);
  for (const auto& [t, node] : nodes) {
    auto r = recover_line(from_pair(node.pair, t, 1));
    if (!(r.tdata == t) || !(canonical_line(r.pair, t) == canonical_line(node.pair, t)))
      return {false, "T=" + t_str(t) + " node " + pair_str(node.pair) + " recovered " + pair_str(r.pair)};
  }
  return {true, std::to_string(nodes.size()) + " lines recovered"};
}

Outcome xk_classification() {
  std::mt19937 rng(505);
  int cases = 0;
  for (int k = 0; k <= 4; ++k) {
    for (int tm = 0; 2 * tm <= k; ++tm) {
      const Rat m = make_rat(tm, 2);
      if (m > make_rat(k, 4)) continue;
      for (int len = 1; len <= 4; ++len) {
        // L_1((1,1), (x^{k-2m}, x^{2m})) = x^{-k}(d^2 - m(m+1)/x^2)
        PolyPair y(1, 1);
        TPair t(pow(X, k - tm), pow(X, tm));
        for (int s = 0; s < len; ++s) {
          KernelChoice c{random_rat(rng), random_rat(rng)};
          if (c.c1 == 0) c.c1 = 1;
          auto r = darboux_pair(y, t, 1, c);
          y = r.pair;
          t = r.tdata;
        }
        SchrodingerOp L = from_pair(y, t, 1);
        auto cl = classify_xk(L);
        const std::string where = "k=" + std::to_string(k) + " m=" + m.get_str() + " word length " + std::to_string(len);
        if (cl.m != m) return {false, where + ": classified m=" + cl.m.get_str()};
        auto [py, pt] = replay_word(cl.word);
        if (from_pair(py, pt, 1).U != L.U || !(pt.P() == L.P)) return {false, where + ": replay differs"};
        ++cases;
      }
    }
  }
  return {true, std::to_string(cases) + " scrambled operators classified and replayed"};
}

Outcome bethe_numeric() {
  int checked = 0;
  double worst = 0;
  std::vector<TPair> ts = t_set();
  ts.emplace_back(X * X - 1, X + 2);
  for (const TPair& t : ts) {
    for (const auto& node : enumerate_population(t, 4)) {
      if (node.pair.y0.degree() + node.pair.y1.degree() > 10 || !is_critical(node.pair, t)) continue;
      double r = bethe_residuals(node.pair, t);
      worst = std::max(worst, r);
      ++checked;
      if (!(r < 1e-8)) return {false, "T=" + t_str(t) + " node " + pair_str(node.pair) + " residual " + std::to_string(r)};
    }
  }
  std::ostringstream os;
  os << checked << " critical points, worst residual " << worst;
  return {checked > 0, os.str()};
}

Outcome change_of_variables() {
  const TPair t(X * X, X * X);
  const Poly f = Poly::monomial(make_rat(1, 3), 3);
  int nodes = 0;
  for (const auto& node : enumerate_population(t, 4)) {
    auto m = match_population_node(node, TPair(1, 1), f);
    if (!m.matched) return {false, "node " + pair_str(node.pair) + ": " + m.detail};
    ++nodes;
  }
  return {true, std::to_string(nodes) + " nodes equal composed Adler-Moser pairs"};
}

Outcome cli_golden() {
  const std::string dir = BETHE_GOLDEN_DIR;
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
      {"op_check_counterexample.json", {"op", "check", "--p", "1", "--u", "2/(x^2*(x-1)^2)", "--format", "json"}},
      {"op_from_pair.json", {"op", "from-pair", "--y0", "1", "--y1", "1", "--t0", "x^2", "--t1", "1", "--j", "1", "--format", "json"}},
      {"theta_adler_moser.json", {"theta", "--t0", "1", "--t1", "1", "--dir", "0", "--n", "3", "--format", "json"}},
  };
  for (const auto& [file, args] : cases) {
    std::ifstream in(dir + "/" + file);
    std::stringstream golden;
    golden << in.rdbuf();
    for (int rep = 0; rep < 2; ++rep) {
      std::ostringstream out, err;
      bethe::cli::run_cli(args, out, err);
      auto j = nlohmann::json::parse(out.str());
      j.erase("timing_ms");
      if (j.dump(2) + "\n" != golden.str()) return {false, file + " differs"};
    }
  }
  return {true, std::to_string(cases.size()) + " reports byte-identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"theta recursion", theta_recursion},
      {"population equals theta pairs", population_theta},
      {"lambda-monodromy-free population operators", lambda_mf_population},
      {"counterexample detection", counterexample},
      {"determinant cross-validation", delta_cross_validation},
      {"Darboux dictionary", darboux_dictionary},
      {"recovery round trip", recovery_round_trip},
      {"x^k classification", xk_classification},
      {"numeric Bethe equations", bethe_numeric},
      {"change of variables", change_of_variables},
      {"CLI golden files", cli_golden},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << (i + 1) << "] " << criteria[i].first << ": " << o.detail << " ("
              << std::fixed << std::setprecision(1) << secs << " s)" << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}
