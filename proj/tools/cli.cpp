#include "cli.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bethe/darboux.hpp"
#include "bethe/errors.hpp"
#include "bethe/operators.hpp"
#include "bethe/parse.hpp"
#include "bethe/populations.hpp"
#include "bethe/theta.hpp"
#include "bethe/wronskian.hpp"

namespace bethe::cli {

using nlohmann::json;

namespace {

/// Raised for malformed but syntactically valid input.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json poly_j(const Poly& p) { return to_string(p); }
json rat_j(const Rat& r) { return r.get_str(); }
json rf_j(const RationalFunction& r) { return {{"num", to_string(r.num())}, {"den", to_string(r.den())}}; }
json pair_j(const PolyPair& y) { return {{"y0", poly_j(y.y0)}, {"y1", poly_j(y.y1)}}; }
json t_j(const TPair& t) { return {{"T0", poly_j(t.T0())}, {"T1", poly_j(t.T1())}}; }
json op_j(const SchrodingerOp& op) { return {{"P", poly_j(op.P)}, {"U", rf_j(op.U)}, {"U_text", to_string(op.U)}}; }

json exponents_j(const ExponentMap& map) {
  json out = json::array();
  for (const auto& [q, m] : map) out.push_back({{"class", poly_j(q)}, {"m", rat_j(m)}});
  return out;
}

std::vector<Rat> parse_constants(const std::string& text) {
  std::vector<Rat> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Poly p = parse_poly(item);
    if (p.degree() > 0) throw InputError("constant '" + item + "' is not a number");
    out.push_back(p.coeff(0));
  }
  return out;
}

KernelChoice parse_kernel(const std::string& text) {
  auto cs = parse_constants(text);
  if (cs.size() != 2) throw InputError("--kernel expects c1,c2");
  if (cs[0] == 0 && cs[1] == 0) throw InputError("--kernel must not be 0,0");
  return {cs[0], cs[1]};
}

TPair parse_t(const std::string& t0, const std::string& t1) {
  Poly a = parse_poly(t0), b = parse_poly(t1);
  if (a.is_zero() || b.is_zero()) throw InputError("T0 and T1 must be nonzero");
  return {a, b};
}

PolyPair parse_pair(const std::string& y0, const std::string& y1) {
  Poly a = parse_poly(y0), b = parse_poly(y1);
  if (a.is_zero() || b.is_zero()) throw InputError("y0 and y1 must be nonzero");
  return {a, b};
}

SchrodingerOp parse_op(const std::string& p, const std::string& u, const std::string& u_den) {
  Poly pp = parse_poly(p);
  if (pp.is_zero()) throw InputError("P must be nonzero");
  RationalFunction uu = parse_ratfunc(u);
  if (!u_den.empty()) {
    Poly d = parse_poly(u_den);
    if (d.is_zero()) throw InputError("--u-den must be nonzero");
    uu = uu / RationalFunction(d);
  }
  return {pp, uu};
}

int check_direction(int i, const char* name) {
  if (i != 0 && i != 1) throw InputError(std::string(name) + " must be 0 or 1");
  return i;
}

json word_j(const std::vector<ReproductionStep>& word) {
  json out = json::array();
  for (const auto& s : word)
    out.push_back({{"direction", s.direction}, {"constant", rat_j(s.constant)}, {"lowest", s.lowest_degree}});
  return out;
}

json darboux_word_j(const DarbouxWord& w) {
  json steps = json::array();
  for (const auto& s : w.steps)
    steps.push_back({{"kernel", {rat_j(s.choice.c1), rat_j(s.choice.c2)}}, {"pair", pair_j(s.pair)}, {"T", t_j(s.tdata)}});
  return {{"start_pair", pair_j(w.start_pair)}, {"start_T", t_j(w.start_t)}, {"steps", steps}};
}

json convention_j() {
  return {
      {"normalization", "y0, y1, T0, T1 and P are monic; dropped scalars are reported where an identity needs them"},
      {"operator", "L = P^{-1} (d^2 - U), P = T0*T1"},
      {"from_pair", "U = g' + g^2, g = y_j'/y_j - T_j'/(2 T_j) - y_{j+1}'/y_{j+1}"},
      {"kernel", "psi = (c1*ytilde_j + c2*y_j) / (sqrt(T_j) y_{j+1}), ytilde_j without x^deg(y_j) term"},
      {"theta", "raw_n = scale_n * theta_n with theta_n monic"},
      {"certificate", "Wr(old, new) = scale * T_i * y_{i+1}^2"},
      {"numbers", "exact rationals as strings p/q"},
  };
}

// Text rendering of a report: nested keys, one scalar per line.
void render(const json& j, std::ostream& out, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !v.empty()) {
        out << pad << k << ":\n";
        render(v, out, indent + 2);
      } else {
        out << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
    if (flat) {
      out << pad << j.dump() << "\n";
      return;
    }
    std::size_t i = 0;
    for (const auto& v : j) {
      out << pad << "[" << i++ << "]\n";
      render(v, out, indent + 2);
    }
  } else {
    out << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

struct Outcome {
  json inputs = json::object();
  json result = json::object();
  bool verdict = true;
  int code = kOk;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Populations of critical points, theta functions and Darboux transformations"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  bool no_timing = false;
  app.add_flag("--no-timing", no_timing, "Omit the timing field (reproducible output)");

  std::string t0 = "1", t1 = "1", y0 = "1", y1 = "1", p = "1", u = "0", u_den, constants, kernel = "0,1";
  int depth = 2, dir = 0, n = 3, j = 1, k = 0;
  double tol = 1e-8;
  std::function<Outcome()> action;
  std::string command;

  auto add_t = [&](CLI::App* s, bool required) {
    auto* a = s->add_option("--t0", t0, "T0 expression");
    auto* b = s->add_option("--t1", t1, "T1 expression");
    if (required) {
      a->required();
      b->required();
    }
  };
  auto add_y = [&](CLI::App* s, bool required) {
    auto* a = s->add_option("--y0", y0, "y0 expression");
    auto* b = s->add_option("--y1", y1, "y1 expression");
    if (required) {
      a->required();
      b->required();
    }
  };
  auto add_u = [&](CLI::App* s, bool need_p) {
    auto* a = s->add_option("--p", p, "P expression");
    if (need_p) a->required();
    s->add_option("--u", u, "potential U, a rational expression")->required();
    s->add_option("--u-den", u_den, "optional denominator of U");
  };

  // population enumerate
  auto* population = app.add_subcommand("population", "Populations of critical points");
  population->require_subcommand(1);
  auto* enumerate = population->add_subcommand("enumerate", "Enumerate the population of (1,1)");
  add_t(enumerate, true);
  enumerate->add_option("--depth", depth, "Maximal word length")->check(CLI::Range(0, 12));
  enumerate->add_option("--constants", constants, "Comma separated family parameters (default 0,1)");
  enumerate->callback([&] {
    command = "population enumerate";
    action = [&] {
      Outcome o;
      TPair t = parse_t(t0, t1);
      std::vector<Rat> cs = constants.empty() ? std::vector<Rat>{Rat(0), Rat(1)} : parse_constants(constants);
      if (cs.empty()) throw InputError("--constants is empty");
      o.inputs = {{"T", t_j(t)}, {"depth", depth}, {"constants", json::array()}};
      for (const auto& c : cs) o.inputs["constants"].push_back(rat_j(c));
      json nodes = json::array();
      for (const auto& node : enumerate_population(t, depth, cs)) {
        auto path = replay(t, node.word);
        json certs = json::array();
        bool certified = true;
        for (std::size_t s = 0; s < node.certificates.size(); ++s) {
          const auto& c = node.certificates[s];
          const Poly& other = path[s + 1].pair.y(c.direction + 1);
          bool ok = wronskian2(c.old_y, c.new_y) == c.scale * t.T(c.direction) * other * other;
          certified = certified && ok;
          certs.push_back({{"direction", c.direction}, {"old", poly_j(c.old_y)}, {"new", poly_j(c.new_y)},
                           {"scale", rat_j(c.scale)}, {"holds", ok}});
        }
        bool critical = is_critical(node.pair, t);
        o.verdict = o.verdict && certified && critical;
        nodes.push_back({{"pair", pair_j(node.pair)},
                         {"degrees", {node.pair.y0.degree(), node.pair.y1.degree()}},
                         {"word", word_j(node.word)},
                         {"certificates", certs},
                         {"critical", critical}});
      }
      o.result = {{"count", nodes.size()}, {"nodes", nodes}};
      return o;
    };
  });

  // theta
  auto* theta = app.add_subcommand("theta", "Theta sequence and its recursion");
  add_t(theta, true);
  theta->add_option("--dir", dir, "Direction i")->required();
  theta->add_option("--n", n, "Largest index")->required()->check(CLI::Range(1, 24));
  theta->add_option("--constants", constants, "Comma separated inner constants per step");
  theta->callback([&] {
    command = "theta";
    action = [&] {
      Outcome o;
      TPair t = parse_t(t0, t1);
      int i = check_direction(dir, "--dir");
      std::vector<StepConstants> sc;
      if (!constants.empty())
        for (const auto& c : parse_constants(constants)) sc.push_back({c, Rat(0)});
      o.inputs = {{"T", t_j(t)}, {"dir", i}, {"n", n}, {"constants", json::array()}};
      for (const auto& c : sc) o.inputs["constants"].push_back(rat_j(c.inner));
      ThetaSequence seq = theta_sequence(t, i, n + 1, sc);
      json thetas = json::array();
      for (int m = 0; m <= n; ++m)
        thetas.push_back({{"n", m}, {"theta", poly_j(seq.thetas[static_cast<std::size_t>(m)])},
                          {"scale", rat_j(seq.scales[static_cast<std::size_t>(m)])}});
      RecursionReport rep = verify_theta_recursion(seq);
      json checks = json::array();
      bool pass = true;
      for (const auto& c : rep.checks) {
        if (c.n > n) continue;
        pass = pass && c.pass;
        checks.push_back({{"n", c.n}, {"pass", c.pass}, {"scalar", rat_j(c.scalar)}});
      }
      o.verdict = pass;
      o.result = {{"thetas", thetas}, {"recursion", {{"checks", checks}, {"all_pass", pass}}}};
      return o;
    };
  });

  // op ...
  auto* op = app.add_subcommand("op", "Schrodinger operators");
  op->require_subcommand(1);

  auto* from = op->add_subcommand("from-pair", "Operator L_j(y, T)");
  add_y(from, true);
  add_t(from, true);
  from->add_option("--j", j, "Index j")->required();
  from->callback([&] {
    command = "op from-pair";
    action = [&] {
      Outcome o;
      PolyPair y = parse_pair(y0, y1);
      TPair t = parse_t(t0, t1);
      int jj = check_direction(j, "--j");
      o.inputs = {{"pair", pair_j(y)}, {"T", t_j(t)}, {"j", jj}};
      o.result = {{"operator", op_j(from_pair(y, t, jj))}};
      return o;
    };
  });

  auto* check = op->add_subcommand("check", "Fuchsian, exponent, determinant and residue verdicts");
  add_u(check, false);
  check->callback([&] {
    command = "op check";
    action = [&] {
      Outcome o;
      SchrodingerOp L = parse_op(p, u, u_den);
      o.inputs = {{"operator", op_j(L)}};
      LambdaMFVerdict v = is_lambda_mf(L);
      json poles = json::array();
      for (const auto& e : v.evidence) {
        json delta = json::array();
        for (const auto& c : e.delta.coeffs) delta.push_back(to_string(c));
        poles.push_back({{"class", poly_j(e.datum.pole_class)},
                         {"m", rat_j(e.datum.m)},
                         {"a_minus2", to_string(e.datum.a_minus2)},
                         {"a_minus1", to_string(e.datum.a_minus1)},
                         {"delta", delta},
                         {"delta_vanishes", e.vanishes}});
      }
      json residues = json::array();
      bool residues_ok = true;
      if (v.fuchsian) {
        try {
          ResidueReport r = residue_check(L);
          for (const auto& e : r.entries)
            residues.push_back({{"class", poly_j(e.pole_class)},
                                {"m", rat_j(e.m)},
                                {"a_minus1", to_string(e.a_minus1)},
                                {"expected", to_string(e.expected)},
                                {"violation", to_string(e.a_minus1 - e.expected)},
                                {"integral_m", e.integral_m},
                                {"ok", e.ok}});
          residues_ok = r.ok();
          o.result["residues_sum_to_zero"] = r.residues_sum_to_zero;
        } catch (const NotTriangularNumber&) {
          residues_ok = false;
        }
      }
      o.result["fuchsian"] = v.fuchsian;
      o.result["lambda_mf"] = v.lambda_mf;
      o.result["reason"] = v.reason;
      o.result["poles"] = poles;
      o.result["residues"] = residues;
      o.result["residues_ok"] = residues_ok;
      o.verdict = v.lambda_mf;
      return o;
    };
  });

  auto* darboux = op->add_subcommand("darboux", "Darboux transformation by a kernel element");
  darboux->add_option("--y0", y0, "y0 expression (pair-level form)");
  darboux->add_option("--y1", y1, "y1 expression (pair-level form)");
  add_t(darboux, false);
  darboux->add_option("--j", j, "Index j (pair-level form)");
  darboux->add_option("--p", p, "P expression (potential-level form)");
  darboux->add_option("--u", u, "potential U (potential-level form)");
  darboux->add_option("--u-den", u_den, "optional denominator of U");
  darboux->add_option("--kernel", kernel, "Kernel coordinates c1,c2");
  darboux->callback([&] {
    command = "op darboux";
    bool pair_level = darboux->count("--y0") + darboux->count("--y1") + darboux->count("--t0") + darboux->count("--t1") > 0;
    bool potential_level = darboux->count("--u") > 0;
    action = [&, pair_level, potential_level] {
      Outcome o;
      if (pair_level == potential_level) throw InputError("give either --y0/--y1/--t0/--t1 or --p/--u");
      KernelChoice c = parse_kernel(kernel);
      if (pair_level) {
        PolyPair y = parse_pair(y0, y1);
        TPair t = parse_t(t0, t1);
        int jj = check_direction(j, "--j");
        o.inputs = {{"pair", pair_j(y)}, {"T", t_j(t)}, {"j", jj}, {"kernel", {rat_j(c.c1), rat_j(c.c2)}}};
        SchrodingerOp before = from_pair(y, t, jj);
        DarbouxPairResult r = darboux_pair(y, t, jj, c);
        o.result = {{"before", op_j(before)},
                    {"after", op_j(from_pair(r.pair, r.tdata, jj))},
                    {"pair", pair_j(r.pair)},
                    {"T", t_j(r.tdata)},
                    {"certified", r.certified}};
        o.verdict = r.certified;
        return o;
      }
      SchrodingerOp L = parse_op(p, u, u_den);
      o.inputs = {{"operator", op_j(L)}, {"kernel", {rat_j(c.c1), rat_j(c.c2)}}};
      KernelSpace ks = kernel_of_op(L);
      KernelElement psi = ks.element(c);
      SchrodingerOp after = darboux_potential(L, psi);
      ExponentMap predicted = predicted_exponents(L, psi);
      ExponentMap actual = exponent_map(after);
      bool same = same_exponents(predicted, actual);
      o.result = {{"kernel_space", {{"Q", poly_j(ks.Q)}, {"N1", poly_j(ks.N1)}, {"N2", poly_j(ks.N2)}}},
                  {"psi", {{"N", poly_j(psi.N)}, {"Q", poly_j(psi.Q)}}},
                  {"after", op_j(after)},
                  {"predicted_exponents", exponents_j(predicted)},
                  {"exponents", exponents_j(actual)},
                  {"certified", same}};
      o.verdict = same;
      return o;
    };
  });

  auto* recover = op->add_subcommand("recover", "Recover the pair line of a lambda-monodromy-free operator");
  add_u(recover, true);
  recover->callback([&] {
    command = "op recover";
    action = [&] {
      Outcome o;
      SchrodingerOp L = parse_op(p, u, u_den);
      o.inputs = {{"operator", op_j(L)}};
      RecoveredLine r = recover_line(L);
      bool same = from_pair(r.pair, r.tdata, 1).U == L.U;
      o.result = {{"pair", pair_j(r.pair)}, {"T", t_j(r.tdata)}, {"word", darboux_word_j(r.word)},
                  {"reproduces_operator", same}};
      o.verdict = same;
      return o;
    };
  });

  auto* classify = op->add_subcommand("classify-xk", "Classify an operator with P = x^k");
  classify->add_option("--k", k, "Exponent k of P = x^k")->required()->check(CLI::Range(0, 64));
  classify->add_option("--u", u, "potential U")->required();
  classify->add_option("--u-den", u_den, "optional denominator of U");
  classify->callback([&] {
    command = "op classify-xk";
    action = [&] {
      Outcome o;
      SchrodingerOp L = parse_op(to_string(Poly::monomial(Rat(1), k)), u, u_den);
      o.inputs = {{"operator", op_j(L)}, {"k", k}};
      XkClassification c = classify_xk(L);
      o.result = {{"k", c.k}, {"m", rat_j(c.m)}, {"m0", rat_j(c.m0)}, {"word", darboux_word_j(c.word)},
                  {"word_length", c.word.size()}};
      return o;
    };
  });

  // bethe check
  auto* bethe = app.add_subcommand("bethe", "Bethe ansatz equations");
  bethe->require_subcommand(1);
  auto* bcheck = bethe->add_subcommand("check", "Numeric residual of the Bethe ansatz equations");
  add_y(bcheck, true);
  add_t(bcheck, true);
  bcheck->add_option("--tol", tol, "Residual tolerance");
  bcheck->callback([&] {
    command = "bethe check";
    action = [&] {
      Outcome o;
      PolyPair y = parse_pair(y0, y1);
      TPair t = parse_t(t0, t1);
      o.inputs = {{"pair", pair_j(y)}, {"T", t_j(t)}, {"tol", tol}};
      try {
        double r = bethe_residuals(y, t);
        o.result = {{"generic", true}, {"residual", r}};
        o.verdict = r < tol;
      } catch (const NotGeneric& e) {
        o.result = {{"generic", false}, {"reason", e.what()}};
        o.verdict = false;
      }
      return o;
    };
  });

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("bethepop");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kInputError;
  }

  auto start = std::chrono::steady_clock::now();
  Outcome o;
  int code;
  std::string error_kind, error_msg;
  try {
    o = action();
    code = o.verdict ? kOk : kVerdictFalse;
  } catch (const SyntaxError& e) {
    code = kInputError, error_kind = "SyntaxError", error_msg = e.what();
  } catch (const NonPolynomial& e) {
    code = kInputError, error_kind = "NonPolynomial", error_msg = e.what();
  } catch (const InputError& e) {
    code = kInputError, error_kind = "InputError", error_msg = e.what();
  } catch (const std::invalid_argument& e) {
    code = kInputError, error_kind = "InputError", error_msg = e.what();
  } catch (const NotXk& e) {
    code = kInputError, error_kind = "NotXk", error_msg = e.what();
  } catch (const NotLambdaMF& e) {
    code = kVerdictFalse, error_kind = "NotLambdaMF", error_msg = e.what();
  } catch (const Infertile& e) {
    code = kVerdictFalse, error_kind = "Infertile", error_msg = e.what();
  } catch (const NotInKernel& e) {
    code = kVerdictFalse, error_kind = "NotInKernel", error_msg = e.what();
  } catch (const ObstructionViolated& e) {
    code = kVerdictFalse, error_kind = "ObstructionViolated", error_msg = e.what();
  } catch (const Error& e) {
    code = kInternalLimit, error_kind = "LimitReached", error_msg = e.what();
  } catch (const std::exception& e) {
    code = kInternalLimit, error_kind = "InternalError", error_msg = e.what();
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  json report = {{"schema_version", kSchemaVersion},
                 {"command", command},
                 {"inputs", o.inputs},
                 {"convention", convention_j()},
                 {"exit_code", code}};
  if (!no_timing) report["timing_ms"] = ms;
  if (error_kind.empty()) {
    report["verdict"] = o.verdict;
    report["result"] = o.result;
  } else {
    report["verdict"] = false;
    report["error"] = {{"kind", error_kind}, {"message", error_msg}};
    err << "bethepop: " << error_kind << ": " << error_msg << "\n";
  }

  if (format == "json") {
    out << report.dump(2) << "\n";
  } else {
    report.erase("convention");
    render(report, out, 0);
  }
  return code;
}

}  // namespace bethe::cli
