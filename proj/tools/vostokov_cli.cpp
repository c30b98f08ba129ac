// Command-line front end: JSON on stdout, diagnostics on stderr.
// Exit codes: 0 ok, 1 property failure, 2 usage error, 3 precision non-stabilization.

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "vostokov/error.hpp"
#include "vostokov/oracles.hpp"
#include "vostokov/pairing.hpp"
#include "vostokov/shafarevich.hpp"
#include "vostokov/verify.hpp"

using nlohmann::ordered_json;
using namespace vostokov;

namespace {

constexpr int kExitOk = 0, kExitFailure = 1, kExitUsage = 2, kExitPrecision = 3;

struct FieldOpts {
  unsigned p = 3, m = 1, n = 1, f = 1, precision = 0;
  std::string kind = "cyclotomic";
};

void add_field_options(CLI::App* cmd, FieldOpts& o) {
  cmd->add_option("--p", o.p, "odd prime")->capture_default_str();
  cmd->add_option("--m", o.m, "zeta of order p^m")->capture_default_str();
  cmd->add_option("--n", o.n, "dimension, 1 or 2")->capture_default_str();
  cmd->add_option("--f", o.f, "residue degree of the unramified part")->capture_default_str();
  cmd->add_option("--precision", o.precision, "Witt precision (0 = automatic)");
  cmd->add_option("--field", o.kind, "field kind")
      ->check(CLI::IsMember({"cyclotomic"}))
      ->capture_default_str();
}

FieldSpecPtr make_field(const FieldOpts& o) {
  return FieldSpec::cyclotomic(o.p, o.m, o.n, o.f, o.precision);
}

ordered_json plan_json(const PrecisionPlan& p) { return {{"N", p.N}, {"window", p.window}}; }

ordered_json header(const std::string& command, const FieldSpecPtr& K) {
  ordered_json j;
  j["schema"] = "vostokov/1";
  j["command"] = command;
  j["field"] = {{"p", K->p()}, {"m", K->m()}, {"n", K->n()}, {"f", K->f()}, {"kind", K->kind()}};
  return j;
}

void add_conventions(ordered_json& j) {
  j["sign"] = kGlobalSign;
  j["tuple_order"] = kTupleOrder;
}

std::vector<FieldElement> parse_all(const std::vector<std::string>& texts, const FieldSpecPtr& K) {
  std::vector<FieldElement> out;
  for (const auto& t : texts) out.push_back(parse_element(t, K));
  return out;
}

void require_count(const std::vector<std::string>& args, std::size_t k, const std::string& what) {
  if (args.size() != k)
    throw DomainError(what + " expects " + std::to_string(k) + " element arguments, got " +
                      std::to_string(args.size()));
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

ordered_json counterexample_json(const Counterexample& c) {
  return {{"check", c.check},       {"config", c.config},     {"inputs", c.inputs},
          {"observed", c.observed}, {"expected", c.expected}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit reciprocity symbols for cyclotomic local fields"};
  app.require_subcommand(1);

  FieldOpts fo;
  std::vector<std::string> elems;

  auto* symbol = app.add_subcommand("symbol", "pairing exponent of n+1 elements");
  add_field_options(symbol, fo);
  symbol->add_option("args", elems, "elements in the field grammar")->required();

  auto* kummer = app.add_subcommand("kummer", "Kummer's formula for two principal units (m = 1)");
  add_field_options(kummer, fo);
  kummer->add_option("args", elems)->required();

  std::string ah_which = "zeta";
  auto* ah = app.add_subcommand("artin-hasse", "Artin-Hasse formulas against zeta or pi");
  add_field_options(ah, fo);
  ah->add_option("--against", ah_which, "zeta or pi")->check(CLI::IsMember({"zeta", "pi"}));
  ah->add_option("args", elems, "principal unit")->required();

  auto* sen = app.add_subcommand("sen", "Sen's formula for (beta, alpha)");
  add_field_options(sen, fo);
  sen->add_option("args", elems, "alpha beta")->required();

  std::uint64_t tame_l = 0;
  auto* tame = app.add_subcommand("tame", "tame symbol exponent");
  add_field_options(tame, fo);
  tame->add_option("--l", tame_l, "prime dividing q - 1")->required();
  tame->add_option("args", elems, "a b")->required();

  auto* basis = app.add_subcommand("basis", "Shafarevich-type basis and its orthogonality table");
  add_field_options(basis, fo);

  auto* dual = app.add_subcommand("dual", "dual partner search over all admissible cases");
  add_field_options(dual, fo);

  auto* decomp = app.add_subcommand("decompose", "coordinates of an element in the basis");
  add_field_options(decomp, fo);
  decomp->add_option("args", elems, "alpha")->required();

  std::string suite;
  int trials = 50;
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "run a named property suite");
  verify->add_option("--suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--trials", trials)->capture_default_str()->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify) {
      SuiteOptions opts;
      opts.trials = trials;
      opts.seed = seed;
      const SuiteReport r = run_suite(suite, opts);
      ordered_json j;
      j["schema"] = "vostokov/1";
      j["command"] = "verify";
      j["suite"] = suite;
      j["trials"] = trials;
      j["seed"] = seed;
      j["checks"] = r.checks;
      j["passed"] = r.passed();
      j["nonstabilized"] = r.nonstabilized;
      ordered_json fails = ordered_json::array();
      for (const auto& c : r.failures) fails.push_back(counterexample_json(c));
      j["failures"] = fails;
      add_conventions(j);
      emit(j);
      std::cerr << suite << ": " << r.checks << " checks in " << r.seconds << " s\n";
      if (r.passed()) return kExitOk;
      return r.nonstabilized ? kExitPrecision : kExitFailure;
    }

    const FieldSpecPtr K = make_field(fo);

    if (*symbol) {
      require_count(elems, K->n() + 1, "symbol");
      const auto args = parse_all(elems, K);
      const SymbolExponent r = vostokov_exponent(args);
      ordered_json j = header("symbol", K);
      j["inputs"] = elems;
      j["exponent"] = r.value;
      j["modulus"] = r.modulus;
      j["plan"] = plan_json(r.plan);
      j["confirmed_plan"] = plan_json(r.confirmed);
      j["attempts"] = r.attempts;
      add_conventions(j);
      emit(j);
      return kExitOk;
    }
    if (*kummer) {
      require_count(elems, 2, "kummer");
      const auto args = parse_all(elems, K);
      ordered_json j = header("kummer", K);
      j["inputs"] = elems;
      j["exponent"] = kummer_exponent(lift_element(args[0]), lift_element(args[1]));
      j["modulus"] = K->p();
      add_conventions(j);
      emit(j);
      return kExitOk;
    }
    if (*ah) {
      require_count(elems, 1, "artin-hasse");
      const FieldElement eps = parse_all(elems, K)[0];
      ordered_json j = header("artin-hasse", K);
      j["inputs"] = elems;
      j["against"] = ah_which;
      j["exponent"] = ah_which == "zeta" ? artin_hasse_zeta(eps) : artin_hasse_pi(eps);
      j["modulus"] = K->pm();
      add_conventions(j);
      emit(j);
      return kExitOk;
    }
    if (*sen) {
      require_count(elems, 2, "sen");
      const auto args = parse_all(elems, K);
      ordered_json j = header("sen", K);
      j["inputs"] = elems;
      j["exponent"] = sen_exponent(args[0], args[1], polynomial_of(args[1]),
                                   polynomial_of(FieldElement::zeta(K)));
      j["modulus"] = K->pm();
      add_conventions(j);
      emit(j);
      return kExitOk;
    }
    if (*tame) {
      require_count(elems, 2, "tame");
      const auto args = parse_all(elems, K);
      ordered_json j = header("tame", K);
      j["inputs"] = elems;
      j["l"] = tame_l;
      j["exponent"] = tame_symbol(args[0], args[1], tame_l);
      j["modulus"] = tame_l;
      add_conventions(j);
      emit(j);
      return kExitOk;
    }
    if (*basis) {
      const BasisDescription B = build_basis(K);
      const OrthogonalityReport rep = verify_orthogonality(B);
      ordered_json j = header("basis", K);
      ordered_json params = ordered_json::array(), eps = ordered_json::array();
      for (const auto& t : B.params) params.push_back(t.to_string());
      for (const auto& e : B.epsilons)
        eps.push_back({{"label", e.label}, {"J", {e.J[0], e.J[1]}}, {"k", e.k},
                       {"value", e.value.to_string()}});
      j["params"] = params;
      j["epsilons"] = eps;
      j["omega"] = B.omega.to_string();
      j["size"] = B.size();
      ordered_json table = ordered_json::array();
      for (const auto& e : rep.entries)
        table.push_back({{"label", e.label}, {"exponent", e.exponent}, {"expected", e.expected},
                         {"pass", e.pass}, {"plan", plan_json(e.plan)}});
      j["orthogonality"] = table;
      j["all_pass"] = rep.all_pass();
      add_conventions(j);
      emit(j);
      return rep.all_pass() ? kExitOk : kExitFailure;
    }
    if (*dual) {
      ordered_json j = header("dual", K);
      ordered_json cases = ordered_json::array();
      bool all = true;
      for (const DualCase& c : admissible_dual_cases(K)) {
        const DualResult r = dual_search(K, c);
        all = all && r.found;
        ordered_json e{{"theta", K->ring()->residue_index(c.theta)},
                       {"I", {c.I[0], c.I[1]}},
                       {"l", c.l},
                       {"found", r.found},
                       {"candidates", r.candidates}};
        if (r.found) {
          e["theta_prime"] = K->ring()->residue_index(r.theta_prime);
          e["partner"] = r.partner.to_string();
          e["exponent"] = r.exponent;
        }
        cases.push_back(e);
      }
      j["cases"] = cases;
      j["all_found"] = all;
      add_conventions(j);
      emit(j);
      return all ? kExitOk : kExitFailure;
    }
    if (*decomp) {
      require_count(elems, 1, "decompose");
      const FieldElement a = parse_all(elems, K)[0];
      const BasisDescription B = build_basis(K);
      const Decomposition d = decompose(a, B);
      ordered_json j = header("decompose", K);
      j["inputs"] = elems;
      j["i"] = d.i;
      ordered_json b = ordered_json::array();
      for (std::size_t k = 0; k < d.b.size(); ++k)
        b.push_back({{"label", B.epsilons[k].label}, {"exponent", d.b[k]}});
      j["b"] = b;
      j["c"] = d.c;
      j["modulus"] = K->pm();
      j["certificate"] = d.certificate.to_string();
      const bool ok = certificate_holds(a, d, B);
      j["certificate_holds"] = ok;
      add_conventions(j);
      emit(j);
      return ok ? kExitOk : kExitFailure;
    }
  } catch (const PrecisionError& e) {
    std::cerr << "precision: " << e.what() << "\n";
    return kExitPrecision;
  } catch (const DomainError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
