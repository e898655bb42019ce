#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "mhyp/algebra.hpp"
#include "mhyp/colored.hpp"
#include "mhyp/deduction.hpp"
#include "mhyp/gen.hpp"
#include "mhyp/hypersub.hpp"
#include "mhyp/io.hpp"
#include "mhyp/multihyp.hpp"
#include "mhyp/parse.hpp"
#include "mhyp/term.hpp"
#include "mhyp/transducer.hpp"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

struct Options {
  std::string sig_file;
  std::uint64_t seed = 20260823;
  std::string budget_text;
};

mhyp::Signature require_signature(const Options& options) {
  if (options.sig_file.empty()) {
    throw mhyp::DomainError("this command needs --sig FILE");
  }
  return mhyp::load_signature(options.sig_file);
}

mhyp::SearchBudget budget_of(const Options& options) {
  if (options.budget_text.empty()) return mhyp::SearchBudget{};
  return mhyp::parse_budget(options.budget_text);
}

mhyp::MonoidSpec monoid_or_identity(const Options& options, const std::string& mhs_file,
                                    const mhyp::Signature& sig) {
  if (mhs_file.empty()) {
    return mhyp::MonoidSpec::explicit_set({mhyp::Hypersubstitution::identity(sig)});
  }
  (void)options;
  return mhyp::load_monoid(mhs_file, sig);
}

std::set<mhyp::Identity> identity_set(const std::vector<mhyp::Identity>& list) {
  return {list.begin(), list.end()};
}

// ---------------------------------------------------------------------------
// Commands

int cmd_parse(const Options& options, const std::string& text) {
  const mhyp::Signature sig = require_signature(options);
  if (text.find('^') != std::string::npos) {
    std::cout << mhyp::to_string(mhyp::parse_colored_term(text, sig)) << '\n';
  } else {
    std::cout << mhyp::to_string(mhyp::parse_term(text, sig)) << '\n';
  }
  return kExitYes;
}

int cmd_compose_pos(const Options& options, const std::string& t_file,
                    const std::string& pos_text, const std::string& s_file) {
  const mhyp::Signature sig = require_signature(options);
  const mhyp::Position pos = mhyp::parse_position(pos_text, sig);
  const bool colored =
      mhyp::file_mentions_colors(t_file) || mhyp::file_mentions_colors(s_file);
  if (colored) {
    const mhyp::ColoredTerm t = mhyp::load_colored_term(t_file, sig);
    const mhyp::ColoredTerm s = mhyp::load_colored_term(s_file, sig);
    std::cout << mhyp::to_string(mhyp::positional_compose(t, pos, s)) << '\n';
  } else {
    const mhyp::Term t = mhyp::load_term(t_file, sig);
    const mhyp::Term s = mhyp::load_term(s_file, sig);
    std::cout << mhyp::to_string(mhyp::positional_compose(t, pos, s)) << '\n';
  }
  return kExitYes;
}

int cmd_compose_ind(const Options& options, const std::string& t_file,
                    const std::string& r_file, const std::string& s_file) {
  const mhyp::Signature sig = require_signature(options);
  const bool colored = mhyp::file_mentions_colors(t_file) ||
                       mhyp::file_mentions_colors(r_file) ||
                       mhyp::file_mentions_colors(s_file);
  if (colored) {
    const mhyp::ColoredTerm t = mhyp::load_colored_term(t_file, sig);
    const mhyp::ColoredTerm r = mhyp::load_colored_term(r_file, sig);
    const mhyp::ColoredTerm s = mhyp::load_colored_term(s_file, sig);
    std::cout << mhyp::to_string(mhyp::inductive_compose(t, r, s)) << '\n';
  } else {
    const mhyp::Term t = mhyp::load_term(t_file, sig);
    const mhyp::Term r = mhyp::load_term(r_file, sig);
    const mhyp::Term s = mhyp::load_term(s_file, sig);
    std::cout << mhyp::to_string(mhyp::inductive_compose(t, r, s)) << '\n';
  }
  return kExitYes;
}

int cmd_apply(const Options& options, const std::string& rho_file,
              const std::string& term_file) {
  const mhyp::Signature sig = require_signature(options);
  const mhyp::MultiHypersubstitution rho = mhyp::load_rho(rho_file, sig);
  const mhyp::ColoredTerm ct = mhyp::load_colored_term(term_file, sig);
  std::cout << mhyp::to_string(mhyp::apply_mhs(rho, ct)) << '\n';
  return kExitYes;
}

int cmd_check(const Options& options, const std::string& algebra_file,
              const std::string& mhs_file, const std::string& identity_text) {
  const mhyp::Signature sig = require_signature(options);
  const mhyp::FiniteAlgebra algebra = mhyp::load_algebra(algebra_file, sig);
  const mhyp::Identity id = mhyp::parse_identity(identity_text, sig);
  if (mhs_file.empty()) {
    if (auto failure = mhyp::find_violation(algebra, id)) {
      std::cout << "no: counterexample valuation";
      for (const auto& [v, value] : failure->valuation) {
        std::cout << " x" << v << "=" << value;
      }
      std::cout << " gives lhs=" << failure->lhs_value
                << ", rhs=" << failure->rhs_value << '\n';
      return kExitNo;
    }
    std::cout << "yes: the algebra satisfies " << mhyp::to_string(id) << '\n';
    return kExitYes;
  }
  const mhyp::MonoidSpec monoid = mhyp::load_monoid(mhs_file, sig);
  if (auto witness = mhyp::find_multi_hyp_violation(sig, algebra, id, monoid)) {
    std::cout << "no: image " << mhyp::to_string(witness->image)
              << " fails at valuation";
    for (const auto& [v, value] : witness->valuation) {
      std::cout << " x" << v << "=" << value;
    }
    std::cout << " (lhs=" << witness->lhs_value << ", rhs=" << witness->rhs_value
              << ")\n";
    const auto show_choice = [&](const char* side,
                                 const std::map<mhyp::Position, int>& choice) {
      std::cout << "   " << side << " choice:";
      for (const auto& [pos, index] : choice) {
        std::cout << ' ' << mhyp::to_string(pos) << "->#" << index;
      }
      std::cout << '\n';
    };
    show_choice("lhs", witness->lhs_choice);
    show_choice("rhs", witness->rhs_choice);
    return kExitNo;
  }
  std::cout << "yes: " << mhyp::to_string(id) << " is a multi-hyperidentity\n";
  return kExitYes;
}

int cmd_prove(const Options& options, const std::string& axioms_file,
              const std::string& mhs_file, const std::string& goal_text) {
  const mhyp::Signature sig = require_signature(options);
  const auto axioms = identity_set(mhyp::load_identities(axioms_file, sig));
  const mhyp::Identity goal = mhyp::parse_identity(goal_text, sig);
  const mhyp::MonoidSpec monoid = monoid_or_identity(options, mhs_file, sig);
  const mhyp::ProveResult result =
      mhyp::prove(sig, axioms, goal, monoid, budget_of(options));
  switch (result.outcome) {
    case mhyp::SearchOutcome::Found:
      std::cout << mhyp::to_string(*result.proof);
      return kExitYes;
    case mhyp::SearchOutcome::SaturatedNotFound:
      std::cout << "not derivable: the search saturated without reaching the goal\n";
      return kExitNo;
    case mhyp::SearchOutcome::BudgetExhausted:
      std::cout << "not found: the budget was exhausted before saturation\n";
      return kExitNo;
  }
  return kExitError;
}

int cmd_closure(const Options& options, const std::string& axioms_file,
                const std::string& mhs_file) {
  const mhyp::Signature sig = require_signature(options);
  const auto axioms = identity_set(mhyp::load_identities(axioms_file, sig));
  const mhyp::MonoidSpec monoid = monoid_or_identity(options, mhs_file, sig);
  const mhyp::ClosureResult result =
      mhyp::mh_closure_bounded(sig, axioms, monoid, budget_of(options));
  for (const mhyp::Identity& id : result.identities) {
    std::cout << mhyp::to_string(id) << '\n';
  }
  if (result.budget_exhausted) {
    std::cerr << "note: the budget was exhausted; the closure may be incomplete\n";
  }
  return kExitYes;
}

int cmd_transduce(const Options& options, const std::string& rho_file,
                  const std::string& prods_file, const std::string& term_file) {
  const mhyp::Signature sig = require_signature(options);
  const mhyp::ColoredTerm ct = mhyp::load_colored_term(term_file, sig);
  if (!rho_file.empty()) {
    const mhyp::MultiHypersubstitution rho = mhyp::load_rho(rho_file, sig);
    const mhyp::MhTransducer t = mhyp::from_mhs(sig, rho, rho.support());
    std::cout << mhyp::to_string(mhyp::run(t, ct)) << '\n';
  } else {
    const mhyp::ColoredTreeTransducer t = mhyp::load_productions(prods_file, sig);
    std::cout << mhyp::to_string(mhyp::run(t, ct)) << '\n';
  }
  return kExitYes;
}

// ---------------------------------------------------------------------------
// Self test: reproduces the library's worked examples end to end.

int cmd_selftest(const Options& options) {
  (void)options;
  int failures = 0;
  const auto report = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "ok   " : "FAIL ") << name << '\n';
    if (!ok) ++failures;
  };
  using namespace mhyp;

  Signature sig;
  sig.add("f", 2);

  // Colored composition chain on a nested pair of terms.
  {
    const Term t = parse_term("f(f(x1,x2),f(x1,x2))", sig);
    const ColoredTerm ct = parse_colored_term("f^1(f^1(x1,x2),f^2(x1,x2))", sig);
    const ColoredTerm cs = parse_colored_term("f^3(f^2(x1,x2),x2)", sig);
    const ColoredTerm cr = parse_colored_term("f^3(x1,x2)", sig);

    const PositionSets ps = positions(t);
    report("positions", ps.all.size() == 7 && ps.f_pos.size() == 3 && ps.x_pos.size() == 4);
    report("restrict",
           to_string(restrict_to(ct, parse_position("2", sig))) == "f^2(x1,x2)" &&
           to_string(restrict_to(cs, parse_position("12", sig))) == "x2");
    report("colored subterms", colored_subterms(cs).size() == 4);

    const ColoredTerm inner = positional_compose(cs, parse_position("12", sig), cr);
    const ColoredTerm route_a = positional_compose(ct, parse_position("2", sig), inner);
    const ColoredTerm route_b = positional_compose(
        positional_compose(ct, parse_position("2", sig), cs), parse_position("212", sig), cr);
    report("composition chain",
           route_a == route_b &&
           to_string(route_a) == "f^1(f^1(x1,x2),f^3(f^2(x1,f^3(x1,x2)),x2))");
  }

  // A three-color multi-hypersubstitution applied to two colored terms.
  {
    std::map<int, Hypersubstitution> table;
    table.emplace(1, Hypersubstitution(sig, {{"f", parse_term("f(x2,x1)", sig)}}));
    table.emplace(2, Hypersubstitution(sig, {{"f", parse_term("f(f(x2,x1),x2)", sig)}}));
    table.emplace(3, Hypersubstitution(sig, {{"f", parse_term("f(x1,x2)", sig)}}));
    const MultiHypersubstitution rho(sig, MonoidSpec::predicate(MonoidKind::Full),
                                     table, Hypersubstitution::identity(sig));

    const ColoredTerm a = parse_colored_term("f^1(f^1(x1,x2),f^2(x1,x2))", sig);
    const ColoredTerm b = parse_colored_term("f^3(f^2(x1,x2),x2)", sig);
    const bool ok_a =
        to_string(apply_mhs(rho, a)) == "f^1(f^2(f^2(x2,x1),x2),f^1(x2,x1))";
    const bool ok_b = to_string(apply_mhs(rho, b)) == "f^3(f^2(f^2(x2,x1),x2),x2)";
    report("multi-hypersubstitution images", ok_a && ok_b);

    // The transducer built from rho computes the same images.
    const MhTransducer t = from_mhs(sig, rho, {1, 2, 3});
    report("transducer agrees", run(t, a) == apply_mhs(rho, a) &&
                                run(t, b) == apply_mhs(rho, b));
  }

  // The 2x2 rectangular band satisfies its axioms but not all colored images.
  {
    const FiniteAlgebra rb = rect_band(2, 2);
    const std::set<Identity> axioms{
        parse_identity("f(x1,f(x2,x3)) = f(f(x1,x2),x3)", sig),
        parse_identity("f(f(x1,x2),x3) = f(x1,x3)", sig),
        parse_identity("f(x1,x1) = x1", sig)};
    report("band satisfies axioms", satisfies_all(rb, axioms));

    const Identity id = parse_identity("f(f(x1,x2),f(x1,x2)) = f(f(x1,x2),x2)", sig);
    report("band satisfies base identity", satisfies(rb, id));

    const MonoidSpec m = MonoidSpec::explicit_set({
        Hypersubstitution::identity(sig),
        Hypersubstitution(sig, {{"f", parse_term("f(x2,x1)", sig)}}),
        Hypersubstitution(sig, {{"f", parse_term("f(f(x2,x1),x2)", sig)}}),
    });
    const auto witness = find_multi_hyp_violation(sig, rb, id, m);
    bool ok = witness.has_value();
    if (ok) {
      // Confirm the reported image really fails on the band.
      ok = !satisfies(rb, witness->image);
    }
    report("colored image counterexample", ok);
  }

  std::cout << (failures == 0 ? "all self tests passed\n"
                              : "self tests FAILED\n");
  return failures == 0 ? kExitYes : kExitNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toolkit for colored terms, multi-hypersubstitutions and their "
               "tree-transducer realization"};
  app.require_subcommand(1);
  app.fallthrough();

  Options options;
  app.add_option("--sig", options.sig_file, "Signature file (name arity per line)");
  app.add_option("--seed", options.seed, "Seed for randomized subcommands");
  app.add_option("--budget", options.budget_text,
                 "Search budget, e.g. depth=2,ids=500,steps=5000,colors=3");

  // parse
  auto* parse_cmd = app.add_subcommand("parse", "Parse a term and print it canonically");
  std::string parse_text;
  parse_cmd->add_option("text", parse_text, "Term text (colored if it contains '^')")
      ->required();

  // compose
  auto* compose_cmd = app.add_subcommand("compose", "Compose terms");
  bool compose_pos = false, compose_ind = false;
  compose_cmd->add_flag("--pos", compose_pos, "Positional: args T_FILE POSITION S_FILE");
  compose_cmd->add_flag("--ind", compose_ind, "Occurrence: args T_FILE R_FILE S_FILE");
  std::vector<std::string> compose_args;
  compose_cmd->add_option("args", compose_args, "Three arguments per mode")
      ->expected(3);

  // apply
  auto* apply_cmd = app.add_subcommand(
      "apply", "Apply a multi-hypersubstitution to a colored term");
  std::string apply_rho, apply_term;
  apply_cmd->add_option("rho", apply_rho, "Multi-hypersubstitution file")->required();
  apply_cmd->add_option("term", apply_term, "Colored term file")->required();

  // check
  auto* check_cmd = app.add_subcommand("check", "Check an identity in a finite algebra");
  std::string check_algebra, check_mhs, check_identity;
  check_cmd->add_option("--algebra", check_algebra, "Algebra file")->required();
  check_cmd->add_option("--mhs", check_mhs,
                        "Monoid file: check the multi-hyperidentity property");
  check_cmd->add_option("identity", check_identity, "Identity \"t = s\"")->required();

  // prove
  auto* prove_cmd = app.add_subcommand("prove", "Search for a bounded proof");
  std::string prove_axioms, prove_mhs, prove_goal;
  prove_cmd->add_option("--axioms,--sigma", prove_axioms, "Axiom identities file")
      ->required();
  prove_cmd->add_option("--mhs", prove_mhs, "Monoid file for the colored-image rule");
  prove_cmd->add_option("--goal", prove_goal, "Goal identity \"t = s\"")->required();

  // closure
  auto* closure_cmd =
      app.add_subcommand("closure", "Enumerate the bounded deductive closure");
  std::string closure_axioms, closure_mhs;
  closure_cmd->add_option("--axioms,--sigma", closure_axioms, "Axiom identities file")
      ->required();
  closure_cmd->add_option("--mhs", closure_mhs, "Monoid file for the colored-image rule");

  // transduce
  auto* transduce_cmd =
      app.add_subcommand("transduce", "Run a colored tree transducer");
  std::string transduce_rho, transduce_prods, transduce_term;
  auto* rho_opt = transduce_cmd->add_option("--rho", transduce_rho,
                                            "Multi-hypersubstitution file");
  transduce_cmd->add_option("--prods", transduce_prods, "Production file")
      ->excludes(rho_opt);
  transduce_cmd->add_option("term", transduce_term, "Colored term file")->required();

  // selftest
  app.add_subcommand("selftest", "Run the built-in example suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion") {
      return app.exit(e);
    }
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }

  try {
    if (app.got_subcommand("parse")) return cmd_parse(options, parse_text);
    if (app.got_subcommand("compose")) {
      if (compose_pos == compose_ind) {
        throw mhyp::DomainError("compose needs exactly one of --pos / --ind");
      }
      if (compose_pos) {
        return cmd_compose_pos(options, compose_args[0], compose_args[1],
                               compose_args[2]);
      }
      return cmd_compose_ind(options, compose_args[0], compose_args[1], compose_args[2]);
    }
    if (app.got_subcommand("apply")) return cmd_apply(options, apply_rho, apply_term);
    if (app.got_subcommand("check")) {
      return cmd_check(options, check_algebra, check_mhs, check_identity);
    }
    if (app.got_subcommand("prove")) {
      return cmd_prove(options, prove_axioms, prove_mhs, prove_goal);
    }
    if (app.got_subcommand("closure")) {
      return cmd_closure(options, closure_axioms, closure_mhs);
    }
    if (app.got_subcommand("transduce")) {
      if (transduce_rho.empty() && transduce_prods.empty()) {
        throw mhyp::DomainError("transduce needs --rho FILE or --prods FILE");
      }
      return cmd_transduce(options, transduce_rho, transduce_prods, transduce_term);
    }
    if (app.got_subcommand("selftest")) return cmd_selftest(options);
    std::cerr << "error: no subcommand\n";
    return kExitError;
  } catch (const mhyp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
