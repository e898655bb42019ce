#include "mhyp/deduction.hpp"

#include <algorithm>
#include <sstream>

#include "mhyp/enumerate.hpp"

namespace mhyp {

// ---------------------------------------------------------------------------
// Proof checking

namespace {

std::string describe(const Identity& id) { return to_string(id); }

}  // namespace

std::optional<ProofRejection> check_proof(const Signature& sig,
                                          const std::set<Identity>& axioms,
                                          const MonoidSpec& m, const Proof& proof) {
  if (proof.steps.empty()) {
    return ProofRejection{0, "a proof needs at least one step"};
  }
  std::vector<Identity> concluded;
  concluded.reserve(proof.steps.size());

  for (std::size_t i = 0; i < proof.steps.size(); ++i) {
    const ProofStep& step = proof.steps[i];
    auto reject = [&](const std::string& reason) {
      return ProofRejection{i, reason};
    };
    try {
      validate(step.conclusion.lhs, sig);
      validate(step.conclusion.rhs, sig);
    } catch (const DomainError& e) {
      return reject(std::string("ill-formed conclusion: ") + e.what());
    }

    auto premise_of = [&](std::size_t p) -> const Identity* {
      return p < i ? &concluded[p] : nullptr;
    };

    std::optional<ProofRejection> rejection;
    const auto visitor = [&](const auto& rule) {
      using R = std::decay_t<decltype(rule)>;
      if constexpr (std::is_same_v<R, AxiomRule>) {
        if (axioms.count(step.conclusion) == 0) {
          rejection = reject("conclusion is not an axiom: " + describe(step.conclusion));
        }
      } else if constexpr (std::is_same_v<R, ReflRule>) {
        if (step.conclusion.lhs != step.conclusion.rhs) {
          rejection = reject("reflexivity needs equal sides");
        }
      } else if constexpr (std::is_same_v<R, SymRule>) {
        const Identity* p = premise_of(rule.premise);
        if (!p) { rejection = reject("premise index out of range"); return; }
        if (step.conclusion.lhs != p->rhs || step.conclusion.rhs != p->lhs) {
          rejection = reject("conclusion is not the symmetric flip of the premise");
        }
      } else if constexpr (std::is_same_v<R, TransRule>) {
        const Identity* l = premise_of(rule.left);
        const Identity* r = premise_of(rule.right);
        if (!l || !r) { rejection = reject("premise index out of range"); return; }
        if (l->rhs != r->lhs) {
          rejection = reject("transitivity premises do not chain: " + describe(*l) +
                             " then " + describe(*r));
          return;
        }
        if (step.conclusion.lhs != l->lhs || step.conclusion.rhs != r->rhs) {
          rejection = reject("conclusion does not match the chained premises");
        }
      } else if constexpr (std::is_same_v<R, SubstRule>) {
        const Identity* p = premise_of(rule.premise);
        if (!p) { rejection = reject("premise index out of range"); return; }
        if (vars(p->lhs).count(rule.var) == 0) {
          rejection = reject("substituted variable x" + std::to_string(rule.var) +
                             " does not occur in the premise's left side");
          return;
        }
        const Term x = Term::var(rule.var);
        const Identity expected{inductive_compose(p->lhs, x, rule.replacement),
                                inductive_compose(p->rhs, x, rule.replacement)};
        if (step.conclusion != expected) {
          rejection = reject("conclusion does not match the substitution instance " +
                             describe(expected));
        }
      } else if constexpr (std::is_same_v<R, ReplaceRule>) {
        const Identity* p = premise_of(rule.premise);
        if (!p) { rejection = reject("premise index out of range"); return; }
        Term at_pos = rule.context;
        try {
          at_pos = subterm_at(rule.context, rule.at);
        } catch (const DomainError& e) {
          rejection = reject(std::string("invalid context position: ") + e.what());
          return;
        }
        if (at_pos != p->lhs) {
          rejection = reject("the context's subterm at " + to_string(rule.at) +
                             " is not the premise's left side");
          return;
        }
        const Identity expected{positional_compose(rule.context, rule.at, p->rhs),
                                rule.context};
        if (step.conclusion != expected) {
          rejection = reject("conclusion does not match the replacement instance " +
                             describe(expected));
        }
      } else if constexpr (std::is_same_v<R, MhRule>) {
        const Identity* p = premise_of(rule.premise);
        if (!p) { rejection = reject("premise index out of range"); return; }
        for (const auto& [color, sigma] : rule.rho.table()) {
          if (!m.contains(sig, sigma)) {
            rejection = reject("entry for color " + std::to_string(color) +
                               " is not in the ambient monoid");
            return;
          }
        }
        if (!m.contains(sig, rule.rho.default_entry())) {
          rejection = reject("the default entry is not in the ambient monoid");
          return;
        }
        try {
          const ColoredTerm lhs = ColoredTerm::attach(p->lhs, rule.lhs_coloration);
          const ColoredTerm rhs = ColoredTerm::attach(p->rhs, rule.rhs_coloration);
          const Identity expected{apply_mhs(rule.rho, lhs).term(),
                                  apply_mhs(rule.rho, rhs).term()};
          if (step.conclusion != expected) {
            rejection = reject("conclusion does not match the rewritten premise " +
                               describe(expected));
          }
        } catch (const DomainError& e) {
          rejection = reject(std::string("invalid coloration: ") + e.what());
        }
      }
    };
    std::visit(visitor, step.rule);
    if (rejection) return rejection;
    concluded.push_back(step.conclusion);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Saturation engine

namespace {

class SaturationEngine {
 public:
  SaturationEngine(const Signature& sig, const std::set<Identity>& axioms,
                   const MonoidSpec& m, const SearchBudget& budget,
                   const std::optional<Identity>& goal)
      : sig_(sig), axioms_(axioms), monoid_(m), budget_(budget), goal_(goal) {
    if (!m.is_explicit()) {
      throw DomainError("bounded deduction needs an explicit monoid");
    }
    build_pool();
  }

  void run() {
    seed();
    for (std::size_t i = 0; i < steps_.size() && !stop_; ++i) {
      expand(i);
    }
  }

  const std::vector<ProofStep>& steps() const { return steps_; }
  bool found() const { return found_; }
  bool budget_hit() const { return budget_hit_; }
  long steps_used() const { return steps_used_; }

  Proof extract_goal_proof() const {
    const std::size_t goal_index = index_.at(*goal_);
    std::set<std::size_t> needed;
    std::vector<std::size_t> agenda{goal_index};
    while (!agenda.empty()) {
      const std::size_t i = agenda.back();
      agenda.pop_back();
      if (!needed.insert(i).second) continue;
      std::visit([&](const auto& rule) {
        using R = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<R, SymRule> || std::is_same_v<R, SubstRule> ||
                      std::is_same_v<R, ReplaceRule> || std::is_same_v<R, MhRule>) {
          agenda.push_back(rule.premise);
        } else if constexpr (std::is_same_v<R, TransRule>) {
          agenda.push_back(rule.left);
          agenda.push_back(rule.right);
        }
      }, steps_[i].rule);
    }
    std::vector<std::size_t> order(needed.begin(), needed.end());
    std::map<std::size_t, std::size_t> renumber;
    for (std::size_t k = 0; k < order.size(); ++k) renumber.emplace(order[k], k);

    Proof proof;
    for (std::size_t old_index : order) {
      ProofStep step = steps_[old_index];
      std::visit([&](auto& rule) {
        using R = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<R, SymRule> || std::is_same_v<R, SubstRule> ||
                      std::is_same_v<R, ReplaceRule> || std::is_same_v<R, MhRule>) {
          rule.premise = renumber.at(rule.premise);
        } else if constexpr (std::is_same_v<R, TransRule>) {
          rule.left = renumber.at(rule.left);
          rule.right = renumber.at(rule.right);
        }
      }, step.rule);
      proof.steps.push_back(std::move(step));
    }
    return proof;
  }

 private:
  void build_pool() {
    std::set<Term> pool;
    std::set<int> var_indices;
    auto harvest = [&](const Term& t) {
      for (const Term& s : subterms(t)) {
        if (depth(s) <= budget_.max_term_depth) pool.insert(s);
      }
      for (int v : vars(t)) var_indices.insert(v);
    };
    for (const Identity& id : axioms_) {
      harvest(id.lhs);
      harvest(id.rhs);
    }
    if (goal_) {
      harvest(goal_->lhs);
      harvest(goal_->rhs);
    }
    int max_var = 2;
    for (int v : var_indices) max_var = std::max(max_var, v);
    for (int v = 1; v <= max_var; ++v) pool.insert(Term::var(v));
    pool_.assign(pool.begin(), pool.end());
    for (const Term& t : pool_) {
      pool_positions_.push_back(positions(t).all);
    }
  }

  void seed() {
    for (const Identity& id : axioms_) add(id, AxiomRule{});
    if (stop_) return;
    std::set<Term> refl_terms(pool_.begin(), pool_.end());
    if (goal_) {
      refl_terms.insert(goal_->lhs);
      refl_terms.insert(goal_->rhs);
    }
    for (const Term& t : refl_terms) {
      if (stop_) return;
      count_step();
      if (stop_) return;
      add(Identity{t, t}, ReflRule{});
    }
  }

  void count_step() {
    if (++steps_used_ > budget_.max_steps) {
      budget_hit_ = true;
      stop_ = true;
    }
  }

  bool known(const Identity& id) const { return index_.count(id) != 0; }

  void add(Identity id, Rule rule) {
    if (stop_) return;
    if (index_.count(id) != 0) return;
    if (steps_.size() >= budget_.max_identity_count) {
      budget_hit_ = true;
      stop_ = true;
      return;
    }
    const std::size_t i = steps_.size();
    index_.emplace(id, i);
    by_lhs_[id.lhs].push_back(i);
    by_rhs_[id.rhs].push_back(i);
    steps_.push_back(ProofStep{std::move(id), std::move(rule)});
    if (goal_ && steps_.back().conclusion == *goal_) {
      found_ = true;
      stop_ = true;
    }
  }

  void expand(std::size_t i) {
    const Identity id = steps_[i].conclusion;  // copy: steps_ may reallocate

    // Symmetry.
    count_step();
    if (stop_) return;
    add(Identity{id.rhs, id.lhs}, SymRule{i});
    if (stop_) return;

    // Transitivity with everything currently derived.
    if (auto it = by_rhs_.find(id.lhs); it != by_rhs_.end()) {
      const std::vector<std::size_t> candidates = it->second;
      for (std::size_t j : candidates) {
        count_step();
        if (stop_) return;
        add(Identity{steps_[j].conclusion.lhs, id.rhs}, TransRule{j, i});
        if (stop_) return;
      }
    }
    if (auto it = by_lhs_.find(id.rhs); it != by_lhs_.end()) {
      const std::vector<std::size_t> candidates = it->second;
      for (std::size_t j : candidates) {
        count_step();
        if (stop_) return;
        add(Identity{id.lhs, steps_[j].conclusion.rhs}, TransRule{i, j});
        if (stop_) return;
      }
    }

    // Variable substitution with pool instantiations.
    for (int x : vars(id.lhs)) {
      const Term var = Term::var(x);
      for (const Term& r : pool_) {
        if (r == var) continue;
        count_step();
        if (stop_) return;
        add(Identity{inductive_compose(id.lhs, var, r),
                     inductive_compose(id.rhs, var, r)},
            SubstRule{i, x, r});
        if (stop_) return;
      }
    }

    // Replacement inside pool contexts.
    for (std::size_t c = 0; c < pool_.size(); ++c) {
      const Term& context = pool_[c];
      for (const Position& p : pool_positions_[c]) {
        if (subterm_at(context, p) != id.lhs) continue;
        count_step();
        if (stop_) return;
        add(Identity{positional_compose(context, p, id.rhs), context},
            ReplaceRule{i, context, p});
        if (stop_) return;
      }
    }

    // Colored images under the monoid, bounded by the palette.  Images are
    // taken of axioms only: an algebra that multi-hypersatisfies the axioms
    // need not multi-hypersatisfy identities derived by substitution (the two
    // copies introduced by x <- r can be recolored independently), so firing
    // this rule on derived identities would make the closure unsound for such
    // algebras.  Axiom images keep the closure inside the deductive closure of
    // the axioms plus their colored images, which those algebras do satisfy.
    if (axioms_.count(id) != 0) expand_mh(i, id);
  }

  void expand_mh(std::size_t i, const Identity& id) {
    if (budget_.color_palette.empty()) return;
    const std::vector<Hypersubstitution>& pool = monoid_.elements();
    const int k = static_cast<int>(pool.size());

    const std::set<Position> lhs_set = positions(id.lhs).f_pos;
    const std::set<Position> rhs_set = positions(id.rhs).f_pos;
    const std::vector<Position> lhs_pos(lhs_set.begin(), lhs_set.end());
    const std::vector<Position> rhs_pos(rhs_set.begin(), rhs_set.end());
    const std::size_t total = lhs_pos.size() + rhs_pos.size();

    if (power_exceeds(k, static_cast<long>(total), 200000)) {
      // Cannot enumerate this identity's images within reason; the search is
      // no longer exhaustive.
      budget_hit_ = true;
      return;
    }

    std::vector<int> digits(total, 0);
    const std::size_t palette_size = budget_.color_palette.size();
    do {
      if (stop_) return;
      std::set<int> distinct(digits.begin(), digits.end());
      if (distinct.size() > palette_size) continue;
      count_step();
      if (stop_) return;

      std::map<Position, int> lhs_choice;
      for (std::size_t p = 0; p < lhs_pos.size(); ++p) {
        lhs_choice.emplace(lhs_pos[p], digits[p]);
      }
      std::map<Position, int> rhs_choice;
      for (std::size_t p = 0; p < rhs_pos.size(); ++p) {
        rhs_choice.emplace(rhs_pos[p], digits[lhs_pos.size() + p]);
      }
      Identity image{positionwise_image(id.lhs, pool, lhs_choice),
                     positionwise_image(id.rhs, pool, rhs_choice)};
      if (known(image)) continue;
      RealizedAssignment realized =
          realize_assignment(sig_, monoid_, id.lhs, lhs_choice, id.rhs, rhs_choice,
                             pool, budget_.color_palette);
      add(std::move(image),
          MhRule{i, std::move(realized.rho), std::move(realized.lhs_coloration),
                 std::move(realized.rhs_coloration)});
    } while (next_tuple(digits, k));
  }

  const Signature& sig_;
  const std::set<Identity>& axioms_;
  const MonoidSpec& monoid_;
  const SearchBudget& budget_;
  std::optional<Identity> goal_;

  std::vector<Term> pool_;
  std::vector<std::set<Position>> pool_positions_;

  std::vector<ProofStep> steps_;
  std::map<Identity, std::size_t> index_;
  std::map<Term, std::vector<std::size_t>> by_lhs_;
  std::map<Term, std::vector<std::size_t>> by_rhs_;

  bool stop_ = false;
  bool found_ = false;
  bool budget_hit_ = false;
  long steps_used_ = 0;
};

}  // namespace

ProveResult prove(const Signature& sig, const std::set<Identity>& axioms,
                  const Identity& goal, const MonoidSpec& m, const SearchBudget& budget) {
  SaturationEngine engine(sig, axioms, m, budget, goal);
  engine.run();
  ProveResult result;
  result.identity_count = engine.steps().size();
  result.steps_used = engine.steps_used();
  if (engine.found()) {
    result.outcome = SearchOutcome::Found;
    result.proof = engine.extract_goal_proof();
  } else if (engine.budget_hit()) {
    result.outcome = SearchOutcome::BudgetExhausted;
  } else {
    result.outcome = SearchOutcome::SaturatedNotFound;
  }
  return result;
}

ClosureResult mh_closure_bounded(const Signature& sig, const std::set<Identity>& axioms,
                                 const MonoidSpec& m, const SearchBudget& budget) {
  SaturationEngine engine(sig, axioms, m, budget, std::nullopt);
  engine.run();
  ClosureResult result;
  for (const ProofStep& step : engine.steps()) {
    result.identities.insert(step.conclusion);
  }
  result.budget_exhausted = engine.budget_hit();
  result.steps_used = engine.steps_used();
  return result;
}

// ---------------------------------------------------------------------------
// Soundness audit

AuditResult soundness_audit(const Signature& sig, const std::set<Identity>& axioms,
                            const std::set<Identity>& derived,
                            const std::vector<FiniteAlgebra>& algebras,
                            const MonoidSpec& m) {
  AuditResult result;
  for (std::size_t a = 0; a < algebras.size(); ++a) {
    for (const Identity& id : axioms) {
      if (auto witness = find_multi_hyp_violation(sig, algebras[a], id, m)) {
        result.status = AuditResult::Status::PremiseFailed;
        result.algebra_index = a;
        result.identity = id;
        result.detail = "algebra " + std::to_string(a) +
                        " does not multi-hypersatisfy the axiom " + to_string(id) +
                        "; failing image: " + to_string(witness->image);
        return result;
      }
    }
  }
  for (std::size_t a = 0; a < algebras.size(); ++a) {
    for (const Identity& id : derived) {
      if (auto failure = find_violation(algebras[a], id)) {
        result.status = AuditResult::Status::Unsound;
        result.algebra_index = a;
        result.identity = id;
        std::ostringstream detail;
        detail << "algebra " << a << " violates the derived identity " << to_string(id)
               << " (lhs=" << failure->lhs_value << ", rhs=" << failure->rhs_value << ")";
        result.detail = detail.str();
        return result;
      }
    }
  }
  result.status = AuditResult::Status::Ok;
  return result;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string rule_tag(const Rule& rule) {
  std::ostringstream out;
  std::visit([&](const auto& r) {
    using R = std::decay_t<decltype(r)>;
    if constexpr (std::is_same_v<R, AxiomRule>) {
      out << "axiom";
    } else if constexpr (std::is_same_v<R, ReflRule>) {
      out << "refl";
    } else if constexpr (std::is_same_v<R, SymRule>) {
      out << "sym " << r.premise + 1;
    } else if constexpr (std::is_same_v<R, TransRule>) {
      out << "trans " << r.left + 1 << ' ' << r.right + 1;
    } else if constexpr (std::is_same_v<R, SubstRule>) {
      out << "subst " << r.premise + 1 << ": x" << r.var << " <- "
          << to_string(r.replacement);
    } else if constexpr (std::is_same_v<R, ReplaceRule>) {
      out << "replace " << r.premise + 1 << " at " << to_string(r.at) << " in "
          << to_string(r.context);
    } else if constexpr (std::is_same_v<R, MhRule>) {
      out << "mh " << r.premise + 1 << " rho=" << to_string(r.rho)
          << " lhs=" << to_string(r.lhs_coloration)
          << " rhs=" << to_string(r.rhs_coloration);
    }
  }, rule);
  return out.str();
}

}  // namespace

std::string to_string(const Proof& proof) {
  std::ostringstream out;
  for (std::size_t i = 0; i < proof.steps.size(); ++i) {
    out << i + 1 << ". " << to_string(proof.steps[i].conclusion) << "  ["
        << rule_tag(proof.steps[i].rule) << "]\n";
  }
  return out.str();
}

}  // namespace mhyp
