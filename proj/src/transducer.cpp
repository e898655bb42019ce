#include "mhyp/transducer.hpp"

#include <algorithm>
#include <sstream>

#include "mhyp/gen.hpp"

namespace mhyp {

// ---------------------------------------------------------------------------
// ColoredTreeTransducer

namespace {

void validate_rhs(const ColoredTerm& rhs, const Signature& sig, int arity) {
  validate(rhs, sig);
  if (rhs.is_var()) {
    const int index = rhs.var_index();
    if (!is_aux_var_index(index)) {
      throw DomainError("production right sides may only use auxiliary variables");
    }
    const int k = index - kAuxVarBase;
    if (k < 1 || k > arity) {
      throw DomainError("auxiliary variable " + std::string("\xce\xbe") +
                        std::to_string(k) + " is outside the symbol's arity " +
                        std::to_string(arity));
    }
    return;
  }
  for (const ColoredTerm& c : rhs.children()) validate_rhs(c, sig, arity);
}

}  // namespace

void ColoredTreeTransducer::add(Production production) {
  const int arity = sig_.arity(production.symbol);
  if (production.color < 0) throw DomainError("colors must be nonnegative");
  validate_rhs(production.rhs, sig_, arity);
  auto key = std::make_pair(production.symbol, production.color);
  auto [it, inserted] = productions_.emplace(std::move(key), std::move(production));
  (void)it;
  if (!inserted) {
    throw DomainError("duplicate production for (" + it->second.symbol + ", " +
                      std::to_string(it->second.color) + ")");
  }
}

const Production* ColoredTreeTransducer::find(const std::string& symbol, int color) const {
  auto it = productions_.find({symbol, color});
  return it == productions_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// MhTransducer

namespace {

/// The production realizing sigma at (symbol, color): the image colored
/// constantly, with xi replaced by ξi.
Production production_of(const Signature& sig, const Hypersubstitution& sigma,
                         const std::string& symbol, int color) {
  const int arity = sig.arity(symbol);
  std::map<int, ColoredTerm> to_aux;
  for (int i = 1; i <= arity; ++i) {
    to_aux.emplace(i, ColoredTerm::var(kAuxVarBase + i));
  }
  ColoredTerm skeleton = ColoredTerm::attach_constant(sigma.image(symbol), color);
  // Replace ordinary variables by the corresponding auxiliary ones.
  struct Sub {
    const std::map<int, ColoredTerm>& m;
    ColoredTerm run(const ColoredTerm& t) const {
      if (t.is_var()) {
        auto it = m.find(t.var_index());
        if (it == m.end()) {
          throw DomainError("image variable outside the symbol's arity");
        }
        return it->second;
      }
      std::vector<ColoredTerm> kids;
      kids.reserve(t.children().size());
      for (const ColoredTerm& c : t.children()) kids.push_back(run(c));
      return ColoredTerm::app(t.symbol(), t.color(), std::move(kids));
    }
  };
  return Production{symbol, color, Sub{to_aux}.run(skeleton)};
}

}  // namespace

MhTransducer from_mhs(const Signature& sig, const MultiHypersubstitution& rho,
                      const std::set<int>& colors) {
  std::set<int> listed = colors;
  for (int q : rho.support()) listed.insert(q);
  ColoredTreeTransducer base(sig);
  for (int q : listed) {
    for (const auto& [name, arity] : sig.symbols()) {
      (void)arity;
      base.add(production_of(sig, rho.at(q), name, q));
    }
  }
  return MhTransducer(std::move(base), rho, std::move(listed));
}

Production MhTransducer::production_for(const std::string& symbol, int color) const {
  if (const Production* p = base_.find(symbol, color)) return *p;
  return production_of(base_.signature(), origin_.default_entry(), symbol, color);
}

std::string to_string(const Production& production, const Signature& sig) {
  std::ostringstream out;
  out << production.symbol << '^' << production.color;
  const int arity = sig.arity(production.symbol);
  if (arity > 0) {
    out << '(';
    for (int i = 1; i <= arity; ++i) {
      if (i != 1) out << ',';
      out << "\xce\xbe" << i;
    }
    out << ')';
  }
  out << " -> " << to_string(production.rhs);
  return out.str();
}

// ---------------------------------------------------------------------------
// Derivation

namespace {

/// Positions of ξk occurrences in a production right side, k -> positions.
std::map<int, std::vector<Position>> aux_occurrences(const ColoredTerm& rhs) {
  std::map<int, std::vector<Position>> out;
  struct Walk {
    std::map<int, std::vector<Position>>& out;
    void run(const ColoredTerm& t, const Position& here) const {
      if (t.is_var()) {
        if (is_aux_var_index(t.var_index())) {
          out[t.var_index() - kAuxVarBase].push_back(here);
        }
        return;
      }
      for (std::size_t i = 0; i < t.children().size(); ++i) {
        run(t.children()[i], here.child(static_cast<int>(i) + 1));
      }
    }
  };
  Walk{out}.run(rhs, Position::root());
  return out;
}

/// Splices one production application at `pos`: the node's children are
/// substituted for the right side's auxiliary variables.
ColoredTerm splice(const ColoredTerm& term, const Position& pos, const Production& prod) {
  const ColoredTerm node = restrict_to(term, pos);
  if (node.is_var()) {
    throw DomainError("no production applies at variable position " + to_string(pos));
  }
  std::map<int, ColoredTerm> binding;
  for (std::size_t i = 0; i < node.children().size(); ++i) {
    binding.emplace(kAuxVarBase + static_cast<int>(i) + 1, node.children()[i]);
  }
  struct Sub {
    const std::map<int, ColoredTerm>& m;
    ColoredTerm run(const ColoredTerm& t) const {
      if (t.is_var()) {
        auto it = m.find(t.var_index());
        return it == m.end() ? t : it->second;
      }
      std::vector<ColoredTerm> kids;
      kids.reserve(t.children().size());
      for (const ColoredTerm& c : t.children()) kids.push_back(run(c));
      return ColoredTerm::app(t.symbol(), t.color(), std::move(kids));
    }
  };
  return positional_compose(term, pos, Sub{binding}.run(prod.rhs));
}

template <typename Lookup>
ColoredTerm direct_derive_impl(const ColoredTerm& term, const Position& pos,
                               Lookup&& lookup) {
  const ColoredTerm node = restrict_to(term, pos);
  if (node.is_var()) {
    throw DomainError("no production applies at variable position " + to_string(pos));
  }
  std::optional<Production> prod = lookup(node.symbol(), node.color());
  if (!prod) {
    throw DomainError("no production for (" + node.symbol() + ", " +
                      std::to_string(node.color()) + ") at position " + to_string(pos));
  }
  return splice(term, pos, *prod);
}

template <typename Lookup>
DerivationState derive_step_impl(const DerivationState& state, const Position& pos,
                                 Lookup&& lookup) {
  if (state.pending.count(pos) == 0) {
    throw DomainError("position " + to_string(pos) + " is not pending");
  }
  const ColoredTerm node = restrict_to(state.current, pos);
  std::optional<Production> prod = lookup(node.symbol(), node.color());
  if (!prod) {
    throw DomainError("no production for (" + node.symbol() + ", " +
                      std::to_string(node.color()) + ") at position " + to_string(pos));
  }
  DerivationState next{splice(state.current, pos, *prod), {}};

  const std::map<int, std::vector<Position>> occurrences = aux_occurrences(prod->rhs);
  for (const Position& p : state.pending) {
    if (p == pos) continue;
    if (!pos.is_prefix_of(p)) {
      next.pending.insert(p);
      continue;
    }
    // p = pos . i . tail moves to pos . l . tail for each occurrence l of ξi.
    const std::size_t cut = pos.length();
    const int child = p.path()[cut];
    Position tail{std::vector<int>(p.path().begin() + static_cast<long>(cut) + 1,
                                   p.path().end())};
    auto it = occurrences.find(child);
    if (it == occurrences.end()) continue;  // the child was dropped
    for (const Position& l : it->second) {
      next.pending.insert(pos.concat(l).concat(tail));
    }
  }
  return next;
}

template <typename Lookup>
ColoredTerm run_impl(const ColoredTerm& input, Lookup&& lookup) {
  DerivationState state = start_derivation(input);
  while (!state.pending.empty()) {
    // Deepest position first (ties by largest path) so that a rewritten
    // node never has pending positions below it.
    const Position* deepest = nullptr;
    for (const Position& p : state.pending) {
      if (!deepest || p.length() > deepest->length() ||
          (p.length() == deepest->length() && *deepest < p)) {
        deepest = &p;
      }
    }
    state = derive_step_impl(state, *deepest, lookup);
  }
  return state.current;
}

}  // namespace

DerivationState start_derivation(const ColoredTerm& input) {
  return DerivationState{input, positions(input).f_pos};
}

ColoredTerm direct_derive(const ColoredTreeTransducer& t, const ColoredTerm& term,
                          const Position& pos) {
  return direct_derive_impl(term, pos, [&](const std::string& s, int q) {
    const Production* p = t.find(s, q);
    return p ? std::optional<Production>(*p) : std::nullopt;
  });
}

ColoredTerm direct_derive(const MhTransducer& t, const ColoredTerm& term,
                          const Position& pos) {
  return direct_derive_impl(term, pos, [&](const std::string& s, int q) {
    return std::optional<Production>(t.production_for(s, q));
  });
}

DerivationState derive_step(const ColoredTreeTransducer& t, const DerivationState& state,
                            const Position& pos) {
  return derive_step_impl(state, pos, [&](const std::string& s, int q) {
    const Production* p = t.find(s, q);
    return p ? std::optional<Production>(*p) : std::nullopt;
  });
}

DerivationState derive_step(const MhTransducer& t, const DerivationState& state,
                            const Position& pos) {
  return derive_step_impl(state, pos, [&](const std::string& s, int q) {
    return std::optional<Production>(t.production_for(s, q));
  });
}

ColoredTerm run(const MhTransducer& t, const ColoredTerm& input) {
  return run_impl(input, [&](const std::string& s, int q) {
    return std::optional<Production>(t.production_for(s, q));
  });
}

ColoredTerm run(const ColoredTreeTransducer& t, const ColoredTerm& input) {
  return run_impl(input, [&](const std::string& s, int q) {
    const Production* p = t.find(s, q);
    return p ? std::optional<Production>(*p) : std::nullopt;
  });
}

MhTransducer product(const Signature& sig, const MhTransducer& first,
                     const MhTransducer& second) {
  MultiHypersubstitution composed = compose_ch(sig, first.origin(), second.origin());
  std::set<int> colors = first.colors();
  for (int q : second.colors()) colors.insert(q);
  return from_mhs(sig, composed, colors);
}

std::optional<ColoredTerm> equiv_to_mhs(const Signature& sig, const MhTransducer& t,
                                        const MultiHypersubstitution& rho,
                                        const SampleConfig& config) {
  std::set<int> color_set = t.colors();
  for (int q : rho.support()) color_set.insert(q);
  if (color_set.empty()) color_set.insert(1);
  color_set.insert(*color_set.rbegin() + 1);  // a fresh color probes the default paths
  const std::vector<int> colors(color_set.begin(), color_set.end());

  for (const ColoredTerm& ct : enumerate_colored_terms(sig, config.exhaustive_depth,
                                                       config.exhaustive_vars, colors)) {
    if (run(t, ct) != apply_mhs(rho, ct)) return ct;
  }
  TermGen gen(config.seed);
  for (int i = 0; i < config.random_count; ++i) {
    const ColoredTerm ct =
        gen.colored_term(sig, config.random_depth, config.random_vars, colors);
    if (run(t, ct) != apply_mhs(rho, ct)) return ct;
  }
  return std::nullopt;
}

}  // namespace mhyp
