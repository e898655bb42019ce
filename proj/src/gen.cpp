#include "mhyp/gen.hpp"

#include <algorithm>

namespace mhyp {

std::vector<Term> enumerate_terms(const Signature& sig, int max_depth, int num_vars) {
  if (num_vars < 0) throw DomainError("num_vars must be nonnegative");
  // by_depth[d] holds all terms of depth <= d.
  std::vector<Term> current;
  for (int v = 1; v <= num_vars; ++v) current.push_back(Term::var(v));
  for (const auto& [name, arity] : sig.symbols()) {
    if (arity == 0) current.push_back(Term::app(name));
  }
  for (int d = 1; d <= max_depth; ++d) {
    std::vector<Term> next = current;
    for (const auto& [name, arity] : sig.symbols()) {
      if (arity == 0 || current.empty()) continue;
      // All choices of children from the previous layer.
      std::vector<std::size_t> pick(static_cast<std::size_t>(arity), 0);
      while (true) {
        std::vector<Term> kids;
        kids.reserve(static_cast<std::size_t>(arity));
        for (std::size_t i : pick) kids.push_back(current[i]);
        next.push_back(Term::app(name, std::move(kids)));
        std::size_t j = pick.size();
        while (j-- > 0) {
          if (++pick[j] < current.size()) break;
          pick[j] = 0;
          if (j == 0) goto done_symbol;
        }
        if (pick.empty()) break;
      }
    done_symbol:;
    }
    // Deduplicate (composites of depth < d were already present).
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    current = std::move(next);
  }
  return current;
}

std::vector<ColoredTerm> enumerate_colored_terms(const Signature& sig, int max_depth,
                                                 int num_vars,
                                                 const std::vector<int>& colors) {
  if (colors.empty()) throw DomainError("the color list must be nonempty");
  std::vector<ColoredTerm> current;
  for (int v = 1; v <= num_vars; ++v) current.push_back(ColoredTerm::var(v));
  for (const auto& [name, arity] : sig.symbols()) {
    if (arity == 0) {
      for (int q : colors) current.push_back(ColoredTerm::app(name, q));
    }
  }
  for (int d = 1; d <= max_depth; ++d) {
    std::vector<ColoredTerm> next = current;
    for (const auto& [name, arity] : sig.symbols()) {
      if (arity == 0 || current.empty()) continue;
      std::vector<std::size_t> pick(static_cast<std::size_t>(arity), 0);
      while (true) {
        for (int q : colors) {
          std::vector<ColoredTerm> kids;
          kids.reserve(static_cast<std::size_t>(arity));
          for (std::size_t i : pick) kids.push_back(current[i]);
          next.push_back(ColoredTerm::app(name, q, std::move(kids)));
        }
        std::size_t j = pick.size();
        while (j-- > 0) {
          if (++pick[j] < current.size()) break;
          pick[j] = 0;
          if (j == 0) goto done_symbol;
        }
        if (pick.empty()) break;
      }
    done_symbol:;
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    current = std::move(next);
  }
  return current;
}

int TermGen::below(int n) {
  if (n <= 0) throw DomainError("below() needs a positive bound");
  std::uniform_int_distribution<int> dist(0, n - 1);
  return dist(rng_);
}

Term TermGen::term(const Signature& sig, int max_depth, int num_vars) {
  std::vector<std::pair<std::string, int>> nonnullary;
  std::vector<std::string> nullary;
  for (const auto& [name, arity] : sig.symbols()) {
    if (arity == 0) {
      nullary.push_back(name);
    } else {
      nonnullary.emplace_back(name, arity);
    }
  }
  auto leaf = [&]() -> Term {
    const int options = num_vars + static_cast<int>(nullary.size());
    if (options == 0) throw DomainError("no leaves available: no variables or constants");
    const int pick = below(options);
    if (pick < num_vars) return Term::var(pick + 1);
    return Term::app(nullary[static_cast<std::size_t>(pick - num_vars)]);
  };
  if (max_depth <= 0 || nonnullary.empty() || below(3) == 0) return leaf();
  const auto& [name, arity] = nonnullary[below(static_cast<int>(nonnullary.size()))];
  std::vector<Term> kids;
  kids.reserve(static_cast<std::size_t>(arity));
  for (int i = 0; i < arity; ++i) kids.push_back(term(sig, max_depth - 1, num_vars));
  return Term::app(name, std::move(kids));
}

ColoredTerm TermGen::colored_term(const Signature& sig, int max_depth, int num_vars,
                                  const std::vector<int>& colors) {
  Term t = term(sig, max_depth, num_vars);
  return ColoredTerm::attach(t, coloration_for(t, colors));
}

Position TermGen::position_in(const Term& t) {
  const PositionSets ps = positions(t);
  std::vector<Position> all(ps.all.begin(), ps.all.end());
  return all[static_cast<std::size_t>(below(static_cast<int>(all.size())))];
}

Coloration TermGen::coloration_for(const Term& t, const std::vector<int>& colors) {
  if (colors.empty()) throw DomainError("the color list must be nonempty");
  std::map<Position, int> assignment;
  for (const Position& p : positions(t).f_pos) {
    assignment.emplace(p, colors[static_cast<std::size_t>(below(static_cast<int>(colors.size())))]);
  }
  return Coloration(std::move(assignment));
}

Hypersubstitution TermGen::hypersub(const Signature& sig, int max_depth) {
  std::map<std::string, Term> images;
  for (const auto& [name, arity] : sig.symbols()) {
    if (arity == 0) {
      // The image of a constant must be variable-free; reuse the constant.
      images.emplace(name, Term::app(name));
      continue;
    }
    images.emplace(name, term(sig, max_depth, arity));
  }
  return Hypersubstitution(sig, std::move(images));
}

namespace {

/// Builds a term whose variable occurrence sequence is exactly
/// x_lo, ..., x_hi, using symbols of the signature for inner nodes.
Term sequence_term(TermGen& gen, const Signature& sig,
                   const std::vector<std::pair<std::string, int>>& splittable,
                   int lo, int hi) {
  if (lo == hi) return Term::var(lo);
  const int width = hi - lo + 1;
  // Pick a symbol whose arity can split the range into nonempty chunks.
  std::vector<std::pair<std::string, int>> usable;
  for (const auto& [name, arity] : splittable) {
    if (arity >= 2 && arity <= width) usable.emplace_back(name, arity);
  }
  if (usable.empty()) {
    throw DomainError("no symbol of arity in [2, " + std::to_string(width) +
                      "] to build a sequence-preserving image");
  }
  const auto& [name, arity] = usable[static_cast<std::size_t>(
      gen.below(static_cast<int>(usable.size())))];
  // Choose arity-1 distinct split points in [lo, hi).
  std::vector<int> cuts;
  while (static_cast<int>(cuts.size()) < arity - 1) {
    const int cut = lo + gen.below(width - 1);  // in [lo, hi-1]
    if (std::find(cuts.begin(), cuts.end(), cut) == cuts.end()) cuts.push_back(cut);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<Term> kids;
  int start = lo;
  for (int c = 0; c < arity; ++c) {
    const int end = c + 1 < arity ? cuts[static_cast<std::size_t>(c)] : hi;
    kids.push_back(sequence_term(gen, sig, splittable, start, end));
    start = end + 1;
  }
  return Term::app(name, std::move(kids));
}

}  // namespace

Hypersubstitution TermGen::sequence_preserving_hypersub(const Signature& sig) {
  std::vector<std::pair<std::string, int>> splittable;
  for (const auto& [name, arity] : sig.symbols()) {
    if (arity >= 2) splittable.emplace_back(name, arity);
  }
  std::map<std::string, Term> images;
  for (const auto& [name, arity] : sig.symbols()) {
    if (arity == 0) {
      images.emplace(name, Term::app(name));
    } else if (arity == 1) {
      images.emplace(name, Term::var(1));
    } else {
      images.emplace(name, sequence_term(*this, sig, splittable, 1, arity));
    }
  }
  return Hypersubstitution(sig, std::move(images));
}

MultiHypersubstitution TermGen::mhs(const Signature& sig, const MonoidSpec& monoid,
                                    int support_size, int image_depth) {
  std::map<int, Hypersubstitution> table;
  for (int q = 1; q <= support_size; ++q) {
    table.emplace(q, hypersub(sig, image_depth));
  }
  return MultiHypersubstitution(sig, monoid, std::move(table), hypersub(sig, image_depth));
}

FiniteAlgebra TermGen::algebra(const Signature& sig, int carrier_size) {
  std::map<std::string, OpTable> tables;
  for (const auto& [name, arity] : sig.symbols()) {
    OpTable table;
    table.arity = arity;
    long size = 1;
    for (int i = 0; i < arity; ++i) size *= carrier_size;
    table.entries.resize(static_cast<std::size_t>(size));
    for (int& e : table.entries) e = below(carrier_size);
    tables.emplace(name, std::move(table));
  }
  return FiniteAlgebra(sig, carrier_size, std::move(tables));
}

Valuation TermGen::valuation(const std::set<int>& variables, int carrier_size) {
  Valuation out;
  for (int v : variables) out.emplace(v, below(carrier_size));
  return out;
}

}  // namespace mhyp
