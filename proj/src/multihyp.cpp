#include "mhyp/multihyp.hpp"

#include <sstream>

#include "mhyp/enumerate.hpp"

namespace mhyp {

// ---------------------------------------------------------------------------
// MultiHypersubstitution

MultiHypersubstitution::MultiHypersubstitution(const Signature& sig, MonoidSpec monoid,
                                               std::map<int, Hypersubstitution> table,
                                               Hypersubstitution default_entry)
    : monoid_(std::move(monoid)), table_(std::move(table)),
      default_(std::move(default_entry)) {
  for (const auto& [color, sigma] : table_) {
    if (color < 0) throw DomainError("colors must be nonnegative");
    if (!monoid_.contains(sig, sigma)) {
      throw DomainError("entry for color " + std::to_string(color) +
                        " is not a member of the declared monoid: " + to_string(sigma));
    }
  }
  if (!monoid_.contains(sig, default_)) {
    throw DomainError("the default entry is not a member of the declared monoid: " +
                      to_string(default_));
  }
}

MultiHypersubstitution MultiHypersubstitution::identity(const Signature& sig,
                                                        MonoidSpec monoid) {
  return MultiHypersubstitution(sig, std::move(monoid), {},
                                Hypersubstitution::identity(sig));
}

MultiHypersubstitution MultiHypersubstitution::constant(const Signature& sig,
                                                        MonoidSpec monoid,
                                                        Hypersubstitution sigma) {
  return MultiHypersubstitution(sig, std::move(monoid), {}, std::move(sigma));
}

const Hypersubstitution& MultiHypersubstitution::at(int color) const {
  auto it = table_.find(color);
  return it == table_.end() ? default_ : it->second;
}

std::set<int> MultiHypersubstitution::support() const {
  std::set<int> out;
  for (const auto& [color, sigma] : table_) {
    (void)sigma;
    out.insert(color);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Extension to colored terms

namespace {

ColoredTerm substitute_colored_vars(const ColoredTerm& skeleton,
                                    const std::map<int, ColoredTerm>& m) {
  if (skeleton.is_var()) {
    auto it = m.find(skeleton.var_index());
    return it == m.end() ? skeleton : it->second;
  }
  std::vector<ColoredTerm> kids;
  kids.reserve(skeleton.children().size());
  for (const ColoredTerm& c : skeleton.children()) {
    kids.push_back(substitute_colored_vars(c, m));
  }
  return ColoredTerm::app(skeleton.symbol(), skeleton.color(), std::move(kids));
}

}  // namespace

ColoredTerm apply_mhs(const MultiHypersubstitution& rho, const ColoredTerm& term) {
  if (term.is_var()) return term;
  const int q = term.color();
  const Hypersubstitution& sigma = rho.at(q);
  std::map<int, ColoredTerm> argument_images;
  const auto& kids = term.children();
  for (std::size_t i = 0; i < kids.size(); ++i) {
    argument_images.emplace(static_cast<int>(i) + 1, apply_mhs(rho, kids[i]));
  }
  const ColoredTerm skeleton = ColoredTerm::attach_constant(sigma.image(term.symbol()), q);
  return substitute_colored_vars(skeleton, argument_images);
}

MultiHypersubstitution compose_ch(const Signature& sig,
                                  const MultiHypersubstitution& first,
                                  const MultiHypersubstitution& second) {
  if (first.monoid() != second.monoid()) {
    throw DomainError("colorwise composition needs both operands over the same monoid");
  }
  std::set<int> colors = first.support();
  for (int q : second.support()) colors.insert(q);
  std::map<int, Hypersubstitution> table;
  for (int q : colors) {
    Hypersubstitution composite = compose_h(sig, first.at(q), second.at(q));
    if (!first.monoid().contains(sig, composite)) {
      throw DomainError("composite for color " + std::to_string(q) +
                        " escapes the monoid: " + to_string(composite));
    }
    table.emplace(q, std::move(composite));
  }
  Hypersubstitution default_composite =
      compose_h(sig, first.default_entry(), second.default_entry());
  if (!first.monoid().contains(sig, default_composite)) {
    throw DomainError("the default composite escapes the monoid: " +
                      to_string(default_composite));
  }
  return MultiHypersubstitution(sig, first.monoid(), std::move(table),
                                std::move(default_composite));
}

// ---------------------------------------------------------------------------
// Image sets

namespace {

/// All colorations of `positions` with colors from `palette`, reported
/// through the callback as position→color maps.
template <typename Callback>
void for_each_coloration(const std::set<Position>& positions,
                         const std::vector<int>& palette, Callback&& cb) {
  const std::vector<Position> pos(positions.begin(), positions.end());
  std::vector<int> digits(pos.size(), 0);
  do {
    std::map<Position, int> coloration;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      coloration.emplace(pos[i], palette[static_cast<std::size_t>(digits[i])]);
    }
    cb(coloration);
  } while (next_tuple(digits, static_cast<int>(palette.size())));
}

std::set<Term> side_images_under_rho(const Signature& sig,
                                     const MultiHypersubstitution& rho, const Term& side,
                                     const std::vector<int>& palette) {
  (void)sig;
  std::set<Term> out;
  for_each_coloration(positions(side).f_pos, palette, [&](const std::map<Position, int>& c) {
    const ColoredTerm colored = ColoredTerm::attach(side, Coloration(c));
    out.insert(apply_mhs(rho, colored).term());
  });
  return out;
}

}  // namespace

std::set<Identity> rho_image_of_identity(const Signature& sig,
                                         const MultiHypersubstitution& rho,
                                         const Term& lhs, const Term& rhs,
                                         const std::set<int>& colors, long cap) {
  if (colors.empty()) throw DomainError("the color set must be nonempty");
  const std::vector<int> palette(colors.begin(), colors.end());
  const long lhs_slots = static_cast<long>(positions(lhs).f_pos.size());
  const long rhs_slots = static_cast<long>(positions(rhs).f_pos.size());
  if (power_exceeds(static_cast<long>(palette.size()), lhs_slots + rhs_slots, cap)) {
    throw CapError("coloration pair enumeration exceeds the cap of " + std::to_string(cap));
  }
  const std::set<Term> lhs_images = side_images_under_rho(sig, rho, lhs, palette);
  const std::set<Term> rhs_images = side_images_under_rho(sig, rho, rhs, palette);
  std::set<Identity> out;
  for (const Term& l : lhs_images) {
    for (const Term& r : rhs_images) out.insert(Identity{l, r});
  }
  return out;
}

Term positionwise_image(const Term& term, const std::vector<Hypersubstitution>& pool,
                        const std::map<Position, int>& choice) {
  struct Rec {
    const std::vector<Hypersubstitution>& pool;
    const std::map<Position, int>& choice;

    Term run(const Term& t, const Position& here) const {
      if (t.is_var()) return t;
      auto it = choice.find(here);
      if (it == choice.end()) {
        throw DomainError("per-position choice does not cover position " + to_string(here));
      }
      const Hypersubstitution& sigma = pool.at(static_cast<std::size_t>(it->second));
      std::map<int, Term> argument_images;
      const auto& kids = t.children();
      for (std::size_t i = 0; i < kids.size(); ++i) {
        argument_images.emplace(static_cast<int>(i) + 1,
                                run(kids[i], here.child(static_cast<int>(i) + 1)));
      }
      return inductive_compose(sigma.image(t.symbol()),
                               [&] {
                                 std::vector<std::pair<Term, Term>> bindings;
                                 for (auto& [v, img] : argument_images) {
                                   bindings.emplace_back(Term::var(v), img);
                                 }
                                 return bindings;
                               }());
    }
  };
  return Rec{pool, choice}.run(term, Position::root());
}

namespace {

std::set<Term> side_positionwise_images(const Term& side,
                                        const std::vector<Hypersubstitution>& pool,
                                        long cap) {
  const std::set<Position> f_pos = positions(side).f_pos;
  std::set<Term> out;
  for_each_coloration(f_pos,
                      [&] {
                        std::vector<int> indices;
                        for (int i = 0; i < static_cast<int>(pool.size()); ++i) {
                          indices.push_back(i);
                        }
                        return indices;
                      }(),
                      [&](const std::map<Position, int>& choice) {
                        out.insert(positionwise_image(side, pool, choice));
                      });
  (void)cap;
  return out;
}

}  // namespace

std::set<Identity> chi_mc(const Signature& sig, const MonoidSpec& m,
                          const std::set<Identity>& eqs, long cap) {
  if (!m.is_explicit()) {
    throw DomainError("the colored-image operator needs an explicit monoid; "
                      "predicate monoids are not enumerable");
  }
  (void)sig;
  const std::vector<Hypersubstitution>& pool = m.elements();
  std::set<Identity> out;
  for (const Identity& id : eqs) {
    const long lhs_slots = static_cast<long>(positions(id.lhs).f_pos.size());
    const long rhs_slots = static_cast<long>(positions(id.rhs).f_pos.size());
    if (power_exceeds(static_cast<long>(pool.size()), lhs_slots + rhs_slots, cap)) {
      throw CapError("per-position choice enumeration exceeds the cap of " +
                     std::to_string(cap));
    }
    const std::set<Term> lhs_images = side_positionwise_images(id.lhs, pool, cap);
    const std::set<Term> rhs_images = side_positionwise_images(id.rhs, pool, cap);
    for (const Term& l : lhs_images) {
      for (const Term& r : rhs_images) out.insert(Identity{l, r});
    }
  }
  return out;
}

RealizedAssignment realize_assignment(const Signature& sig, const MonoidSpec& monoid,
                                      const Term& lhs,
                                      const std::map<Position, int>& lhs_choice,
                                      const Term& rhs,
                                      const std::map<Position, int>& rhs_choice,
                                      const std::vector<Hypersubstitution>& pool,
                                      const std::vector<int>& palette) {
  // Map pool indices to palette colors in order of first appearance.
  std::map<int, int> color_of;
  auto allocate = [&](const std::map<Position, int>& choice) {
    for (const auto& [pos, index] : choice) {
      (void)pos;
      if (color_of.count(index) != 0) continue;
      if (color_of.size() >= palette.size()) {
        throw DomainError("the palette has " + std::to_string(palette.size()) +
                          " colors but the assignment uses more distinct elements");
      }
      color_of.emplace(index, palette[color_of.size()]);
    }
  };
  allocate(lhs_choice);
  allocate(rhs_choice);

  std::map<int, Hypersubstitution> table;
  for (const auto& [index, color] : color_of) {
    table.emplace(color, pool.at(static_cast<std::size_t>(index)));
  }
  const Hypersubstitution id = Hypersubstitution::identity(sig);
  Hypersubstitution default_entry =
      monoid.contains(sig, id)
          ? id
          : (table.empty() ? pool.at(0) : table.begin()->second);
  MultiHypersubstitution rho(sig, monoid, std::move(table), std::move(default_entry));

  auto to_coloration = [&](const std::map<Position, int>& choice) {
    std::map<Position, int> colors;
    for (const auto& [pos, index] : choice) colors.emplace(pos, color_of.at(index));
    return Coloration(std::move(colors));
  };
  // Validate that the choices cover the function positions exactly.
  ColoredTerm::attach(lhs, to_coloration(lhs_choice));
  ColoredTerm::attach(rhs, to_coloration(rhs_choice));
  return RealizedAssignment{std::move(rho), to_coloration(lhs_choice),
                            to_coloration(rhs_choice)};
}

std::string to_string(const MultiHypersubstitution& rho) {
  std::ostringstream out;
  out << '{';
  for (const auto& [color, sigma] : rho.table()) {
    out << color << ": " << to_string(sigma) << " | ";
  }
  out << "default: " << to_string(rho.default_entry()) << '}';
  return out.str();
}

}  // namespace mhyp
