#include "mhyp/hypersub.hpp"

#include <algorithm>
#include <sstream>

namespace mhyp {

// ---------------------------------------------------------------------------
// Hypersubstitution

Hypersubstitution::Hypersubstitution(const Signature& sig,
                                     std::map<std::string, Term> images)
    : images_(std::move(images)) {
  for (const auto& [name, arity] : sig.symbols()) {
    auto it = images_.find(name);
    if (it == images_.end()) {
      throw DomainError("hypersubstitution does not map symbol '" + name + "'");
    }
    validate(it->second, sig);
    for (int v : vars(it->second)) {
      if (v < 1 || v > arity) {
        throw DomainError("image of '" + name + "' uses x" + std::to_string(v) +
                          " outside x1..x" + std::to_string(arity));
      }
    }
  }
  for (const auto& [name, image] : images_) {
    (void)image;
    if (!sig.contains(name)) {
      throw DomainError("hypersubstitution maps unknown symbol '" + name + "'");
    }
  }
}

Hypersubstitution Hypersubstitution::identity(const Signature& sig) {
  std::map<std::string, Term> images;
  for (const auto& [name, arity] : sig.symbols()) {
    std::vector<Term> args;
    args.reserve(static_cast<std::size_t>(arity));
    for (int i = 1; i <= arity; ++i) args.push_back(Term::var(i));
    images.emplace(name, Term::app(name, std::move(args)));
  }
  return Hypersubstitution(sig, std::move(images));
}

const Term& Hypersubstitution::image(const std::string& symbol) const {
  auto it = images_.find(symbol);
  if (it == images_.end()) {
    throw DomainError("hypersubstitution does not map symbol '" + symbol + "'");
  }
  return it->second;
}

namespace {

Term substitute_vars(const Term& t, const std::map<int, Term>& m) {
  if (t.is_var()) {
    auto it = m.find(t.var_index());
    return it == m.end() ? t : it->second;
  }
  std::vector<Term> kids;
  kids.reserve(t.children().size());
  bool changed = false;
  for (const Term& c : t.children()) {
    Term r = substitute_vars(c, m);
    changed = changed || r != c;
    kids.push_back(std::move(r));
  }
  if (!changed) return t;
  return Term::app(t.symbol(), std::move(kids));
}

}  // namespace

Term apply_hat(const Hypersubstitution& sigma, const Term& term) {
  if (term.is_var()) return term;
  std::map<int, Term> argument_images;
  const auto& kids = term.children();
  for (std::size_t i = 0; i < kids.size(); ++i) {
    argument_images.emplace(static_cast<int>(i) + 1, apply_hat(sigma, kids[i]));
  }
  return substitute_vars(sigma.image(term.symbol()), argument_images);
}

Hypersubstitution compose_h(const Signature& sig, const Hypersubstitution& first,
                            const Hypersubstitution& second) {
  std::map<std::string, Term> images;
  for (const auto& [name, image] : second.images()) {
    images.emplace(name, apply_hat(first, image));
  }
  return Hypersubstitution(sig, std::move(images));
}

bool k1_member(const Signature& sig, const Hypersubstitution& sigma) {
  for (const auto& [name, arity] : sig.symbols()) {
    if (arity < 1) continue;
    const std::vector<int> seq = variable_sequence(sigma.image(name));
    if (seq.empty()) return false;
    if (seq.front() != 1 || seq.back() != arity) return false;
  }
  return true;
}

bool k2_member(const Signature& sig, const Hypersubstitution& sigma) {
  for (const auto& [name, arity] : sig.symbols()) {
    const std::vector<int> seq = variable_sequence(sigma.image(name));
    if (static_cast<int>(seq.size()) != arity) return false;
    for (int i = 0; i < arity; ++i) {
      if (seq[static_cast<std::size_t>(i)] != i + 1) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// MonoidSpec

MonoidSpec::MonoidSpec(MonoidKind kind, std::vector<Hypersubstitution> elements)
    : kind_(kind), elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

MonoidSpec MonoidSpec::explicit_set(std::vector<Hypersubstitution> elements) {
  if (elements.empty()) {
    throw DomainError("an explicit monoid needs at least one element");
  }
  return MonoidSpec(MonoidKind::Explicit, std::move(elements));
}

MonoidSpec MonoidSpec::predicate(MonoidKind kind) {
  if (kind != MonoidKind::K1 && kind != MonoidKind::K2 && kind != MonoidKind::Full) {
    throw DomainError("predicate monoid kind must be K1, K2 or Full");
  }
  return MonoidSpec(kind, {});
}

MonoidSpec MonoidSpec::explicit_plus(std::vector<Hypersubstitution> elements,
                                     MonoidKind base) {
  MonoidKind kind;
  switch (base) {
    case MonoidKind::K1: kind = MonoidKind::ExplicitPlusK1; break;
    case MonoidKind::K2: kind = MonoidKind::ExplicitPlusK2; break;
    default:
      throw DomainError("explicit_plus base must be K1 or K2");
  }
  return MonoidSpec(kind, std::move(elements));
}

bool MonoidSpec::contains(const Signature& sig, const Hypersubstitution& sigma) const {
  auto listed = [&] {
    return std::binary_search(elements_.begin(), elements_.end(), sigma);
  };
  switch (kind_) {
    case MonoidKind::Explicit: return listed();
    case MonoidKind::K1: return k1_member(sig, sigma);
    case MonoidKind::K2: return k2_member(sig, sigma);
    case MonoidKind::Full: return true;
    case MonoidKind::ExplicitPlusK1: return listed() || k1_member(sig, sigma);
    case MonoidKind::ExplicitPlusK2: return listed() || k2_member(sig, sigma);
  }
  return false;
}

std::optional<MonoidViolation> monoid_check(const Signature& sig, const MonoidSpec& m) {
  const Hypersubstitution id = Hypersubstitution::identity(sig);
  if (!m.contains(sig, id)) {
    return MonoidViolation{"the identity hypersubstitution is not a member", std::nullopt};
  }
  if (m.kind() == MonoidKind::Explicit || m.kind() == MonoidKind::ExplicitPlusK1 ||
      m.kind() == MonoidKind::ExplicitPlusK2) {
    for (const Hypersubstitution& a : m.elements()) {
      for (const Hypersubstitution& b : m.elements()) {
        const Hypersubstitution c = compose_h(sig, a, b);
        if (!m.contains(sig, c)) {
          return MonoidViolation{
              "composite of listed elements escapes the monoid: (" + to_string(a) +
                  ") after (" + to_string(b) + ") gives " + to_string(c),
              std::make_pair(a, b)};
        }
      }
    }
  }
  return std::nullopt;
}

std::set<Identity> chi_m(const Signature& sig, const MonoidSpec& m,
                         const std::set<Identity>& eqs) {
  if (!m.is_explicit()) {
    throw DomainError("the hyperidentity-image operator needs an explicit monoid; "
                      "predicate monoids are not enumerable");
  }
  std::set<Identity> out;
  for (const Hypersubstitution& sigma : m.elements()) {
    for (const Identity& id : eqs) {
      out.insert(Identity{apply_hat(sigma, id.lhs), apply_hat(sigma, id.rhs)});
    }
  }
  (void)sig;
  return out;
}

std::string to_string(const Hypersubstitution& sigma) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [name, image] : sigma.images()) {
    if (!first) out << "; ";
    first = false;
    out << name << " -> " << to_string(image);
  }
  return out.str();
}

}  // namespace mhyp
