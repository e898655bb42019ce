#include "mhyp/algebra.hpp"

#include <algorithm>

#include "mhyp/enumerate.hpp"

namespace mhyp {

// ---------------------------------------------------------------------------
// FiniteAlgebra

namespace {

long table_size(int carrier, int arity) {
  long size = 1;
  for (int i = 0; i < arity; ++i) {
    size *= carrier;
    if (size > 100'000'000) throw DomainError("operation table too large");
  }
  return size;
}

}  // namespace

FiniteAlgebra::FiniteAlgebra(const Signature& sig, int carrier_size,
                             std::map<std::string, OpTable> tables)
    : carrier_size_(carrier_size), tables_(std::move(tables)) {
  if (carrier_size < 1) throw DomainError("the carrier must be nonempty");
  for (const auto& [name, arity] : sig.symbols()) {
    auto it = tables_.find(name);
    if (it == tables_.end()) {
      throw DomainError("no operation table for symbol '" + name + "'");
    }
    const OpTable& table = it->second;
    if (table.arity != arity) {
      throw DomainError("table for '" + name + "' has arity " +
                        std::to_string(table.arity) + ", expected " +
                        std::to_string(arity));
    }
    const long expected = table_size(carrier_size, arity);
    if (static_cast<long>(table.entries.size()) != expected) {
      throw DomainError("table for '" + name + "' has " +
                        std::to_string(table.entries.size()) + " entries, expected " +
                        std::to_string(expected));
    }
    for (int e : table.entries) {
      if (e < 0 || e >= carrier_size) {
        throw DomainError("table entry " + std::to_string(e) + " for '" + name +
                          "' is outside the carrier");
      }
    }
  }
  for (const auto& [name, table] : tables_) {
    (void)table;
    if (!sig.contains(name)) {
      throw DomainError("table for unknown symbol '" + name + "'");
    }
  }
}

int FiniteAlgebra::apply(const std::string& symbol, const std::vector<int>& args) const {
  auto it = tables_.find(symbol);
  if (it == tables_.end()) {
    throw DomainError("no operation table for symbol '" + symbol + "'");
  }
  const OpTable& table = it->second;
  if (static_cast<int>(args.size()) != table.arity) {
    throw DomainError("operation '" + symbol + "' applied to " +
                      std::to_string(args.size()) + " arguments, expected " +
                      std::to_string(table.arity));
  }
  long index = 0;
  for (int a : args) {
    if (a < 0 || a >= carrier_size_) {
      throw DomainError("argument " + std::to_string(a) + " is outside the carrier");
    }
    index = index * carrier_size_ + a;
  }
  return table.entries[static_cast<std::size_t>(index)];
}

// ---------------------------------------------------------------------------
// Evaluation and satisfaction

int eval(const FiniteAlgebra& a, const Term& term, const Valuation& valuation) {
  if (term.is_var()) {
    auto it = valuation.find(term.var_index());
    if (it == valuation.end()) {
      throw DomainError("valuation does not assign x" + std::to_string(term.var_index()));
    }
    return it->second;
  }
  std::vector<int> args;
  args.reserve(term.children().size());
  for (const Term& c : term.children()) args.push_back(eval(a, c, valuation));
  return a.apply(term.symbol(), args);
}

std::optional<SatisfactionFailure> find_violation(const FiniteAlgebra& a,
                                                  const Identity& id, long cap) {
  std::set<int> var_set = vars(id.lhs);
  for (int v : vars(id.rhs)) var_set.insert(v);
  const std::vector<int> var_list(var_set.begin(), var_set.end());
  const int n = a.carrier_size();
  if (power_exceeds(n, static_cast<long>(var_list.size()), cap)) {
    throw CapError("valuation enumeration exceeds the cap of " + std::to_string(cap));
  }
  std::vector<int> digits(var_list.size(), 0);
  do {
    Valuation valuation;
    for (std::size_t i = 0; i < var_list.size(); ++i) {
      valuation.emplace(var_list[i], digits[i]);
    }
    const int l = eval(a, id.lhs, valuation);
    const int r = eval(a, id.rhs, valuation);
    if (l != r) return SatisfactionFailure{std::move(valuation), l, r};
  } while (next_tuple(digits, n));
  return std::nullopt;
}

bool satisfies(const FiniteAlgebra& a, const Identity& id, long cap) {
  return !find_violation(a, id, cap).has_value();
}

bool satisfies_all(const FiniteAlgebra& a, const std::set<Identity>& ids, long cap) {
  return std::all_of(ids.begin(), ids.end(),
                     [&](const Identity& id) { return satisfies(a, id, cap); });
}

// ---------------------------------------------------------------------------
// Derived algebras

namespace {

OpTable derived_table(const FiniteAlgebra& a, int arity, const Term& image) {
  const int n = a.carrier_size();
  OpTable table;
  table.arity = arity;
  table.entries.resize(static_cast<std::size_t>(table_size(n, arity)));
  std::vector<int> digits(static_cast<std::size_t>(arity), 0);
  std::size_t index = 0;
  do {
    Valuation valuation;
    for (int i = 0; i < arity; ++i) {
      valuation.emplace(i + 1, digits[static_cast<std::size_t>(i)]);
    }
    table.entries[index++] = eval(a, image, valuation);
  } while (next_tuple(digits, n));
  return table;
}

}  // namespace

FiniteAlgebra derived_algebra(const Signature& sig, const FiniteAlgebra& a,
                              const Hypersubstitution& sigma) {
  std::map<std::string, OpTable> tables;
  for (const auto& [name, arity] : sig.symbols()) {
    tables.emplace(name, derived_table(a, arity, sigma.image(name)));
  }
  return FiniteAlgebra(sig, a.carrier_size(), std::move(tables));
}

DerivedFamily::DerivedFamily(int carrier_size,
                             std::map<std::pair<int, std::string>, OpTable> slices,
                             std::map<std::string, OpTable> default_slice)
    : carrier_size_(carrier_size), slices_(std::move(slices)),
      default_slice_(std::move(default_slice)) {}

const OpTable& DerivedFamily::table(int color, const std::string& symbol) const {
  auto it = slices_.find({color, symbol});
  if (it != slices_.end()) return it->second;
  auto dt = default_slice_.find(symbol);
  if (dt == default_slice_.end()) {
    throw DomainError("derived family has no table for symbol '" + symbol + "'");
  }
  return dt->second;
}

FiniteAlgebra DerivedFamily::slice_algebra(const Signature& sig, int color) const {
  std::map<std::string, OpTable> tables;
  for (const auto& [name, arity] : sig.symbols()) {
    (void)arity;
    tables.emplace(name, table(color, name));
  }
  return FiniteAlgebra(sig, carrier_size_, std::move(tables));
}

DerivedFamily derived_algebra_mh(const Signature& sig, const FiniteAlgebra& a,
                                 const MultiHypersubstitution& rho,
                                 const std::set<int>& colors) {
  std::map<std::pair<int, std::string>, OpTable> slices;
  for (int q : colors) {
    const Hypersubstitution& sigma = rho.at(q);
    for (const auto& [name, arity] : sig.symbols()) {
      slices.emplace(std::make_pair(q, name), derived_table(a, arity, sigma.image(name)));
    }
  }
  std::map<std::string, OpTable> default_slice;
  for (const auto& [name, arity] : sig.symbols()) {
    default_slice.emplace(name,
                          derived_table(a, arity, rho.default_entry().image(name)));
  }
  return DerivedFamily(a.carrier_size(), std::move(slices), std::move(default_slice));
}

int eval_colored(const DerivedFamily& family, const ColoredTerm& term,
                 const Valuation& valuation) {
  if (term.is_var()) {
    auto it = valuation.find(term.var_index());
    if (it == valuation.end()) {
      throw DomainError("valuation does not assign x" + std::to_string(term.var_index()));
    }
    return it->second;
  }
  const OpTable& table = family.table(term.color(), term.symbol());
  long index = 0;
  for (const ColoredTerm& c : term.children()) {
    index = index * family.carrier_size() + eval_colored(family, c, valuation);
  }
  if (static_cast<int>(term.children().size()) != table.arity) {
    throw DomainError("colored node arity does not match its derived table");
  }
  return table.entries[static_cast<std::size_t>(index)];
}

// ---------------------------------------------------------------------------
// Multi-hyperidentity checking

std::optional<MultiHypCounterexample> find_multi_hyp_violation(
    const Signature& sig, const FiniteAlgebra& a, const Identity& id,
    const MonoidSpec& m, long cap) {
  if (!m.is_explicit()) {
    throw DomainError("multi-hyperidentity checking needs an explicit monoid");
  }
  (void)sig;
  const std::vector<Hypersubstitution>& pool = m.elements();
  const int k = static_cast<int>(pool.size());

  const std::set<Position> lhs_pos_set = positions(id.lhs).f_pos;
  const std::set<Position> rhs_pos_set = positions(id.rhs).f_pos;
  const std::vector<Position> lhs_pos(lhs_pos_set.begin(), lhs_pos_set.end());
  const std::vector<Position> rhs_pos(rhs_pos_set.begin(), rhs_pos_set.end());

  if (power_exceeds(k, static_cast<long>(lhs_pos.size() + rhs_pos.size()), cap)) {
    throw CapError("per-position choice enumeration exceeds the cap of " +
                   std::to_string(cap));
  }

  // Precompute each side's images (one per per-position choice) so the pair
  // loop below reuses them instead of rebuilding terms.
  auto images_of = [&](const Term& side, const std::vector<Position>& pos) {
    std::vector<std::pair<std::map<Position, int>, Term>> images;
    std::vector<int> digits(pos.size(), 0);
    do {
      std::map<Position, int> choice;
      for (std::size_t i = 0; i < pos.size(); ++i) choice.emplace(pos[i], digits[i]);
      images.emplace_back(choice, positionwise_image(side, pool, choice));
    } while (next_tuple(digits, k));
    return images;
  };

  const auto lhs_images = images_of(id.lhs, lhs_pos);
  const auto rhs_images = images_of(id.rhs, rhs_pos);
  for (const auto& [lhs_choice, lhs_image] : lhs_images) {
    for (const auto& [rhs_choice, rhs_image] : rhs_images) {
      const Identity image{lhs_image, rhs_image};
      if (auto failure = find_violation(a, image)) {
        return MultiHypCounterexample{lhs_choice,          rhs_choice,
                                      image,               failure->valuation,
                                      failure->lhs_value,  failure->rhs_value};
      }
    }
  }
  return std::nullopt;
}

bool is_multi_hyperidentity(const Signature& sig, const FiniteAlgebra& a,
                            const Identity& id, const MonoidSpec& m, long cap) {
  return !find_multi_hyp_violation(sig, a, id, m, cap).has_value();
}

// ---------------------------------------------------------------------------
// Rectangular bands

Signature rect_band_signature() {
  Signature sig;
  sig.add("f", 2);
  return sig;
}

FiniteAlgebra rect_band(int m, int n) {
  if (m < 1 || n < 1) throw DomainError("rectangular band dimensions must be positive");
  const int carrier = m * n;
  OpTable table;
  table.arity = 2;
  table.entries.resize(static_cast<std::size_t>(carrier) * static_cast<std::size_t>(carrier));
  for (int a = 0; a < carrier; ++a) {
    for (int b = 0; b < carrier; ++b) {
      const int row = a / n;       // first component of a
      const int col = b % n;       // second component of b
      table.entries[static_cast<std::size_t>(a) * carrier + b] = row * n + col;
    }
  }
  return FiniteAlgebra(rect_band_signature(), carrier, {{"f", std::move(table)}});
}

}  // namespace mhyp
