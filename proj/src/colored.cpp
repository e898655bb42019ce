#include "mhyp/colored.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace mhyp {

// ---------------------------------------------------------------------------
// Coloration

Coloration::Coloration(std::map<Position, int> assignment)
    : assignment_(std::move(assignment)) {
  for (const auto& [pos, color] : assignment_) {
    (void)pos;
    if (color < 0) throw DomainError("colors must be nonnegative");
  }
}

int Coloration::at(const Position& pos) const {
  auto it = assignment_.find(pos);
  if (it == assignment_.end()) {
    throw DomainError("coloration does not assign position " + to_string(pos));
  }
  return it->second;
}

Coloration Coloration::restricted_to(const Position& pos) const {
  std::map<Position, int> out;
  for (const auto& [p, color] : assignment_) {
    if (pos.is_prefix_of(p)) {
      std::vector<int> tail(p.path().begin() + static_cast<long>(pos.length()),
                            p.path().end());
      out.emplace(Position(std::move(tail)), color);
    }
  }
  return Coloration(std::move(out));
}

// ---------------------------------------------------------------------------
// ColoredTerm

struct ColoredTerm::Node {
  int var_index = 0;  // > 0 for variables
  std::string symbol;
  int color = 0;
  std::vector<ColoredTerm> children;
};

ColoredTerm ColoredTerm::var(int index) {
  if (index <= 0) throw DomainError("variable index must be positive");
  auto node = std::make_shared<Node>();
  node->var_index = index;
  return ColoredTerm(std::move(node));
}

ColoredTerm ColoredTerm::app(std::string symbol, int color,
                             std::vector<ColoredTerm> children) {
  if (symbol.empty()) throw DomainError("application symbol must be nonempty");
  if (color < 0) throw DomainError("colors must be nonnegative");
  auto node = std::make_shared<Node>();
  node->symbol = std::move(symbol);
  node->color = color;
  node->children = std::move(children);
  return ColoredTerm(std::move(node));
}

namespace {

ColoredTerm attach_rec(const Term& t, const Coloration& col, const Position& here) {
  if (t.is_var()) return ColoredTerm::var(t.var_index());
  std::vector<ColoredTerm> kids;
  kids.reserve(t.children().size());
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    kids.push_back(attach_rec(t.children()[i], col, here.child(static_cast<int>(i) + 1)));
  }
  return ColoredTerm::app(t.symbol(), col.at(here), std::move(kids));
}

}  // namespace

ColoredTerm ColoredTerm::attach(const Term& term, const Coloration& coloration) {
  const PositionSets ps = positions(term);
  if (coloration.size() != ps.f_pos.size()) {
    throw DomainError("coloration domain has " + std::to_string(coloration.size()) +
                      " positions but the term has " + std::to_string(ps.f_pos.size()) +
                      " function positions");
  }
  for (const auto& [pos, color] : coloration.assignment()) {
    (void)color;
    if (ps.f_pos.count(pos) == 0) {
      throw DomainError("coloration assigns " + to_string(pos) +
                        " which is not a function position of " + to_string(term));
    }
  }
  return attach_rec(term, coloration, Position::root());
}

ColoredTerm ColoredTerm::attach_constant(const Term& term, int color) {
  if (term.is_var()) return ColoredTerm::var(term.var_index());
  std::vector<ColoredTerm> kids;
  kids.reserve(term.children().size());
  for (const Term& c : term.children()) kids.push_back(attach_constant(c, color));
  return ColoredTerm::app(term.symbol(), color, std::move(kids));
}

bool ColoredTerm::is_var() const noexcept { return node_->var_index > 0; }

int ColoredTerm::var_index() const {
  if (!is_var()) throw DomainError("var_index() called on an application node");
  return node_->var_index;
}

const std::string& ColoredTerm::symbol() const {
  if (is_var()) throw DomainError("symbol() called on a variable");
  return node_->symbol;
}

int ColoredTerm::color() const {
  if (is_var()) throw DomainError("color() called on a variable");
  return node_->color;
}

const std::vector<ColoredTerm>& ColoredTerm::children() const {
  if (is_var()) throw DomainError("children() called on a variable");
  return node_->children;
}

Term ColoredTerm::term() const {
  if (is_var()) return Term::var(var_index());
  std::vector<Term> kids;
  kids.reserve(children().size());
  for (const ColoredTerm& c : children()) kids.push_back(c.term());
  return Term::app(symbol(), std::move(kids));
}

namespace {

void collect_coloration(const ColoredTerm& t, const Position& here,
                        std::map<Position, int>& out) {
  if (t.is_var()) return;
  out.emplace(here, t.color());
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    collect_coloration(t.children()[i], here.child(static_cast<int>(i) + 1), out);
  }
}

}  // namespace

Coloration ColoredTerm::coloration() const {
  std::map<Position, int> out;
  collect_coloration(*this, Position::root(), out);
  return Coloration(std::move(out));
}

int ColoredTerm::node_count() const {
  if (is_var()) return 1;
  int n = 1;
  for (const ColoredTerm& c : children()) n += c.node_count();
  return n;
}

int ColoredTerm::compare(const ColoredTerm& other) const {
  if (node_ == other.node_) return 0;
  if (is_var() != other.is_var()) return is_var() ? -1 : 1;
  if (is_var()) return node_->var_index - other.node_->var_index;
  if (int c = node_->symbol.compare(other.node_->symbol); c != 0) return c;
  if (node_->color != other.node_->color) return node_->color < other.node_->color ? -1 : 1;
  const auto& a = node_->children;
  const auto& b = other.node_->children;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = a[i].compare(b[i]); c != 0) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

// ---------------------------------------------------------------------------
// Operations

void validate(const ColoredTerm& term, const Signature& sig) {
  if (term.is_var()) return;
  const int expected = sig.arity(term.symbol());
  const int actual = static_cast<int>(term.children().size());
  if (expected != actual) {
    throw DomainError("symbol '" + term.symbol() + "' has arity " +
                      std::to_string(expected) + " but is applied to " +
                      std::to_string(actual) + " arguments");
  }
  for (const ColoredTerm& c : term.children()) validate(c, sig);
}

PositionSets positions(const ColoredTerm& term) { return positions(term.term()); }

ColoredTerm restrict_to(const ColoredTerm& term, const Position& pos) {
  ColoredTerm cur = term;
  for (int step : pos.path()) {
    if (cur.is_var() || step > static_cast<int>(cur.children().size())) {
      throw DomainError("invalid position " + to_string(pos) + " in " + to_string(term));
    }
    cur = cur.children()[step - 1];
  }
  return cur;
}

std::set<ColoredTerm> colored_subterms(const ColoredTerm& term) {
  std::set<ColoredTerm> out;
  out.insert(term);
  if (!term.is_var()) {
    for (const ColoredTerm& c : term.children()) {
      std::set<ColoredTerm> sub = colored_subterms(c);
      out.insert(sub.begin(), sub.end());
    }
  }
  return out;
}

namespace {

ColoredTerm replace_colored(const ColoredTerm& t,
                            const std::vector<std::pair<ColoredTerm, ColoredTerm>>& bindings) {
  for (const auto& [target, replacement] : bindings) {
    if (t == target) return replacement;
  }
  if (t.is_var()) return t;
  std::vector<ColoredTerm> kids;
  kids.reserve(t.children().size());
  bool changed = false;
  for (const ColoredTerm& c : t.children()) {
    ColoredTerm r = replace_colored(c, bindings);
    changed = changed || r != c;
    kids.push_back(std::move(r));
  }
  if (!changed) return t;
  return ColoredTerm::app(t.symbol(), t.color(), std::move(kids));
}

}  // namespace

ColoredTerm inductive_compose(const ColoredTerm& term,
                              const std::vector<std::pair<ColoredTerm, ColoredTerm>>& bindings) {
  for (std::size_t i = 0; i < bindings.size(); ++i) {
    for (std::size_t j = 0; j < bindings.size(); ++j) {
      if (i == j) continue;
      if (colored_subterms(bindings[j].first).count(bindings[i].first) != 0) {
        throw DomainError("simultaneous replacement targets must not contain "
                          "one another: " + to_string(bindings[i].first) +
                          " occurs in " + to_string(bindings[j].first));
      }
    }
  }
  return replace_colored(term, bindings);
}

ColoredTerm inductive_compose(const ColoredTerm& term, const ColoredTerm& target,
                              const ColoredTerm& replacement) {
  return replace_colored(term, {{target, replacement}});
}

ColoredTerm positional_compose(const ColoredTerm& term, const Position& pos,
                               const ColoredTerm& replacement) {
  if (pos.is_root()) return replacement;
  if (term.is_var()) {
    throw DomainError("invalid position " + to_string(pos) + " in " + to_string(term));
  }
  const int step = pos.path().front();
  if (step > static_cast<int>(term.children().size())) {
    throw DomainError("invalid position " + to_string(pos) + " in " + to_string(term));
  }
  Position rest{std::vector<int>(pos.path().begin() + 1, pos.path().end())};
  std::vector<ColoredTerm> kids = term.children();
  kids[step - 1] = positional_compose(kids[step - 1], rest, replacement);
  return ColoredTerm::app(term.symbol(), term.color(), std::move(kids));
}

ColoredTerm positional_compose(const ColoredTerm& term,
                               const std::vector<std::pair<Position, ColoredTerm>>& bindings) {
  for (std::size_t i = 0; i < bindings.size(); ++i) {
    for (std::size_t j = i + 1; j < bindings.size(); ++j) {
      if (!bindings[i].first.parallel_to(bindings[j].first)) {
        throw DomainError("positions " + to_string(bindings[i].first) + " and " +
                          to_string(bindings[j].first) +
                          " are comparable; simultaneous replacement needs "
                          "pairwise parallel positions");
      }
    }
  }
  const PositionSets ps = positions(term);
  for (const auto& [pos, unused] : bindings) {
    (void)unused;
    if (ps.all.count(pos) == 0) {
      throw DomainError("invalid position " + to_string(pos) + " in " + to_string(term));
    }
  }
  ColoredTerm out = term;
  for (const auto& [pos, replacement] : bindings) {
    out = positional_compose(out, pos, replacement);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

void render_colored(const ColoredTerm& t, std::ostringstream& out) {
  if (t.is_var()) {
    const int idx = t.var_index();
    if (is_aux_var_index(idx)) {
      out << "\xce\xbe" << (idx - kAuxVarBase);
    } else {
      out << 'x' << idx;
    }
    return;
  }
  out << t.symbol() << '^' << t.color();
  if (!t.children().empty()) {
    out << '(';
    for (std::size_t i = 0; i < t.children().size(); ++i) {
      if (i != 0) out << ',';
      render_colored(t.children()[i], out);
    }
    out << ')';
  }
}

}  // namespace

std::string to_string(const ColoredTerm& term) {
  std::ostringstream out;
  render_colored(term, out);
  return out.str();
}

std::string to_string(const Coloration& coloration) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [pos, color] : coloration.assignment()) {
    if (!first) out << ", ";
    first = false;
    out << to_string(pos) << ':' << color;
  }
  out << '}';
  return out.str();
}

std::string to_string(const ColoredIdentity& id) {
  return to_string(id.lhs) + " = " + to_string(id.rhs);
}

}  // namespace mhyp
