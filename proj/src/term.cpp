#include "mhyp/term.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace mhyp {

// ---------------------------------------------------------------------------
// Signature

void Signature::add(const std::string& name, int arity) {
  if (name.empty()) throw DomainError("signature symbol name must be nonempty");
  if (arity < 0) throw DomainError("negative arity for symbol '" + name + "'");
  auto [it, inserted] = symbols_.emplace(name, arity);
  (void)it;
  if (!inserted) throw DomainError("duplicate symbol '" + name + "' in signature");
  max_arity_ = std::max(max_arity_, arity);
}

bool Signature::contains(const std::string& name) const {
  return symbols_.count(name) != 0;
}

int Signature::arity(const std::string& name) const {
  auto it = symbols_.find(name);
  if (it == symbols_.end()) throw DomainError("unknown symbol '" + name + "'");
  return it->second;
}

// ---------------------------------------------------------------------------
// Term

struct Term::Node {
  int var_index = 0;  // > 0 for variables, 0 for applications
  std::string symbol;
  std::vector<Term> children;
};

Term Term::var(int index) {
  if (index <= 0) throw DomainError("variable index must be positive");
  auto node = std::make_shared<Node>();
  node->var_index = index;
  return Term(std::move(node));
}

Term Term::app(std::string symbol, std::vector<Term> children) {
  if (symbol.empty()) throw DomainError("application symbol must be nonempty");
  auto node = std::make_shared<Node>();
  node->symbol = std::move(symbol);
  node->children = std::move(children);
  return Term(std::move(node));
}

bool Term::is_var() const noexcept { return node_->var_index > 0; }

int Term::var_index() const {
  if (!is_var()) throw DomainError("var_index() called on an application node");
  return node_->var_index;
}

const std::string& Term::symbol() const {
  if (is_var()) throw DomainError("symbol() called on a variable");
  return node_->symbol;
}

const std::vector<Term>& Term::children() const {
  if (is_var()) throw DomainError("children() called on a variable");
  return node_->children;
}

int Term::node_count() const {
  if (is_var()) return 1;
  int n = 1;
  for (const Term& c : node_->children) n += c.node_count();
  return n;
}

int Term::compare(const Term& other) const {
  if (node_ == other.node_) return 0;  // shared subtree
  if (is_var() != other.is_var()) return is_var() ? -1 : 1;
  if (is_var()) {
    return node_->var_index - other.node_->var_index;
  }
  if (int c = node_->symbol.compare(other.node_->symbol); c != 0) return c;
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
// Position

Position::Position(std::vector<int> path) : path_(std::move(path)) {
  for (int step : path_) {
    if (step <= 0) throw DomainError("position entries must be positive");
  }
}

Position Position::child(int index) const {
  if (index <= 0) throw DomainError("position entries must be positive");
  std::vector<int> p = path_;
  p.push_back(index);
  Position out;
  out.path_ = std::move(p);
  return out;
}

Position Position::concat(const Position& tail) const {
  std::vector<int> p = path_;
  p.insert(p.end(), tail.path_.begin(), tail.path_.end());
  Position out;
  out.path_ = std::move(p);
  return out;
}

bool Position::is_prefix_of(const Position& other) const {
  if (path_.size() > other.path_.size()) return false;
  return std::equal(path_.begin(), path_.end(), other.path_.begin());
}

// ---------------------------------------------------------------------------
// Term operations

void validate(const Term& term, const Signature& sig) {
  if (term.is_var()) return;
  const int expected = sig.arity(term.symbol());
  const int actual = static_cast<int>(term.children().size());
  if (expected != actual) {
    throw DomainError("symbol '" + term.symbol() + "' has arity " +
                      std::to_string(expected) + " but is applied to " +
                      std::to_string(actual) + " arguments");
  }
  for (const Term& c : term.children()) validate(c, sig);
}

namespace {

void collect_positions(const Term& t, const Position& here, PositionSets& out) {
  out.all.insert(here);
  if (t.is_var()) {
    out.x_pos.insert(here);
    return;
  }
  out.f_pos.insert(here);
  const auto& kids = t.children();
  for (std::size_t i = 0; i < kids.size(); ++i) {
    collect_positions(kids[i], here.child(static_cast<int>(i) + 1), out);
  }
}

}  // namespace

PositionSets positions(const Term& term) {
  PositionSets out;
  collect_positions(term, Position::root(), out);
  return out;
}

Term subterm_at(const Term& term, const Position& pos) {
  Term cur = term;
  for (std::size_t i = 0; i < pos.path().size(); ++i) {
    const int step = pos.path()[i];
    if (cur.is_var() || step > static_cast<int>(cur.children().size())) {
      throw DomainError("invalid position " + to_string(pos) + " in " + to_string(term));
    }
    cur = cur.children()[step - 1];
  }
  return cur;
}

std::set<Term> subterms(const Term& term) {
  std::set<Term> out;
  out.insert(term);
  if (!term.is_var()) {
    for (const Term& c : term.children()) {
      std::set<Term> sub = subterms(c);
      out.insert(sub.begin(), sub.end());
    }
  }
  return out;
}

int depth(const Term& term) {
  if (term.is_var() || term.children().empty()) return 0;
  int best = 0;
  for (const Term& c : term.children()) best = std::max(best, depth(c));
  return best + 1;
}

std::set<int> vars(const Term& term) {
  std::set<int> out;
  if (term.is_var()) {
    out.insert(term.var_index());
    return out;
  }
  for (const Term& c : term.children()) {
    std::set<int> sub = vars(c);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

namespace {

Term replace_occurrences(const Term& t,
                         const std::vector<std::pair<Term, Term>>& bindings) {
  for (const auto& [target, replacement] : bindings) {
    if (t == target) return replacement;
  }
  if (t.is_var()) return t;
  std::vector<Term> kids;
  kids.reserve(t.children().size());
  bool changed = false;
  for (const Term& c : t.children()) {
    Term r = replace_occurrences(c, bindings);
    changed = changed || r != c;
    kids.push_back(std::move(r));
  }
  if (!changed) return t;
  return Term::app(t.symbol(), std::move(kids));
}

}  // namespace

Term inductive_compose(const Term& term,
                       const std::vector<std::pair<Term, Term>>& bindings) {
  for (std::size_t i = 0; i < bindings.size(); ++i) {
    for (std::size_t j = 0; j < bindings.size(); ++j) {
      if (i == j) continue;
      if (subterms(bindings[j].first).count(bindings[i].first) != 0) {
        throw DomainError("simultaneous replacement targets must not contain "
                          "one another: " + to_string(bindings[i].first) +
                          " occurs in " + to_string(bindings[j].first));
      }
    }
  }
  return replace_occurrences(term, bindings);
}

Term inductive_compose(const Term& term, const Term& target, const Term& replacement) {
  return replace_occurrences(term, {{target, replacement}});
}

Term positional_compose(const Term& term, const Position& pos, const Term& replacement) {
  if (pos.is_root()) return replacement;
  if (term.is_var()) {
    throw DomainError("invalid position " + to_string(pos) + " in " + to_string(term));
  }
  const int step = pos.path().front();
  if (step > static_cast<int>(term.children().size())) {
    throw DomainError("invalid position " + to_string(pos) + " in " + to_string(term));
  }
  Position rest{std::vector<int>(pos.path().begin() + 1, pos.path().end())};
  std::vector<Term> kids = term.children();
  kids[step - 1] = positional_compose(kids[step - 1], rest, replacement);
  return Term::app(term.symbol(), std::move(kids));
}

Term positional_compose(const Term& term,
                        const std::vector<std::pair<Position, Term>>& bindings) {
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
  Term out = term;
  for (const auto& [pos, replacement] : bindings) {
    out = positional_compose(out, pos, replacement);
  }
  return out;
}

std::vector<int> variable_sequence(const Term& term) {
  std::vector<int> out;
  if (term.is_var()) {
    out.push_back(term.var_index());
    return out;
  }
  for (const Term& c : term.children()) {
    std::vector<int> sub = variable_sequence(c);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

VariableProfile variable_profile(const Term& term) {
  std::vector<int> seq = variable_sequence(term);
  if (seq.empty()) {
    throw DomainError("variable profile of a variable-free term: " + to_string(term));
  }
  return VariableProfile{seq.front(), seq.back(), std::move(seq)};
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

void render_term(const Term& t, std::ostringstream& out) {
  if (t.is_var()) {
    const int idx = t.var_index();
    if (is_aux_var_index(idx)) {
      out << "\xce\xbe" << (idx - kAuxVarBase);  // ξk
    } else {
      out << 'x' << idx;
    }
    return;
  }
  out << t.symbol();
  if (!t.children().empty()) {
    out << '(';
    for (std::size_t i = 0; i < t.children().size(); ++i) {
      if (i != 0) out << ',';
      render_term(t.children()[i], out);
    }
    out << ')';
  }
}

}  // namespace

std::string to_string(const Term& term) {
  std::ostringstream out;
  render_term(term, out);
  return out.str();
}

std::string to_string(const Position& pos) {
  if (pos.is_root()) return "\xce\xb5";  // ε
  bool single_digits = true;
  for (int step : pos.path()) {
    if (step > 9) single_digits = false;
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < pos.path().size(); ++i) {
    if (!single_digits && i != 0) out << '.';
    out << pos.path()[i];
  }
  return out.str();
}

std::string to_string(const Identity& id) {
  return to_string(id.lhs) + " = " + to_string(id.rhs);
}

}  // namespace mhyp
