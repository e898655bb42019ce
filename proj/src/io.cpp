#include "mhyp/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "mhyp/parse.hpp"

namespace mhyp {

namespace {

std::string strip_comment(const std::string& line) {
  const std::size_t hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

std::string trim(const std::string& text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return text.substr(b, e - b);
}

/// Comment-stripped, trimmed, nonempty lines of a file.
std::vector<std::string> read_lines(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DomainError("cannot open file: " + file.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    std::string body = trim(strip_comment(line));
    if (!body.empty()) lines.push_back(std::move(body));
  }
  return lines;
}

std::string read_joined(const std::filesystem::path& file) {
  std::ostringstream joined;
  for (const std::string& line : read_lines(file)) joined << line << ' ';
  return joined.str();
}

/// Splits "lhs -> rhs"; throws if the arrow is missing.
std::pair<std::string, std::string> split_arrow(const std::string& line) {
  const std::size_t arrow = line.find("->");
  if (arrow == std::string::npos) {
    throw DomainError("expected 'lhs -> rhs' in line: " + line);
  }
  return {trim(line.substr(0, arrow)), trim(line.substr(arrow + 2))};
}

}  // namespace

Signature load_signature(const std::filesystem::path& file) {
  Signature sig;
  for (const std::string& line : read_lines(file)) {
    std::istringstream in(line);
    std::string name;
    long arity = -1;
    in >> name >> arity;
    std::string rest;
    if (!in || arity < 0 || (in >> rest)) {
      throw DomainError("expected 'name arity' in signature line: " + line);
    }
    sig.add(name, static_cast<int>(arity));
  }
  return sig;
}

Term load_term(const std::filesystem::path& file, const Signature& sig) {
  return parse_term(read_joined(file), sig);
}

ColoredTerm load_colored_term(const std::filesystem::path& file, const Signature& sig) {
  return parse_colored_term(read_joined(file), sig);
}

bool file_mentions_colors(const std::filesystem::path& file) {
  return read_joined(file).find('^') != std::string::npos;
}

Hypersubstitution parse_hypersub_lines(const std::vector<std::string>& lines,
                                       const Signature& sig) {
  std::map<std::string, Term> images;
  for (const std::string& line : lines) {
    auto [symbol, image_text] = split_arrow(line);
    if (!sig.contains(symbol)) {
      throw DomainError("unknown symbol '" + symbol + "' in line: " + line);
    }
    if (!images.emplace(symbol, parse_term(image_text, sig)).second) {
      throw DomainError("duplicate image for symbol '" + symbol + "'");
    }
  }
  return Hypersubstitution(sig, std::move(images));
}

Hypersubstitution load_hypersubstitution(const std::filesystem::path& file,
                                         const Signature& sig) {
  return parse_hypersub_lines(read_lines(file), sig);
}

namespace {

MonoidSpec monoid_from_lines(const std::vector<std::string>& lines, const Signature& sig,
                             const std::string& origin) {
  if (lines.empty() || lines.front().rfind("monoid", 0) != 0) {
    throw DomainError("expected a 'monoid KIND' header in " + origin);
  }
  const std::string kind_word = trim(lines.front().substr(6));

  bool explicit_part = false;
  std::optional<MonoidKind> base;
  if (kind_word == "explicit") {
    explicit_part = true;
  } else if (kind_word == "k1") {
    base = MonoidKind::K1;
  } else if (kind_word == "k2") {
    base = MonoidKind::K2;
  } else if (kind_word == "full") {
    base = MonoidKind::Full;
  } else if (kind_word == "explicit+k1" || kind_word == "k1+explicit") {
    explicit_part = true;
    base = MonoidKind::K1;
  } else if (kind_word == "explicit+k2" || kind_word == "k2+explicit") {
    explicit_part = true;
    base = MonoidKind::K2;
  } else {
    throw DomainError("unknown monoid kind '" + kind_word + "' in " + origin);
  }

  std::vector<Hypersubstitution> elements;
  std::vector<std::string> block;
  bool in_block = false;
  auto flush = [&] {
    if (!in_block) return;
    elements.push_back(parse_hypersub_lines(block, sig));
    block.clear();
  };
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].rfind("sigma", 0) == 0) {
      if (!explicit_part) {
        throw DomainError("predicate monoid kinds take no element blocks (" + origin + ")");
      }
      flush();
      in_block = true;
      continue;
    }
    if (!in_block) {
      throw DomainError("expected 'sigma NAME' before images in " + origin);
    }
    block.push_back(lines[i]);
  }
  flush();

  if (!explicit_part) return MonoidSpec::predicate(*base);
  if (elements.empty()) {
    throw DomainError("an explicit monoid needs at least one 'sigma' block (" + origin + ")");
  }
  if (base) return MonoidSpec::explicit_plus(std::move(elements), *base);
  return MonoidSpec::explicit_set(std::move(elements));
}

}  // namespace

MonoidSpec load_monoid(const std::filesystem::path& file, const Signature& sig) {
  return monoid_from_lines(read_lines(file), sig, file.string());
}

MultiHypersubstitution load_rho(const std::filesystem::path& file, const Signature& sig) {
  const std::vector<std::string> lines = read_lines(file);
  if (lines.empty() || lines.front().rfind("monoid", 0) != 0) {
    throw DomainError("expected a 'monoid ...' header in " + file.string());
  }
  const std::string monoid_ref = trim(lines.front().substr(6));
  MonoidSpec monoid = [&] {
    if (monoid_ref.rfind("file", 0) == 0) {
      const std::filesystem::path rel = trim(monoid_ref.substr(4));
      return load_monoid(file.parent_path() / rel, sig);
    }
    if (monoid_ref == "k1" || monoid_ref == "k2" || monoid_ref == "full") {
      return monoid_from_lines({"monoid " + monoid_ref}, sig, file.string());
    }
    throw DomainError("the monoid header must name a kind (k1, k2, full) or a file: " +
                      file.string());
  }();

  // COLOR: symbol -> term   |   default: symbol -> term
  std::map<int, std::map<std::string, Term>> per_color;
  std::map<std::string, Term> default_images;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos) {
      throw DomainError("expected 'COLOR: symbol -> term' in line: " + line);
    }
    const std::string head = trim(line.substr(0, colon));
    auto [symbol, image_text] = split_arrow(line.substr(colon + 1));
    if (!sig.contains(symbol)) {
      throw DomainError("unknown symbol '" + symbol + "' in line: " + line);
    }
    Term image = parse_term(image_text, sig);
    if (head == "default") {
      if (!default_images.emplace(symbol, std::move(image)).second) {
        throw DomainError("duplicate default image for symbol '" + symbol + "'");
      }
      continue;
    }
    int color = -1;
    try {
      std::size_t used = 0;
      color = std::stoi(head, &used);
      if (used != head.size()) color = -1;
    } catch (const std::exception&) {
      color = -1;
    }
    if (color < 0) {
      throw DomainError("entry head must be a color or 'default': " + line);
    }
    if (!per_color[color].emplace(symbol, std::move(image)).second) {
      throw DomainError("duplicate image for color " + std::to_string(color) +
                        ", symbol '" + symbol + "'");
    }
  }

  for (const auto& [name, arity] : sig.symbols()) {
    (void)arity;
    if (default_images.count(name) == 0) {
      throw DomainError("missing 'default: " + name + " -> ...' in " + file.string());
    }
  }
  Hypersubstitution default_entry(sig, default_images);

  std::map<int, Hypersubstitution> table;
  for (auto& [color, images] : per_color) {
    // Symbols a color does not mention inherit the default image.
    for (const auto& [name, image] : default_images) {
      images.emplace(name, image);
    }
    table.emplace(color, Hypersubstitution(sig, images));
  }
  return MultiHypersubstitution(sig, std::move(monoid), std::move(table),
                                std::move(default_entry));
}

FiniteAlgebra load_algebra(const std::filesystem::path& file, const Signature& sig) {
  const std::vector<std::string> lines = read_lines(file);
  if (lines.empty() || lines.front().rfind("carrier", 0) != 0) {
    throw DomainError("expected a 'carrier N' header in " + file.string());
  }
  int carrier = 0;
  {
    std::istringstream in(trim(lines.front().substr(7)));
    std::string rest;
    if (!(in >> carrier) || carrier < 1 || (in >> rest)) {
      throw DomainError("malformed carrier line in " + file.string());
    }
  }

  std::map<std::string, OpTable> tables;
  std::string current_symbol;
  std::vector<int> current_entries;
  auto flush = [&] {
    if (current_symbol.empty()) return;
    OpTable table;
    table.arity = sig.arity(current_symbol);
    table.entries = std::move(current_entries);
    if (!tables.emplace(current_symbol, std::move(table)).second) {
      throw DomainError("duplicate table for symbol '" + current_symbol + "'");
    }
    current_symbol.clear();
    current_entries.clear();
  };
  auto read_entries = [&](const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
      try {
        std::size_t used = 0;
        const int value = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        current_entries.push_back(value);
      } catch (const std::exception&) {
        throw DomainError("malformed table entry '" + tok + "' in " + file.string());
      }
    }
  };
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    const std::size_t colon = line.find(':');
    if (colon != std::string::npos) {
      flush();
      current_symbol = trim(line.substr(0, colon));
      if (!sig.contains(current_symbol)) {
        throw DomainError("unknown symbol '" + current_symbol + "' in " + file.string());
      }
      read_entries(line.substr(colon + 1));
    } else {
      if (current_symbol.empty()) {
        throw DomainError("table entries before any 'symbol:' header in " + file.string());
      }
      read_entries(line);
    }
  }
  flush();
  return FiniteAlgebra(sig, carrier, std::move(tables));
}

std::vector<Identity> load_identities(const std::filesystem::path& file,
                                      const Signature& sig) {
  std::vector<Identity> out;
  for (const std::string& line : read_lines(file)) {
    out.push_back(parse_identity(line, sig));
  }
  return out;
}

ColoredTreeTransducer load_productions(const std::filesystem::path& file,
                                       const Signature& sig) {
  ColoredTreeTransducer transducer(sig);
  ParseOptions aux;
  aux.allow_aux_vars = true;
  for (const std::string& line : read_lines(file)) {
    auto [lhs_text, rhs_text] = split_arrow(line);
    // Left side: symbol^color(ξ1,...,ξn) with the exact argument list.
    const ColoredTerm lhs = parse_colored_term(lhs_text, sig, aux);
    if (lhs.is_var()) {
      throw DomainError("production left side must be 'symbol^color(...)': " + line);
    }
    const int arity = sig.arity(lhs.symbol());
    for (int i = 0; i < arity; ++i) {
      const ColoredTerm& arg = lhs.children()[static_cast<std::size_t>(i)];
      if (arg.is_var() && arg.var_index() == kAuxVarBase + i + 1) continue;
      throw DomainError("production left side arguments must be ξ1..ξ" +
                        std::to_string(arity) + " in order: " + line);
    }
    transducer.add(Production{lhs.symbol(), lhs.color(),
                              parse_colored_term(rhs_text, sig, aux)});
  }
  return transducer;
}

SearchBudget parse_budget(const std::string& text) {
  SearchBudget budget;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) {
      throw DomainError("budget items must look like key=value: " + item);
    }
    const std::string key = trim(item.substr(0, eq));
    const std::string value_text = trim(item.substr(eq + 1));
    long value = 0;
    try {
      std::size_t used = 0;
      value = std::stol(value_text, &used);
      if (used != value_text.size()) throw std::invalid_argument(value_text);
    } catch (const std::exception&) {
      throw DomainError("malformed budget value: " + item);
    }
    if (value < 0) throw DomainError("budget values must be nonnegative: " + item);
    if (key == "depth") {
      budget.max_term_depth = static_cast<int>(value);
    } else if (key == "ids") {
      budget.max_identity_count = static_cast<std::size_t>(value);
    } else if (key == "steps") {
      budget.max_steps = value;
    } else if (key == "colors") {
      budget.color_palette.clear();
      for (int c = 1; c <= value; ++c) budget.color_palette.push_back(c);
    } else {
      throw DomainError("unknown budget key '" + key + "'");
    }
  }
  return budget;
}

}  // namespace mhyp
