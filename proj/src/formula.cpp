#include "nmlkit/formula.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "nmlkit/error.hpp"

namespace nmlkit {

int arity(Connective c) noexcept {
  switch (c) {
    case Connective::Not: return 1;
    case Connective::And:
    case Connective::Or:
    case Connective::Imp:
    case Connective::Iff:
    case Connective::Xor: return 2;
    case Connective::Xor3: return 3;
    case Connective::True:
    case Connective::False: return 0;
  }
  return 0;
}

std::string_view connective_name(Connective c) noexcept {
  switch (c) {
    case Connective::Not: return "not";
    case Connective::And: return "and";
    case Connective::Or: return "or";
    case Connective::Imp: return "imp";
    case Connective::Iff: return "iff";
    case Connective::Xor: return "xor";
    case Connective::Xor3: return "xor3";
    case Connective::True: return "true";
    case Connective::False: return "false";
  }
  return "?";
}

std::optional<Connective> connective_from_name(std::string_view name) noexcept {
  for (auto c : kAllConnectives)
    if (connective_name(c) == name) return c;
  return std::nullopt;
}

bool apply_connective(Connective c, std::span<const bool> a) noexcept {
  switch (c) {
    case Connective::Not: return !a[0];
    case Connective::And: return a[0] && a[1];
    case Connective::Or: return a[0] || a[1];
    case Connective::Imp: return !a[0] || a[1];
    case Connective::Iff: return a[0] == a[1];
    case Connective::Xor: return a[0] != a[1];
    case Connective::Xor3: return (a[0] != a[1]) != a[2];
    case Connective::True: return true;
    case Connective::False: return false;
  }
  return false;
}

Basis Basis::standard() {
  Basis b;
  for (auto c : kAllConnectives) b.insert(c);
  return b;
}

Basis Basis::parse(std::string_view list) {
  Basis b;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    auto comma = list.find(',', pos);
    if (comma == std::string_view::npos) comma = list.size();
    auto item = list.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      auto c = connective_from_name(item);
      if (!c) throw InvalidInput("unknown connective '" + std::string(item) + "'");
      b.insert(*c);
    }
    pos = comma + 1;
  }
  if (b.empty()) throw InvalidInput("empty basis");
  return b;
}

std::vector<Connective> Basis::connectives() const {
  std::vector<Connective> out;
  for (auto c : kAllConnectives)
    if (contains(c)) out.push_back(c);
  return out;
}

std::string Basis::to_string() const {
  std::string out;
  for (auto c : connectives()) {
    if (!out.empty()) out += ',';
    out += connective_name(c);
  }
  return out;
}

// ---------------------------------------------------------------------------

struct Formula::Node {
  FormulaKind kind{};
  Connective op{};
  bool value = false;
  std::string name;
  std::vector<Formula> children;
  std::size_t hash = 0;
  std::size_t size = 1;
  bool autoepistemic = false;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) noexcept {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Formula Formula::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Var;
  n->hash = mix(1, std::hash<std::string>{}(name));
  n->name = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::constant(bool value) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Const;
  n->value = value;
  n->hash = mix(2, value ? 1 : 0);
  return Formula(std::move(n));
}

Formula Formula::app(Connective op, std::vector<Formula> children) {
  if (op == Connective::True || op == Connective::False) {
    if (!children.empty()) throw InvalidInput("constants take no arguments");
    return constant(op == Connective::True);
  }
  if (static_cast<int>(children.size()) != arity(op))
    throw InvalidInput("connective '" + std::string(connective_name(op)) + "' expects " +
                       std::to_string(arity(op)) + " arguments");
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::App;
  n->op = op;
  std::size_t h = mix(3, static_cast<std::size_t>(op));
  for (const auto& c : children) {
    h = mix(h, c.hash());
    n->size += c.node_count();
    n->autoepistemic = n->autoepistemic || c.is_autoepistemic();
  }
  n->hash = h;
  n->children = std::move(children);
  return Formula(std::move(n));
}

Formula Formula::believes(Formula child) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Believes;
  n->hash = mix(4, child.hash());
  n->size = 1 + child.node_count();
  n->autoepistemic = true;
  n->children.push_back(std::move(child));
  return Formula(std::move(n));
}

FormulaKind Formula::kind() const noexcept { return node_->kind; }

const std::string& Formula::name() const {
  if (node_->kind != FormulaKind::Var) throw InvalidInput("name() on a non-variable");
  return node_->name;
}

bool Formula::value() const {
  if (node_->kind != FormulaKind::Const) throw InvalidInput("value() on a non-constant");
  return node_->value;
}

Connective Formula::op() const {
  if (node_->kind != FormulaKind::App) throw InvalidInput("op() on a non-application");
  return node_->op;
}

const std::vector<Formula>& Formula::children() const noexcept { return node_->children; }
bool Formula::is_autoepistemic() const noexcept { return node_->autoepistemic; }
std::size_t Formula::node_count() const noexcept { return node_->size; }
std::size_t Formula::hash() const noexcept { return node_->hash; }

std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  switch (x.kind) {
    case FormulaKind::Var: return x.name <=> y.name;
    case FormulaKind::Const: return x.value <=> y.value;
    case FormulaKind::App:
      if (auto c = x.op <=> y.op; c != 0) return c;
      break;
    case FormulaKind::Believes: break;
  }
  for (std::size_t i = 0; i < x.children.size() && i < y.children.size(); ++i)
    if (auto c = x.children[i] <=> y.children[i]; c != 0) return c;
  return x.children.size() <=> y.children.size();
}

bool operator==(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.node_count() != b.node_count()) return false;
  return (a <=> b) == 0;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(const Formula& f) {
  if (f.kind() == FormulaKind::Believes) return 6;
  if (f.kind() != FormulaKind::App) return 7;
  switch (f.op()) {
    case Connective::Iff: return 1;
    case Connective::Imp: return 2;
    case Connective::Or: return 3;
    case Connective::Xor: return 4;
    case Connective::And: return 5;
    case Connective::Not: return 6;
    default: return 7;
  }
}

const char* infix(Connective c) {
  switch (c) {
    case Connective::Iff: return " <-> ";
    case Connective::Imp: return " -> ";
    case Connective::Or: return " | ";
    case Connective::Xor: return " ^ ";
    case Connective::And: return " & ";
    default: return " ? ";
  }
}

void render(const Formula& f, int min_prec, std::string& out) {
  const int p = precedence(f);
  const bool paren = p < min_prec;
  if (paren) out += '(';
  switch (f.kind()) {
    case FormulaKind::Var: out += f.name(); break;
    case FormulaKind::Const: out += f.value() ? "T" : "F"; break;
    case FormulaKind::Believes:
      out += "L ";
      render(f.child(0), 6, out);
      break;
    case FormulaKind::App:
      switch (f.op()) {
        case Connective::Not:
          out += '!';
          render(f.child(0), 6, out);
          break;
        case Connective::Xor3:
          out += "X3(";
          for (std::size_t i = 0; i < 3; ++i) {
            if (i) out += ", ";
            render(f.child(i), 0, out);
          }
          out += ')';
          break;
        case Connective::Imp:
          render(f.child(0), p + 1, out);
          out += infix(f.op());
          render(f.child(1), p, out);
          break;
        default:
          render(f.child(0), p, out);
          out += infix(f.op());
          render(f.child(1), p + 1, out);
          break;
      }
      break;
  }
  if (paren) out += ')';
}

}  // namespace

std::string Formula::to_string() const {
  std::string out;
  render(*this, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { End, Iff, Imp, Or, Xor, And, Not, Bel, True, False, Ident, LParen, RParen, Comma, X3 };

const char* describe(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::Iff: return "'<->'";
    case Tok::Imp: return "'->'";
    case Tok::Or: return "'|'";
    case Tok::Xor: return "'^'";
    case Tok::And: return "'&'";
    case Tok::Not: return "'!'";
    case Tok::Bel: return "'L'";
    case Tok::True: return "'T'";
    case Tok::False: return "'F'";
    case Tok::Ident: return "identifier";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::X3: return "'X3'";
  }
  return "token";
}

class FormulaParser {
 public:
  FormulaParser(std::string_view text, FormulaMode mode, const Basis& basis)
      : text_(text), mode_(mode), basis_(basis) {
    advance();
  }

  Formula parse() {
    auto f = parse_iff();
    if (tok_ != Tok::End) fail(std::string("unexpected ") + describe(tok_));
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    if (tok_ == Tok::End && msg.rfind("unexpected", 0) == 0)
      throw SyntaxError("unexpected end of input", line_, col_);
    throw SyntaxError(msg, line_, col_);
  }

  void advance() {
    // skip whitespace and comments, tracking position
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else {
        break;
      }
    }
    line_ = cur_line_;
    col_ = cur_col_;
    if (pos_ >= text_.size()) {
      tok_ = Tok::End;
      return;
    }
    const char c = text_[pos_];
    auto take = [&](Tok t, std::size_t n) {
      for (std::size_t i = 0; i < n; ++i) bump();
      tok_ = t;
    };
    if (text_.substr(pos_, 3) == "<->") return take(Tok::Iff, 3);
    if (text_.substr(pos_, 2) == "->") return take(Tok::Imp, 2);
    if (text_.substr(pos_, 2) == "X3") return take(Tok::X3, 2);
    switch (c) {
      case '|': return take(Tok::Or, 1);
      case '^': return take(Tok::Xor, 1);
      case '&': return take(Tok::And, 1);
      case '!': return take(Tok::Not, 1);
      case 'L': return take(Tok::Bel, 1);
      case 'T': return take(Tok::True, 1);
      case 'F': return take(Tok::False, 1);
      case '(': return take(Tok::LParen, 1);
      case ')': return take(Tok::RParen, 1);
      case ',': return take(Tok::Comma, 1);
      default: break;
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t end = pos_ + 1;
      while (end < text_.size()) {
        char d = text_[end];
        bool ok = (d >= 'a' && d <= 'z') || (d >= 'A' && d <= 'Z') || (d >= '0' && d <= '9') || d == '_';
        if (!ok) break;
        ++end;
      }
      ident_ = std::string(text_.substr(pos_, end - pos_));
      return take(Tok::Ident, end - pos_);
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", line_, col_);
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++cur_line_;
      cur_col_ = 1;
    } else {
      ++cur_col_;
    }
    ++pos_;
  }

  void expect(Tok t) {
    if (tok_ != t) fail(std::string("expected ") + describe(t) + ", found " + describe(tok_));
    advance();
  }

  void require(Connective c) const {
    if (!basis_.contains(c))
      throw SyntaxError("connective '" + std::string(connective_name(c)) + "' is not in the basis", line_, col_);
  }

  Formula parse_iff() {
    auto lhs = parse_imp();
    while (tok_ == Tok::Iff) {
      require(Connective::Iff);
      advance();
      lhs = Formula::app(Connective::Iff, {lhs, parse_imp()});
    }
    return lhs;
  }

  Formula parse_imp() {
    auto lhs = parse_or();
    if (tok_ == Tok::Imp) {
      require(Connective::Imp);
      advance();
      return Formula::app(Connective::Imp, {lhs, parse_imp()});
    }
    return lhs;
  }

  Formula parse_or() {
    auto lhs = parse_xor();
    while (tok_ == Tok::Or) {
      require(Connective::Or);
      advance();
      lhs = Formula::app(Connective::Or, {lhs, parse_xor()});
    }
    return lhs;
  }

  Formula parse_xor() {
    auto lhs = parse_and();
    while (tok_ == Tok::Xor) {
      require(Connective::Xor);
      advance();
      lhs = Formula::app(Connective::Xor, {lhs, parse_and()});
    }
    return lhs;
  }

  Formula parse_and() {
    auto lhs = parse_unary();
    while (tok_ == Tok::And) {
      require(Connective::And);
      advance();
      lhs = Formula::app(Connective::And, {lhs, parse_unary()});
    }
    return lhs;
  }

  Formula parse_unary() {
    if (tok_ == Tok::Not) {
      require(Connective::Not);
      advance();
      return Formula::negation(parse_unary());
    }
    if (tok_ == Tok::Bel) {
      if (mode_ == FormulaMode::Propositional) fail("'L' is not allowed in propositional formulas");
      advance();
      return Formula::believes(parse_unary());
    }
    return parse_atom();
  }

  Formula parse_atom() {
    switch (tok_) {
      case Tok::True:
        require(Connective::True);
        advance();
        return Formula::constant(true);
      case Tok::False:
        require(Connective::False);
        advance();
        return Formula::constant(false);
      case Tok::Ident: {
        auto f = Formula::var(ident_);
        advance();
        return f;
      }
      case Tok::LParen: {
        advance();
        auto f = parse_iff();
        expect(Tok::RParen);
        return f;
      }
      case Tok::X3: {
        require(Connective::Xor3);
        advance();
        expect(Tok::LParen);
        auto a = parse_iff();
        expect(Tok::Comma);
        auto b = parse_iff();
        expect(Tok::Comma);
        auto c = parse_iff();
        expect(Tok::RParen);
        return Formula::app(Connective::Xor3, {a, b, c});
      }
      default:
        fail(std::string("unexpected ") + describe(tok_));
    }
  }

  std::string_view text_;
  FormulaMode mode_;
  const Basis& basis_;
  std::size_t pos_ = 0;
  std::size_t cur_line_ = 1, cur_col_ = 1;
  std::size_t line_ = 1, col_ = 1;
  Tok tok_ = Tok::End;
  std::string ident_;
};

}  // namespace

Formula parse_formula(std::string_view text, FormulaMode mode, const Basis& basis) {
  return FormulaParser(text, mode, basis).parse();
}

// ---------------------------------------------------------------------------
// Semantics

bool evaluate(const Formula& f, const Assignment& a) {
  switch (f.kind()) {
    case FormulaKind::Var:
    case FormulaKind::Believes: {
      auto it = a.find(f);
      if (it == a.end()) throw InvalidInput("assignment has no value for atom '" + f.to_string() + "'");
      return it->second;
    }
    case FormulaKind::Const: return f.value();
    case FormulaKind::App: {
      bool args[3] = {false, false, false};
      const auto& cs = f.children();
      for (std::size_t i = 0; i < cs.size(); ++i) args[i] = evaluate(cs[i], a);
      return apply_connective(f.op(), std::span<const bool>(args, cs.size()));
    }
  }
  return false;
}

namespace {

void collect_subformulae(const Formula& f, std::unordered_set<Formula, FormulaHash>& seen,
                         std::vector<Formula>& out) {
  if (seen.count(f)) return;
  for (const auto& c : f.children()) collect_subformulae(c, seen, out);
  seen.insert(f);
  out.push_back(f);
}

void collect_atoms(const Formula& f, std::unordered_set<Formula, FormulaHash>& seen, std::vector<Formula>& out) {
  if (f.is_atom()) {
    if (seen.insert(f).second) out.push_back(f);
    return;
  }
  for (const auto& c : f.children()) collect_atoms(c, seen, out);
}

// Gate-level evaluation for the truth-table oracles.
struct Circuit {
  struct Gate {
    int atom = -1;  // >= 0: reads atom bit
    bool is_const = false;
    bool value = false;
    Connective op{};
    int args[3] = {-1, -1, -1};
    int nargs = 0;
  };
  std::vector<Gate> gates;

  int add(const Formula& f, const std::unordered_map<Formula, int, FormulaHash>& atom_index,
          std::unordered_map<Formula, int, FormulaHash>& memo) {
    if (auto it = memo.find(f); it != memo.end()) return it->second;
    Gate g;
    if (f.is_atom()) {
      g.atom = atom_index.at(f);
    } else if (f.kind() == FormulaKind::Const) {
      g.is_const = true;
      g.value = f.value();
    } else {
      g.op = f.op();
      g.nargs = static_cast<int>(f.children().size());
      for (int i = 0; i < g.nargs; ++i) g.args[i] = add(f.child(i), atom_index, memo);
    }
    gates.push_back(g);
    const int id = static_cast<int>(gates.size()) - 1;
    memo.emplace(f, id);
    return id;
  }

  void run(std::uint64_t bits, std::size_t natoms, std::vector<char>& val) const {
    val.resize(gates.size());
    for (std::size_t i = 0; i < gates.size(); ++i) {
      const auto& g = gates[i];
      if (g.atom >= 0) {
        val[i] = static_cast<char>((bits >> (natoms - 1 - static_cast<std::size_t>(g.atom))) & 1u);
      } else if (g.is_const) {
        val[i] = g.value;
      } else {
        bool a[3];
        for (int k = 0; k < g.nargs; ++k) a[k] = val[static_cast<std::size_t>(g.args[k])] != 0;
        val[i] = apply_connective(g.op, std::span<const bool>(a, static_cast<std::size_t>(g.nargs)));
      }
    }
  }
};

struct TruthTable {
  std::vector<Formula> atom_list;
  Circuit circuit;
  std::vector<int> groups[2];

  TruthTable(std::span<const Formula> first, std::span<const Formula> second, std::size_t cap) {
    std::vector<Formula> all(first.begin(), first.end());
    all.insert(all.end(), second.begin(), second.end());
    atom_list = atoms(all);
    if (atom_list.size() > cap || atom_list.size() > 62)
      throw ResourceLimit("truth table over " + std::to_string(atom_list.size()) + " atoms exceeds the cap of " +
                          std::to_string(std::min<std::size_t>(cap, 62)));
    std::unordered_map<Formula, int, FormulaHash> atom_index, memo;
    for (std::size_t i = 0; i < atom_list.size(); ++i) atom_index.emplace(atom_list[i], static_cast<int>(i));
    for (const auto& f : first) groups[0].push_back(circuit.add(f, atom_index, memo));
    for (const auto& f : second) groups[1].push_back(circuit.add(f, atom_index, memo));
  }
};

}  // namespace

std::vector<Formula> subformulae(const Formula& f) { return subformulae(std::span<const Formula>(&f, 1)); }

std::vector<Formula> subformulae(std::span<const Formula> fs) {
  std::unordered_set<Formula, FormulaHash> seen;
  std::vector<Formula> out;
  for (const auto& f : fs) collect_subformulae(f, seen, out);
  return out;
}

std::vector<Formula> belief_subformulae(std::span<const Formula> fs) {
  std::vector<Formula> out;
  for (auto& f : subformulae(fs))
    if (f.kind() == FormulaKind::Believes) out.push_back(f);
  return out;
}

std::vector<Formula> atoms(std::span<const Formula> fs) {
  std::unordered_set<Formula, FormulaHash> seen;
  std::vector<Formula> out;
  for (const auto& f : fs) collect_atoms(f, seen, out);
  std::vector<std::pair<std::string, Formula>> keyed;
  keyed.reserve(out.size());
  for (auto& f : out) keyed.emplace_back(f.to_string(), f);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  out.clear();
  for (auto& [_, f] : keyed) out.push_back(f);
  return out;
}

std::optional<Assignment> sat_bruteforce(std::span<const Formula> gamma, std::size_t atom_cap) {
  TruthTable table(gamma, {}, atom_cap);
  const std::size_t n = table.atom_list.size();
  std::vector<char> val;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    table.circuit.run(bits, n, val);
    bool ok = true;
    for (int g : table.groups[0])
      if (!val[static_cast<std::size_t>(g)]) {
        ok = false;
        break;
      }
    if (!ok) continue;
    Assignment a;
    for (std::size_t i = 0; i < n; ++i) a.emplace(table.atom_list[i], ((bits >> (n - 1 - i)) & 1u) != 0);
    return a;
  }
  return std::nullopt;
}

bool implies_bruteforce(std::span<const Formula> f, std::span<const Formula> g, std::size_t atom_cap) {
  TruthTable table(f, g, atom_cap);
  const std::size_t n = table.atom_list.size();
  std::vector<char> val;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    table.circuit.run(bits, n, val);
    bool premises = true;
    for (int x : table.groups[0])
      if (!val[static_cast<std::size_t>(x)]) {
        premises = false;
        break;
      }
    if (!premises) continue;
    for (int x : table.groups[1])
      if (!val[static_cast<std::size_t>(x)]) return false;
  }
  return true;
}

Basis connectives_used(const Formula& f) {
  Basis b;
  for (const auto& s : subformulae(f)) {
    if (s.kind() == FormulaKind::App) b.insert(s.op());
    if (s.kind() == FormulaKind::Const) b.insert(s.value() ? Connective::True : Connective::False);
  }
  return b;
}

}  // namespace nmlkit
