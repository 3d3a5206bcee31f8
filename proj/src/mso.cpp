#include "nmlkit/mso.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <unordered_map>

#include "nmlkit/error.hpp"

namespace nmlkit {

struct MsoFormula::Node {
  MsoKind kind;
  std::string name;
  std::vector<std::string> args;
  std::vector<MsoFormula> children;
  std::size_t size = 1;
  int so_depth = 0;
};

struct MsoBuild {
  static MsoFormula make(MsoKind kind, std::string name, std::vector<MsoFormula> children) {
    auto n = std::make_shared<MsoFormula::Node>();
    n->kind = kind;
    n->name = std::move(name);
    int depth = 0;
    for (const auto& c : children) {
      n->size += c.node_count();
      depth = std::max(depth, c.so_depth());
    }
    n->so_depth = depth + ((kind == MsoKind::ExistsSO || kind == MsoKind::ForallSO) ? 1 : 0);
    n->children = std::move(children);
    return MsoFormula(std::move(n));
  }
};

static MsoFormula make_compound(MsoKind kind, std::string name, std::vector<MsoFormula> children) {
  return MsoBuild::make(kind, std::move(name), std::move(children));
}


namespace {

bool is_binder(MsoKind k) {
  return k == MsoKind::ExistsFO || k == MsoKind::ForallFO || k == MsoKind::ExistsSO || k == MsoKind::ForallSO;
}

bool is_so_binder(MsoKind k) { return k == MsoKind::ExistsSO || k == MsoKind::ForallSO; }

void check_fo(const std::string& v) {
  if (v.empty() || is_set_variable(v)) throw InvalidInput("'" + v + "' is not an element variable");
}

}  // namespace

bool is_set_variable(std::string_view name) noexcept {
  return !name.empty() && std::isupper(static_cast<unsigned char>(name.front()));
}

MsoFormula MsoFormula::truth(bool value) {
  auto n = std::make_shared<Node>();
  n->kind = value ? MsoKind::True : MsoKind::False;
  return MsoFormula(std::move(n));
}

MsoFormula MsoFormula::rel(std::string name, std::vector<std::string> args) {
  if (args.empty() || args.size() > 2) throw InvalidInput("relation atoms take one or two arguments");
  for (const auto& a : args) check_fo(a);
  auto n = std::make_shared<Node>();
  n->kind = MsoKind::Rel;
  n->name = std::move(name);
  n->args = std::move(args);
  return MsoFormula(std::move(n));
}

MsoFormula MsoFormula::eq(std::string x, std::string y) {
  check_fo(x);
  check_fo(y);
  auto n = std::make_shared<Node>();
  n->kind = MsoKind::Eq;
  n->args = {std::move(x), std::move(y)};
  return MsoFormula(std::move(n));
}

MsoFormula MsoFormula::in(std::string x, std::string set) {
  check_fo(x);
  if (!is_set_variable(set)) throw InvalidInput("'" + set + "' is not a set variable");
  auto n = std::make_shared<Node>();
  n->kind = MsoKind::In;
  n->name = std::move(set);
  n->args = {std::move(x)};
  return MsoFormula(std::move(n));
}

MsoFormula MsoFormula::neg(MsoFormula f) { return make_compound(MsoKind::Not, {}, {std::move(f)}); }

MsoFormula MsoFormula::conj(std::vector<MsoFormula> fs) {
  if (fs.empty()) return truth(true);
  if (fs.size() == 1) return fs.front();
  return make_compound(MsoKind::And, {}, std::move(fs));
}

MsoFormula MsoFormula::disj(std::vector<MsoFormula> fs) {
  if (fs.empty()) return truth(false);
  if (fs.size() == 1) return fs.front();
  return make_compound(MsoKind::Or, {}, std::move(fs));
}

MsoFormula MsoFormula::imp(MsoFormula a, MsoFormula b) {
  return make_compound(MsoKind::Imp, {}, {std::move(a), std::move(b)});
}

MsoFormula MsoFormula::iff(MsoFormula a, MsoFormula b) {
  return make_compound(MsoKind::Iff, {}, {std::move(a), std::move(b)});
}

MsoFormula MsoFormula::xor_(MsoFormula a, MsoFormula b) {
  return make_compound(MsoKind::Xor, {}, {std::move(a), std::move(b)});
}

MsoFormula MsoFormula::exists(std::string var, MsoFormula body) {
  const MsoKind k = is_set_variable(var) ? MsoKind::ExistsSO : MsoKind::ExistsFO;
  if (var.empty()) throw InvalidInput("empty variable name");
  return make_compound(k, std::move(var), {std::move(body)});
}

MsoFormula MsoFormula::forall(std::string var, MsoFormula body) {
  const MsoKind k = is_set_variable(var) ? MsoKind::ForallSO : MsoKind::ForallFO;
  if (var.empty()) throw InvalidInput("empty variable name");
  return make_compound(k, std::move(var), {std::move(body)});
}

MsoKind MsoFormula::kind() const noexcept { return node_->kind; }
const std::string& MsoFormula::name() const noexcept { return node_->name; }
const std::vector<std::string>& MsoFormula::args() const noexcept { return node_->args; }
const std::vector<MsoFormula>& MsoFormula::children() const noexcept { return node_->children; }
std::size_t MsoFormula::node_count() const noexcept { return node_->size; }
int MsoFormula::so_depth() const noexcept { return node_->so_depth; }

bool operator==(const MsoFormula& a, const MsoFormula& b) noexcept {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.size == y.size && x.name == y.name && x.args == y.args && x.children == y.children;
}

// ---------------------------------------------------------------------------
// Text form

namespace {

const char* binary_symbol(MsoKind k) {
  switch (k) {
    case MsoKind::And: return " & ";
    case MsoKind::Or: return " | ";
    case MsoKind::Imp: return " -> ";
    case MsoKind::Iff: return " <-> ";
    case MsoKind::Xor: return " ^ ";
    default: return "";
  }
}

void render(const MsoFormula& f, bool unit, std::string& out) {
  switch (f.kind()) {
    case MsoKind::True: out += "true"; return;
    case MsoKind::False: out += "false"; return;
    case MsoKind::Rel:
      out += f.name() + "(" + f.args()[0];
      if (f.args().size() > 1) out += "," + f.args()[1];
      out += ")";
      return;
    case MsoKind::Eq:
    case MsoKind::In: {
      const std::string body = f.kind() == MsoKind::Eq ? f.args()[0] + " = " + f.args()[1]
                                                       : f.args()[0] + " in " + f.name();
      out += unit ? "(" + body + ")" : body;
      return;
    }
    case MsoKind::Not:
      out += "~";
      render(f.children()[0], true, out);
      return;
    case MsoKind::ExistsFO:
    case MsoKind::ExistsSO:
    case MsoKind::ForallFO:
    case MsoKind::ForallSO:
      out += (f.kind() == MsoKind::ExistsFO || f.kind() == MsoKind::ExistsSO) ? "E " : "A ";
      out += f.name() + ". ";
      render(f.children()[0], true, out);
      return;
    default: {
      out += "(";
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        if (i) out += binary_symbol(f.kind());
        render(f.children()[i], true, out);
      }
      out += ")";
    }
  }
}

}  // namespace

std::string MsoFormula::to_string() const {
  std::string out;
  render(*this, false, out);
  return out;
}

namespace {

class MsoParser {
 public:
  explicit MsoParser(std::string_view text) : text_(text) {}

  MsoFormula parse() {
    MsoFormula f = formula();
    skip();
    if (pos_ < text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SyntaxError(pos_ >= text_.size() ? "unexpected end of input" : msg, line, col);
  }

  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool accept(std::string_view s) {
    skip();
    if (text_.substr(pos_, s.size()) == s) {
      pos_ += s.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view s) {
    if (!accept(s)) fail("expected '" + std::string(s) + "'");
  }

  std::string ident() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '\''))
        ++pos_;
    }
    if (start == pos_) fail("expected an identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  bool word_ahead(std::string_view w) {
    skip();
    if (text_.substr(pos_, w.size()) != w) return false;
    const std::size_t after = pos_ + w.size();
    return after >= text_.size() || !(std::isalnum(static_cast<unsigned char>(text_[after])) || text_[after] == '_');
  }

  // `E(` and `A(` are relation atoms, not quantifiers.
  bool call_ahead() const {
    std::size_t p = pos_ + 1;
    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
    return p < text_.size() && text_[p] == '(';
  }

  MsoFormula formula() {
    MsoFormula first = unit();
    skip();
    static const std::pair<std::string_view, MsoKind> ops[] = {
        {"<->", MsoKind::Iff}, {"->", MsoKind::Imp}, {"&", MsoKind::And}, {"|", MsoKind::Or}, {"^", MsoKind::Xor}};
    for (auto [sym, kind] : ops) {
      if (!accept(sym)) continue;
      std::vector<MsoFormula> parts{first, unit()};
      const bool nary = kind == MsoKind::And || kind == MsoKind::Or;
      while (nary && accept(sym)) parts.push_back(unit());
      skip();
      for (auto [other, k2] : ops) {
        (void)k2;
        if (text_.substr(pos_, other.size()) == other) fail("mixed connectives need parentheses");
      }
      switch (kind) {
        case MsoKind::And: return MsoFormula::conj(std::move(parts));
        case MsoKind::Or: return MsoFormula::disj(std::move(parts));
        case MsoKind::Imp: return MsoFormula::imp(parts[0], parts[1]);
        case MsoKind::Iff: return MsoFormula::iff(parts[0], parts[1]);
        default: return MsoFormula::xor_(parts[0], parts[1]);
      }
    }
    return first;
  }

  MsoFormula unit() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept("~")) return MsoFormula::neg(unit());
    if (accept("(")) {
      MsoFormula f = formula();
      expect(")");
      return f;
    }
    if ((word_ahead("E") || word_ahead("A")) && !call_ahead()) {
      const bool exists = text_[pos_] == 'E';
      ++pos_;
      const std::string var = ident();
      expect(".");
      MsoFormula body = unit();
      return exists ? MsoFormula::exists(var, std::move(body)) : MsoFormula::forall(var, std::move(body));
    }
    if (word_ahead("true")) {
      pos_ += 4;
      return MsoFormula::truth(true);
    }
    if (word_ahead("false")) {
      pos_ += 5;
      return MsoFormula::truth(false);
    }
    const std::size_t at = pos_;
    const std::string name = ident();
    if (accept("(")) {
      std::vector<std::string> args{ident()};
      while (accept(",")) args.push_back(ident());
      expect(")");
      if (args.size() > 2) {
        pos_ = at;
        fail("relation atoms take one or two arguments");
      }
      for (const auto& a : args)
        if (is_set_variable(a)) {
          pos_ = at;
          fail("relation argument '" + a + "' must be an element variable");
        }
      return MsoFormula::rel(name, std::move(args));
    }
    if (is_set_variable(name)) {
      pos_ = at;
      fail("set variable '" + name + "' used as an element");
    }
    if (accept("=")) {
      const std::string other = ident();
      if (is_set_variable(other)) fail("'=' compares element variables");
      return MsoFormula::eq(name, other);
    }
    if (word_ahead("in")) {
      pos_ += 2;
      const std::string set = ident();
      if (!is_set_variable(set)) fail("'in' needs a set variable (upper-case)");
      return MsoFormula::in(name, set);
    }
    fail("expected an atom after '" + name + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

MsoFormula parse_mso(std::string_view text) { return MsoParser(text).parse(); }

// ---------------------------------------------------------------------------
// Evaluation

namespace {

enum : std::uint8_t { kFalse = 0, kTrue = 1, kUnknown = 2 };

// A truth value; for kUnknown, the set variable slot and element whose
// membership was consulted first.
struct Value {
  std::uint8_t v = kFalse;
  std::int16_t slot = -1;
  std::int16_t elem = -1;
};

constexpr Value kT{kTrue, -1, -1};
constexpr Value kF{kFalse, -1, -1};

struct CNode {
  MsoKind kind;
  int rel = -1;
  int var = -1;             // bound slot for binders, set slot for In
  std::vector<int> args;    // element slots
  std::vector<int> kids;
  std::vector<char> rest_has_so;  // for And/Or: any child after i contains a set quantifier
  bool has_so = false;
  std::vector<int> free_fo, free_so;
  // guarded element quantifiers
  int guard_rel = -1;
  int guard_pos = 0;
  int guard_other = -1;
  std::string label;
};

struct RelTable {
  std::string name;
  int arity = 1;
  std::uint64_t unary = 0;
  std::vector<std::uint64_t> out, in;  // out[a]: {b | R(a,b)}, in[b]: {a | R(a,b)}
};

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint64_t>& k) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint64_t x : k) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

class Evaluator {
 public:
  Evaluator(const RelationalStructure& s, const Limits& limits, MsoStats* stats)
      : s_(s), n_(static_cast<int>(s.size())), limits_(limits), stats_(stats) {
    full_ = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
  }

  bool run(const MsoFormula& phi, const MsoEnv& env) {
    const int depth = phi.so_depth();
    const std::size_t n = s_.size();
    if (n > 64) throw ResourceLimit("MSO evaluation: universe of " + std::to_string(n) + " elements exceeds 64");
    if (depth >= 2 && n > limits_.mso_universe_nested)
      throw ResourceLimit("MSO evaluation: universe of " + std::to_string(n) + " elements exceeds the cap of " +
                          std::to_string(limits_.mso_universe_nested) + " for " + std::to_string(depth) +
                          " nested set quantifiers");
    if (depth == 1 && n > limits_.mso_universe_single)
      throw ResourceLimit("MSO evaluation: universe of " + std::to_string(n) + " elements exceeds the cap of " +
                          std::to_string(limits_.mso_universe_single) + " for a set quantifier");
    env_ = &env;
    const int root = compile(phi);
    fo_.assign(static_cast<std::size_t>(fo_slots_), -1);
    known_.assign(static_cast<std::size_t>(so_slots_), 0);
    value_.assign(static_cast<std::size_t>(so_slots_), 0);
    for (const auto& [slot, v] : fo_env_) fo_[static_cast<std::size_t>(slot)] = v;
    for (const auto& [slot, m] : so_env_) {
      known_[static_cast<std::size_t>(slot)] = full_;
      value_[static_cast<std::size_t>(slot)] = m;
    }
    const Value r = eval(root);
    if (r.v == kUnknown) throw Error("MSO evaluation left a value undetermined");
    return r.v == kTrue;
  }

 private:
  // -- compilation -------------------------------------------------------

  int relation(const std::string& name, std::size_t arity) {
    if (auto it = rel_index_.find(name); it != rel_index_.end()) {
      if (static_cast<std::size_t>(rels_[static_cast<std::size_t>(it->second)].arity) != arity)
        throw InvalidInput("relation '" + name + "' used with the wrong arity");
      return it->second;
    }
    if (!s_.vocabulary().contains(name)) throw InvalidInput("relation '" + name + "' is not in the vocabulary");
    if (static_cast<std::size_t>(s_.vocabulary().arity(name)) != arity)
      throw InvalidInput("relation '" + name + "' used with the wrong arity");
    RelTable t;
    t.name = name;
    t.arity = static_cast<int>(arity);
    t.out.assign(static_cast<std::size_t>(n_), 0);
    t.in.assign(static_cast<std::size_t>(n_), 0);
    for (const auto& tuple : s_.tuples(name)) {
      if (arity == 1) {
        t.unary |= std::uint64_t{1} << tuple[0];
      } else {
        t.out[static_cast<std::size_t>(tuple[0])] |= std::uint64_t{1} << tuple[1];
        t.in[static_cast<std::size_t>(tuple[1])] |= std::uint64_t{1} << tuple[0];
      }
    }
    rels_.push_back(std::move(t));
    rel_index_.emplace(name, static_cast<int>(rels_.size()) - 1);
    return static_cast<int>(rels_.size()) - 1;
  }

  int lookup(const std::string& name) {
    auto it = scope_.find(name);
    if (it != scope_.end() && !it->second.empty()) return it->second.back();
    if (auto f = free_slots_.find(name); f != free_slots_.end()) return f->second;
    const bool set = is_set_variable(name);
    if (set) {
      auto e = env_->sets.find(name);
      if (e == env_->sets.end()) throw InvalidInput("unbound set variable '" + name + "'");
      std::uint64_t m = 0;
      for (int x : e->second) {
        if (x < 0 || x >= n_) throw InvalidInput("set '" + name + "' names an unknown element");
        m |= std::uint64_t{1} << x;
      }
      const int slot = so_slots_++;
      so_env_.emplace_back(slot, m);
      free_slots_.emplace(name, slot);
      return slot;
    }
    auto e = env_->elements.find(name);
    if (e == env_->elements.end()) throw InvalidInput("unbound element variable '" + name + "'");
    if (e->second < 0 || e->second >= n_) throw InvalidInput("variable '" + name + "' names an unknown element");
    const int slot = fo_slots_++;
    fo_env_.emplace_back(slot, e->second);
    free_slots_.emplace(name, slot);
    return slot;
  }

  static void merge(std::vector<int>& into, const std::vector<int>& from) {
    std::vector<int> out;
    std::set_union(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(out));
    into = std::move(out);
  }

  int compile(const MsoFormula& f) {
    CNode c;
    c.kind = f.kind();
    switch (f.kind()) {
      case MsoKind::True:
      case MsoKind::False:
        break;
      case MsoKind::Rel:
        c.rel = relation(f.name(), f.args().size());
        for (const auto& a : f.args()) c.args.push_back(lookup(a));
        c.free_fo = c.args;
        break;
      case MsoKind::Eq:
        for (const auto& a : f.args()) c.args.push_back(lookup(a));
        c.free_fo = c.args;
        break;
      case MsoKind::In:
        c.args.push_back(lookup(f.args()[0]));
        c.var = lookup(f.name());
        c.free_fo = c.args;
        c.free_so = {c.var};
        break;
      default: {
        if (is_binder(f.kind())) {
          const bool so = is_so_binder(f.kind());
          c.var = so ? so_slots_++ : fo_slots_++;
          scope_[f.name()].push_back(c.var);
          c.kids.push_back(compile(f.children()[0]));
          scope_[f.name()].pop_back();
          c.has_so = so || nodes_[static_cast<std::size_t>(c.kids[0])].has_so;
          c.label = std::string(f.kind() == MsoKind::ExistsSO || f.kind() == MsoKind::ExistsFO ? "E " : "A ") +
                    f.name();
        } else {
          for (const auto& k : f.children()) c.kids.push_back(compile(k));
          if (c.kind == MsoKind::And || c.kind == MsoKind::Or) {
            // cheap (set-quantifier free) operands first
            std::stable_partition(c.kids.begin(), c.kids.end(),
                                  [&](int k) { return !nodes_[static_cast<std::size_t>(k)].has_so; });
          }
        }
        for (int k : c.kids) {
          const auto& kn = nodes_[static_cast<std::size_t>(k)];
          c.has_so = c.has_so || kn.has_so;
          merge(c.free_fo, kn.free_fo);
          merge(c.free_so, kn.free_so);
        }
        if (is_binder(c.kind)) {
          auto& fr = is_so_binder(c.kind) ? c.free_so : c.free_fo;
          fr.erase(std::remove(fr.begin(), fr.end(), c.var), fr.end());
        }
        c.rest_has_so.assign(c.kids.size(), 0);
        bool any = false;
        for (std::size_t i = c.kids.size(); i-- > 0;) {
          c.rest_has_so[i] = any;
          any = any || nodes_[static_cast<std::size_t>(c.kids[i])].has_so;
        }
        if (c.kind == MsoKind::ExistsFO || c.kind == MsoKind::ForallFO) find_guard(c);
      }
    }
    nodes_.push_back(std::move(c));
    return static_cast<int>(nodes_.size()) - 1;
  }

  // For A y1..yk (R(..y1..) & .. -> B) and E y1..yk (R(..y1..) & ..), restricts
  // y1 to the elements satisfying R when R's other argument is bound outside.
  void find_guard(CNode& c) {
    std::vector<int> chain{c.var};
    int body = c.kids[0];
    while (nodes_[static_cast<std::size_t>(body)].kind == c.kind) {
      chain.push_back(nodes_[static_cast<std::size_t>(body)].var);
      body = nodes_[static_cast<std::size_t>(body)].kids[0];
    }
    const CNode& b = nodes_[static_cast<std::size_t>(body)];
    std::vector<int> candidates;
    int holder = -1;
    if (c.kind == MsoKind::ForallFO && b.kind == MsoKind::Imp) holder = b.kids[0];
    if (c.kind == MsoKind::ExistsFO) holder = body;
    if (holder < 0) return;
    const CNode& h = nodes_[static_cast<std::size_t>(holder)];
    if (h.kind == MsoKind::Rel) candidates.push_back(holder);
    if (h.kind == MsoKind::And)
      for (int k : h.kids)
        if (nodes_[static_cast<std::size_t>(k)].kind == MsoKind::Rel) candidates.push_back(k);
    for (int k : candidates) {
      const CNode& r = nodes_[static_cast<std::size_t>(k)];
      if (r.args.size() == 1 && r.args[0] == c.var) {
        c.guard_rel = r.rel;
        c.guard_pos = 0;
        c.guard_other = -1;
        return;
      }
      if (r.args.size() == 2) {
        for (int pos = 0; pos < 2; ++pos) {
          const int other = r.args[static_cast<std::size_t>(1 - pos)];
          if (r.args[static_cast<std::size_t>(pos)] == c.var &&
              std::find(chain.begin(), chain.end(), other) == chain.end()) {
            c.guard_rel = r.rel;
            c.guard_pos = pos;
            c.guard_other = other;
            return;
          }
        }
      }
    }
  }

  // -- evaluation --------------------------------------------------------

  void tick(int node) {
    if (++steps_ > limits_.mso_steps) {
      std::string where = "no set quantifier";
      if (!active_.empty()) where = "set quantifier '" + nodes_[static_cast<std::size_t>(active_.front())].label + "'";
      (void)node;
      throw ResourceLimit("MSO evaluation: step budget of " + std::to_string(limits_.mso_steps) +
                          " exhausted; dominated by " + where);
    }
  }

  static Value first_unknown(const Value& a, const Value& b) { return a.v == kUnknown ? a : b; }

  Value eval(int id) {
    tick(id);
    const CNode& c = nodes_[static_cast<std::size_t>(id)];
    switch (c.kind) {
      case MsoKind::True: return kT;
      case MsoKind::False: return kF;
      case MsoKind::Rel: {
        const RelTable& t = rels_[static_cast<std::size_t>(c.rel)];
        const int a = fo_[static_cast<std::size_t>(c.args[0])];
        if (t.arity == 1) return (t.unary >> a & 1u) ? kT : kF;
        const int b = fo_[static_cast<std::size_t>(c.args[1])];
        return (t.out[static_cast<std::size_t>(a)] >> b & 1u) ? kT : kF;
      }
      case MsoKind::Eq:
        return fo_[static_cast<std::size_t>(c.args[0])] == fo_[static_cast<std::size_t>(c.args[1])] ? kT : kF;
      case MsoKind::In: {
        const int e = fo_[static_cast<std::size_t>(c.args[0])];
        const auto slot = static_cast<std::size_t>(c.var);
        if (!(known_[slot] >> e & 1u)) return {kUnknown, static_cast<std::int16_t>(c.var), static_cast<std::int16_t>(e)};
        return (value_[slot] >> e & 1u) ? kT : kF;
      }
      case MsoKind::Not: {
        Value r = eval(c.kids[0]);
        if (r.v != kUnknown) r.v = r.v == kTrue ? kFalse : kTrue;
        return r;
      }
      case MsoKind::And:
      case MsoKind::Or: {
        const std::uint8_t decisive = c.kind == MsoKind::And ? kFalse : kTrue;
        Value pending{decisive == kFalse ? kTrue : kFalse, -1, -1};
        for (std::size_t i = 0; i < c.kids.size(); ++i) {
          const Value r = eval(c.kids[i]);
          if (r.v == decisive) return r;
          if (r.v == kUnknown) {
            if (pending.v != kUnknown) pending = r;
            if (c.rest_has_so[i]) return pending;
          }
        }
        return pending;
      }
      case MsoKind::Imp: {
        const Value a = eval(c.kids[0]);
        if (a.v == kFalse) return kT;
        if (a.v == kUnknown && c.has_so) return a;
        const Value b = eval(c.kids[1]);
        if (b.v == kTrue) return kT;
        if (a.v == kTrue) return b;
        return a;
      }
      case MsoKind::Iff:
      case MsoKind::Xor: {
        const Value a = eval(c.kids[0]);
        if (a.v == kUnknown && nodes_[static_cast<std::size_t>(c.kids[1])].has_so) return a;
        const Value b = eval(c.kids[1]);
        if (a.v == kUnknown || b.v == kUnknown) return first_unknown(a, b);
        const bool same = a.v == b.v;
        return (c.kind == MsoKind::Iff ? same : !same) ? kT : kF;
      }
      case MsoKind::ExistsFO:
      case MsoKind::ForallFO: {
        const std::uint8_t decisive = c.kind == MsoKind::ExistsFO ? kTrue : kFalse;
        std::uint64_t range = full_;
        if (c.guard_rel >= 0) {
          const RelTable& t = rels_[static_cast<std::size_t>(c.guard_rel)];
          if (t.arity == 1) {
            range = t.unary;
          } else {
            const auto other = static_cast<std::size_t>(fo_[static_cast<std::size_t>(c.guard_other)]);
            range = c.guard_pos == 0 ? t.in[other] : t.out[other];
          }
        }
        Value pending{decisive == kTrue ? kFalse : kTrue, -1, -1};
        const bool body_so = nodes_[static_cast<std::size_t>(c.kids[0])].has_so;
        const auto slot = static_cast<std::size_t>(c.var);
        for (std::uint64_t r = range; r; r &= r - 1) {
          fo_[slot] = std::countr_zero(r);
          const Value v = eval(c.kids[0]);
          if (v.v == decisive) return v;
          if (v.v == kUnknown) {
            if (pending.v != kUnknown) pending = v;
            if (body_so) return pending;
          }
        }
        return pending;
      }
      case MsoKind::ExistsSO:
      case MsoKind::ForallSO:
        return eval_set_quantifier(id);
    }
    return kF;
  }

  Value eval_set_quantifier(int id) {
    const CNode& c = nodes_[static_cast<std::size_t>(id)];
    std::vector<std::uint64_t> key;
    key.reserve(1 + c.free_fo.size() + 2 * c.free_so.size());
    key.push_back(static_cast<std::uint64_t>(id));
    for (int s : c.free_fo) key.push_back(static_cast<std::uint64_t>(fo_[static_cast<std::size_t>(s)]));
    for (int s : c.free_so) {
      const auto k = known_[static_cast<std::size_t>(s)];
      key.push_back(k);
      key.push_back(value_[static_cast<std::size_t>(s)] & k);
    }
    if (auto it = memo_.find(key); it != memo_.end()) {
      if (stats_) ++stats_->memo_hits;
      return it->second;
    }
    active_.push_back(id);
    const Value r = branch(c, 0, 0);
    active_.pop_back();
    memo_.emplace(std::move(key), r);
    return r;
  }

  Value branch(const CNode& c, std::uint64_t known, std::uint64_t value) {
    const auto slot = static_cast<std::size_t>(c.var);
    known_[slot] = known;
    value_[slot] = value;
    const Value r = eval(c.kids[0]);
    if (r.v != kUnknown || r.slot != c.var) return r;
    if (stats_) ++stats_->branches;
    const std::uint64_t bit = std::uint64_t{1} << r.elem;
    const std::uint8_t decisive = c.kind == MsoKind::ExistsSO ? kTrue : kFalse;
    const Value r0 = branch(c, known | bit, value);
    if (r0.v == decisive) return r0;
    const Value r1 = branch(c, known | bit, value | bit);
    if (r1.v == decisive) return r1;
    if (r0.v == kUnknown) return r0;
    return r1;
  }

  const RelationalStructure& s_;
  const int n_;
  const Limits& limits_;
  MsoStats* stats_;
  const MsoEnv* env_ = nullptr;
  std::uint64_t full_ = 0;

  std::vector<CNode> nodes_;
  std::vector<RelTable> rels_;
  std::map<std::string, int> rel_index_;
  std::map<std::string, std::vector<int>> scope_;
  std::map<std::string, int> free_slots_;
  std::vector<std::pair<int, int>> fo_env_;
  std::vector<std::pair<int, std::uint64_t>> so_env_;
  int fo_slots_ = 0, so_slots_ = 0;

  std::vector<int> fo_;
  std::vector<std::uint64_t> known_, value_;
  std::unordered_map<std::vector<std::uint64_t>, Value, KeyHash> memo_;
  std::vector<int> active_;
  std::uint64_t steps_ = 0;

 public:
  std::uint64_t steps() const noexcept { return steps_; }
};

}  // namespace

bool eval_mso(const RelationalStructure& s, const MsoFormula& phi, const MsoEnv& env, const Limits& limits,
              MsoStats* stats) {
  Evaluator e(s, limits, stats);
  const bool r = e.run(phi, env);
  if (stats) stats->steps += e.steps();
  return r;
}

// ---------------------------------------------------------------------------
// Formulas

namespace {

using F = MsoFormula;

F R(const std::string& name, const std::string& a) { return F::rel(name, {a}); }
F R(const std::string& name, const std::string& a, const std::string& b) { return F::rel(name, {a, b}); }
F In(const std::string& x, const std::string& set) { return F::in(x, set); }
F Not(F f) { return F::neg(std::move(f)); }
F And(std::vector<F> fs) { return F::conj(std::move(fs)); }
F Or(std::vector<F> fs) { return F::disj(std::move(fs)); }
F Imp(F a, F b) { return F::imp(std::move(a), std::move(b)); }
F Iff(F a, F b) { return F::iff(std::move(a), std::move(b)); }
F Ex(const std::string& v, F body) { return F::exists(v, std::move(body)); }
F All(const std::string& v, F body) { return F::forall(v, std::move(body)); }

class EncodingBuilder {
 public:
  EncodingBuilder(const Basis& basis, FormulaVariant variant, StructureKind kind)
      : variant_(variant), kind_(kind), basis_(basis) {
    if (kind == StructureKind::Dl || kind == StructureKind::Ae) basis_.insert(Connective::Not);
    for (Connective c : basis_.connectives()) (arity(c) == 0 ? nullary_ : positive_).push_back(c);
  }

  bool corrected() const { return variant_ == FormulaVariant::Corrected; }

  // f(y1 in M, ..., yk in M)
  F apply(Connective c, const std::string& set) const {
    auto m = [&](int i) { return In("y" + std::to_string(i), set); };
    switch (c) {
      case Connective::Not: return Not(m(1));
      case Connective::And: return And({m(1), m(2)});
      case Connective::Or: return Or({m(1), m(2)});
      case Connective::Imp: return Imp(m(1), m(2));
      case Connective::Iff: return Iff(m(1), m(2));
      case Connective::Xor: return F::xor_(m(1), m(2));
      case Connective::Xor3: return F::xor_(F::xor_(m(1), m(2)), m(3));
      case Connective::True: return F::truth(true);
      case Connective::False: return F::truth(false);
    }
    return F::truth(false);
  }

  // Connectives with their arities, plus L for autoepistemic structures.
  std::vector<std::pair<std::string, int>> structural_connectives() const {
    std::vector<std::pair<std::string, int>> out;
    for (Connective c : positive_) out.emplace_back(std::string(connective_name(c)), arity(c));
    if (kind_ == StructureKind::Ae) out.emplace_back("L", 1);
    return out;
  }

  static std::string conn(const std::string& name, int i) { return "conn_" + name + "_" + std::to_string(i); }

  F struc() const {
    std::vector<F> parents;
    for (const auto& [name, ar] : structural_connectives())
      for (int i = 1; i <= ar; ++i) parents.push_back(R(conn(name, i), "x", "y"));
    std::vector<F> pre1{Not(R("repr", "x"))};
    std::vector<F> pre2{Not(R("var", "x"))};
    if (kind_ == StructureKind::Dl) {
      pre1.push_back(Not(R("default", "x")));
      pre2.push_back(Not(R("default", "x")));
    }
    if (kind_ == StructureKind::Ae)
      pre1.push_back(Not(Ex("z", And({R("L", "z"), R(conn("not", 1), "z", "x")}))));
    F first = All("x", Imp(And(pre1), Ex("y", And({Not(R("var", "y")), Or(parents)}))));

    std::vector<F> consts;
    for (Connective c : nullary_) consts.push_back(R(const_relation(c), "x"));
    std::vector<F> shapes;
    for (const auto& [name, ar] : structural_connectives()) {
      std::vector<F> args;
      for (int i = 1; i <= ar; ++i)
        args.push_back(Ex("y", And({R(conn(name, i), "y", "x"),
                                    All("z", Imp(R(conn(name, i), "z", "x"), F::eq("z", "y")))})));
      shapes.push_back(And(std::move(args)));
    }
    F second = All("x", Imp(And(pre2), F::xor_(Or(consts), Or(shapes))));
    return And({first, second});
  }

  F assign(const std::string& m) const {
    std::vector<F> consts;
    for (Connective c : nullary_) consts.push_back(Imp(R(const_relation(c), "x"), Iff(In("x", m), apply(c, m))));
    auto node_rule = [&](Connective f) {
      std::vector<F> links;
      for (int i = 1; i <= arity(f); ++i) links.push_back(R(conn_relation(f, i), "y" + std::to_string(i), "x"));
      return Imp(And(std::move(links)), Iff(In("x", m), apply(f, m)));
    };
    if (corrected()) {
      std::vector<F> parts = consts;
      for (Connective f : positive_) {
        F rule = node_rule(f);
        for (int i = arity(f); i >= 1; --i) rule = All("y" + std::to_string(i), rule);
        parts.push_back(rule);
      }
      return All("x", And(std::move(parts)));
    }
    int n = 0;
    for (Connective f : positive_) n = std::max(n, arity(f));
    std::vector<F> per_f;
    for (Connective f : positive_) {
      std::vector<F> part = consts;
      part.push_back(node_rule(f));
      per_f.push_back(And(std::move(part)));
    }
    if (positive_.empty()) per_f = consts;
    F body = And(std::move(per_f));
    for (int i = n; i >= 1; --i) body = All("y" + std::to_string(i), body);
    return All("x", body);
  }

  F sat() const {
    return And({struc(), Ex("M", And({assign("M"), All("x", Imp(R("repr", "x"), In("x", "M")))}))});
  }

  F imp() const {
    F premise = All("x", Imp(R("reprPrem", "x"), In("x", "M")));
    F conclusion = All("x", Imp(R("reprConc", "x"), In("x", "M")));
    return And({struc(), All("M", Imp(And({assign("M"), premise}), conclusion))});
  }

  // -- default logic ----------------------------------------------------

  static F chi(const std::string& c, const std::string& m) {
    return Imp(Or({R("kb", "x"), In("x", c)}), In("x", m));
  }

  F entails(const std::string& c, const std::string& a) const {
    if (corrected()) return All("M", Imp(And({assign("M"), All("x", chi(c, "M"))}), In(a, "M")));
    return All("M", Imp(assign("M"), All("x", Imp(chi(c, "M"), In(a, "M")))));
  }

  F isneg(const std::string& p, const std::string& q) const {
    F core = All("M", Imp(assign("M"), Iff(In(p, "M"), Not(In(q, "M")))));
    if (corrected()) return core;
    return And({struc(), core});
  }

  F entails_negation(const std::string& c, const std::string& b) const {
    if (corrected())
      return Ex("nbeta", And({isneg(b, "nbeta"),
                              All("M", Imp(And({assign("M"), All("x", chi(c, "M"))}), In("nbeta", "M")))}));
    return Ex("nbeta", Ex("M", Imp(assign("M"), All("x", And({chi(c, "M"), In("nbeta", "M"), isneg(b, "nbeta")})))));
  }

  static F conclusions_of(const std::string& c, const std::string& g) {
    return All("x", Iff(In("x", c), Ex("y", And({In("y", g), R("concl", "x", "y")}))));
  }

  F app(const std::string& d, const std::string& g) const {
    if (corrected())
      return Ex("alpha", Ex("beta", And({R("prem", "alpha", d), R("just", "beta", d),
                                         Ex("C", And({conclusions_of("C", g), entails("C", "alpha"),
                                                      Not(entails_negation("C", "beta"))}))})));
    return Ex("alpha", Ex("beta", Ex("C", And({R("prem", "alpha", d), R("just", "beta", d), conclusions_of("C", g),
                                               entails("C", "alpha"), Not(entails_negation("C", "beta"))}))));
  }

  F stable(const std::string& g) const {
    F inner = Iff(In("d", g), app("d", g));
    if (corrected()) return All("d", Imp(R("default", "d"), inner));
    return All("d", And({R("default", "d"), inner}));
  }

  static F strict_subset(const std::string& h, const std::string& g) {
    return And({All("z", Imp(In("z", h), In("z", g))), Ex("z", And({In("z", g), Not(In("z", h))}))});
  }

  static F subset_on_defaults(const std::string& a, const std::string& b) {
    return All("z", Imp(And({R("default", "z"), In("z", a)}), In("z", b)));
  }

  // G is the least S within G closed under applying members of G whose
  // prerequisite follows from W and the conclusions of S.
  F grounded(const std::string& g) const {
    F derivable = Ex("alpha", And({R("prem", "alpha", "d"),
                                   Ex("C", And({conclusions_of("C", "S"), entails("C", "alpha")}))}));
    F closed = All("d", Imp(And({R("default", "d"), In("d", g), derivable}), In("d", "S")));
    return All("S", Imp(And({subset_on_defaults("S", g), closed}), subset_on_defaults(g, "S")));
  }

  F gd(const std::string& g) const {
    std::vector<F> parts{stable(g), All("H", Imp(strict_subset("H", g), Not(stable("H"))))};
    if (corrected()) parts.push_back(grounded(g));
    return And(std::move(parts));
  }

  F extension() const {
    if (corrected())
      return And({struc(), Ex("G", And({All("z", Imp(In("z", "G"), R("default", "z"))), gd("G")}))});
    return And({struc(), Ex("G", gd("G"))});
  }

  // -- autoepistemic logic ----------------------------------------------

  F entails_ae(const std::string& lam, const std::string& phi) const {
    F premises = Imp(Or({R("repr", "w"), In("w", lam)}), In("w", "M"));
    if (corrected()) return All("M", Imp(And({assign("M"), All("w", premises)}), In(phi, "M")));
    return All("M", Imp(assign("M"), All("w", Imp(premises, In(phi, "M")))));
  }

  F full(const std::string& lam) const {
    F polarity = All("x", Imp(R("L", "x"), F::xor_(In("x", lam), Ex("y", And({R(conn("not", 1), "x", "y"),
                                                                            In("y", lam)})))));
    F agreement = corrected()
                      ? All("x", Imp(R("L", "x"), Iff(In("x", lam), Ex("phi", And({R(kConnL1, "phi", "x"),
                                                                                 entails_ae(lam, "phi")})))))
                      : All("x", Imp(R("L", "x"), Iff(In("x", lam), entails_ae(lam, "x"))));
    return And({polarity, agreement});
  }

  F full_exists() const {
    if (corrected()) {
      F typed = All("z", Imp(In("z", "Lam"),
                             Or({R("L", "z"), Ex("w", And({R("L", "w"), R(conn("not", 1), "w", "z")}))})));
      return And({struc(), Ex("Lam", And({typed, full("Lam")}))});
    }
    return And({struc(), Ex("Lam", full("Lam"))});
  }

 private:
  FormulaVariant variant_;
  StructureKind kind_;
  Basis basis_;
  std::vector<Connective> nullary_, positive_;
};

}  // namespace

PaperFormula paper_formula_from_name(std::string_view name) {
  if (name == "struc") return PaperFormula::Struc;
  if (name == "assign") return PaperFormula::Assign;
  if (name == "sat") return PaperFormula::Sat;
  if (name == "imp") return PaperFormula::Imp;
  if (name == "extension") return PaperFormula::Extension;
  if (name == "full_exists") return PaperFormula::FullExists;
  throw InvalidInput("unknown formula name '" + std::string(name) +
                     "' (expected struc, assign, sat, imp, extension or full_exists)");
}

std::string_view paper_formula_name(PaperFormula f) noexcept {
  switch (f) {
    case PaperFormula::Struc: return "struc";
    case PaperFormula::Assign: return "assign";
    case PaperFormula::Sat: return "sat";
    case PaperFormula::Imp: return "imp";
    case PaperFormula::Extension: return "extension";
    case PaperFormula::FullExists: return "full_exists";
  }
  return "struc";
}

MsoFormula paper_formula(PaperFormula name, const Basis& basis, FormulaVariant variant, StructureKind kind) {
  switch (name) {
    case PaperFormula::Struc: return EncodingBuilder(basis, variant, kind).struc();
    case PaperFormula::Assign: return EncodingBuilder(basis, variant, kind).assign("M");
    case PaperFormula::Sat: return EncodingBuilder(basis, variant, StructureKind::Prop).sat();
    case PaperFormula::Imp: return EncodingBuilder(basis, variant, StructureKind::Imp).imp();
    case PaperFormula::Extension: return EncodingBuilder(basis, variant, StructureKind::Dl).extension();
    case PaperFormula::FullExists: return EncodingBuilder(basis, variant, StructureKind::Ae).full_exists();
  }
  throw InvalidInput("unknown formula");
}

}  // namespace nmlkit
