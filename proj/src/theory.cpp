#include "nmlkit/theory.hpp"

#include "nmlkit/error.hpp"

namespace nmlkit {

namespace {

struct SourceLine {
  std::size_t number;
  std::string_view text;  // comment stripped
  std::size_t first;      // column of text[0], 0-based
};

std::vector<SourceLine> source_lines(std::string_view text) {
  std::vector<SourceLine> out;
  std::size_t number = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view line = text.substr(pos, end - pos);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t first = 0;
    while (first < line.size() && (line[first] == ' ' || line[first] == '\t')) ++first;
    std::size_t last = line.size();
    while (last > first && (line[last - 1] == ' ' || line[last - 1] == '\t' || line[last - 1] == '\r')) --last;
    if (last > first) out.push_back({number, line.substr(first, last - first), first});
    pos = end + 1;
  }
  return out;
}

Formula parse_at(std::string_view text, std::size_t line, std::size_t column, FormulaMode mode,
                 const Basis& basis) {
  try {
    return parse_formula(text, mode, basis);
  } catch (const SyntaxError& e) {
    throw SyntaxError(e.detail(), line, column + (e.column() == 0 ? 1 : e.column()));
  }
}

// Splits "<tag>: rest" and returns rest with its column.
bool tagged(const SourceLine& l, std::string_view tag, std::string_view& rest, std::size_t& column) {
  if (l.text.size() < tag.size() + 1 || l.text.substr(0, tag.size()) != tag || l.text[tag.size()] != ':')
    return false;
  rest = l.text.substr(tag.size() + 1);
  column = l.first + tag.size() + 1;
  return true;
}

}  // namespace

std::string DefaultRule::to_string() const {
  return prerequisite.to_string() + " ; " + justification.to_string() + " ; " + conclusion.to_string();
}

DefaultTheory parse_default_theory(std::string_view text, const Basis& basis) {
  DefaultTheory t;
  for (const auto& l : source_lines(text)) {
    std::string_view rest;
    std::size_t column = 0;
    if (tagged(l, "w", rest, column)) {
      t.w.push_back(parse_at(rest, l.number, column, FormulaMode::Propositional, basis));
    } else if (tagged(l, "d", rest, column)) {
      std::vector<Formula> parts;
      std::size_t start = 0;
      while (true) {
        const std::size_t semi = rest.find(';', start);
        const std::string_view piece = rest.substr(start, semi == std::string_view::npos ? rest.npos : semi - start);
        if (parts.size() == 3) throw SyntaxError("default needs three parts, found more", l.number, column + start + 1);
        parts.push_back(parse_at(piece, l.number, column + start, FormulaMode::Propositional, basis));
        if (semi == std::string_view::npos) break;
        start = semi + 1;
      }
      if (parts.size() != 3)
        throw SyntaxError("default needs three parts 'alpha ; beta ; gamma'", l.number, l.first + 1);
      t.d.push_back({parts[0], parts[1], parts[2]});
    } else {
      throw SyntaxError("expected a 'w:' or 'd:' line", l.number, l.first + 1);
    }
  }
  return t;
}

std::string write_default_theory(const DefaultTheory& t) {
  std::string out;
  for (const auto& f : t.w) out += "w: " + f.to_string() + "\n";
  for (const auto& r : t.d) out += "d: " + r.to_string() + "\n";
  return out;
}

AeTheory parse_ae_theory(std::string_view text, const Basis& basis) {
  AeTheory t;
  for (const auto& l : source_lines(text))
    t.sigma.push_back(parse_at(l.text, l.number, l.first, FormulaMode::Autoepistemic, basis));
  return t;
}

std::string write_ae_theory(const AeTheory& t) { return write_formula_set(t.sigma); }

std::vector<Formula> parse_formula_set(std::string_view text, const Basis& basis) {
  std::vector<Formula> out;
  for (const auto& l : source_lines(text))
    out.push_back(parse_at(l.text, l.number, l.first, FormulaMode::Propositional, basis));
  return out;
}

std::string write_formula_set(const std::vector<Formula>& fs) {
  std::string out;
  for (const auto& f : fs) out += f.to_string() + "\n";
  return out;
}

ImplicationInstance parse_implication(std::string_view text, const Basis& basis) {
  ImplicationInstance inst;
  for (const auto& l : source_lines(text)) {
    std::string_view rest;
    std::size_t column = 0;
    if (tagged(l, "p", rest, column))
      inst.premises.push_back(parse_at(rest, l.number, column, FormulaMode::Propositional, basis));
    else if (tagged(l, "c", rest, column))
      inst.conclusions.push_back(parse_at(rest, l.number, column, FormulaMode::Propositional, basis));
    else
      throw SyntaxError("expected a 'p:' or 'c:' line", l.number, l.first + 1);
  }
  return inst;
}

std::string write_implication(const ImplicationInstance& inst) {
  std::string out;
  for (const auto& f : inst.premises) out += "p: " + f.to_string() + "\n";
  for (const auto& f : inst.conclusions) out += "c: " + f.to_string() + "\n";
  return out;
}

}  // namespace nmlkit
