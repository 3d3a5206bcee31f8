#include "nmlkit/pace.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <vector>

#include "nmlkit/error.hpp"

namespace nmlkit {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string_view> words;
};

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// Non-empty, non-comment lines.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    auto words = split(text.substr(pos, end - pos));
    if (!words.empty() && words.front() != "c") out.push_back({number, std::move(words)});
    pos = end + 1;
  }
  return out;
}

long number(std::string_view w, std::size_t line) {
  long v = 0;
  auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc() || p != w.data() + w.size())
    throw SyntaxError("expected an integer, got '" + std::string(w) + "'", line, 0);
  return v;
}

}  // namespace

Graph read_gr(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw SyntaxError("missing 'p tw' header", 1, 0);
  const auto& head = lines.front();
  if (head.words.size() != 4 || head.words[0] != "p" || head.words[1] != "tw")
    throw SyntaxError("expected 'p tw <n> <m>'", head.number, 0);
  const long n = number(head.words[2], head.number);
  const long m = number(head.words[3], head.number);
  if (n < 0 || m < 0) throw SyntaxError("negative count in header", head.number, 0);
  Graph g(static_cast<std::size_t>(n));
  long seen = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& l = lines[i];
    if (l.words.size() != 2) throw SyntaxError("expected an edge 'u v'", l.number, 0);
    const long u = number(l.words[0], l.number), v = number(l.words[1], l.number);
    if (u < 1 || u > n || v < 1 || v > n) throw SyntaxError("edge endpoint out of range", l.number, 0);
    if (u == v) throw SyntaxError("self-loop", l.number, 0);
    g.add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1));
    ++seen;
  }
  if (seen != m)
    throw SyntaxError("header announces " + std::to_string(m) + " edges, found " + std::to_string(seen),
                      head.number, 0);
  return g;
}

std::string write_gr(const Graph& g) {
  std::ostringstream out;
  const auto edges = g.edges();
  out << "p tw " << g.size() << ' ' << edges.size() << '\n';
  for (auto [u, v] : edges) out << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

TreeDecomposition read_td(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw SyntaxError("missing 's td' header", 1, 0);
  const auto& head = lines.front();
  if (head.words.size() != 5 || head.words[0] != "s" || head.words[1] != "td")
    throw SyntaxError("expected 's td <bags> <max bag size> <vertices>'", head.number, 0);
  const long nb = number(head.words[2], head.number);
  const long maxbag = number(head.words[3], head.number);
  const long n = number(head.words[4], head.number);
  if (nb < 0 || maxbag < 0 || n < 0) throw SyntaxError("negative count in header", head.number, 0);
  TreeDecomposition td;
  td.bags.resize(static_cast<std::size_t>(nb));
  std::vector<char> defined(static_cast<std::size_t>(nb), 0);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& l = lines[i];
    if (l.words.front() == "b") {
      if (l.words.size() < 2) throw SyntaxError("bag line without id", l.number, 0);
      const long id = number(l.words[1], l.number);
      if (id < 1 || id > nb) throw SyntaxError("bag id out of range", l.number, 0);
      if (defined[static_cast<std::size_t>(id - 1)]) throw SyntaxError("bag defined twice", l.number, 0);
      defined[static_cast<std::size_t>(id - 1)] = 1;
      auto& bag = td.bags[static_cast<std::size_t>(id - 1)];
      for (std::size_t w = 2; w < l.words.size(); ++w) {
        const long v = number(l.words[w], l.number);
        if (v < 1 || v > n) throw SyntaxError("bag vertex out of range", l.number, 0);
        bag.push_back(static_cast<int>(v - 1));
      }
      std::sort(bag.begin(), bag.end());
      bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
      if (static_cast<long>(bag.size()) > maxbag) throw SyntaxError("bag larger than announced", l.number, 0);
    } else {
      if (l.words.size() != 2) throw SyntaxError("expected a tree edge 'a b'", l.number, 0);
      const long a = number(l.words[0], l.number), b = number(l.words[1], l.number);
      if (a < 1 || a > nb || b < 1 || b > nb) throw SyntaxError("tree edge names an unknown bag", l.number, 0);
      td.add_tree_edge(static_cast<int>(a - 1), static_cast<int>(b - 1));
    }
  }
  for (long b = 0; b < nb; ++b)
    if (!defined[static_cast<std::size_t>(b)]) throw SyntaxError("bag " + std::to_string(b + 1) + " never defined", 0, 0);
  return td;
}

std::string write_td(const TreeDecomposition& td, std::size_t n_vertices) {
  std::size_t maxbag = 0;
  for (const auto& b : td.bags) maxbag = std::max(maxbag, b.size());
  std::ostringstream out;
  out << "s td " << td.bags.size() << ' ' << maxbag << ' ' << n_vertices << '\n';
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    auto bag = td.bags[i];
    std::sort(bag.begin(), bag.end());
    out << "b " << i + 1;
    for (int v : bag) out << ' ' << v + 1;
    out << '\n';
  }
  auto edges = td.tree_edges;
  for (auto& [a, b] : edges)
    if (a > b) std::swap(a, b);
  std::sort(edges.begin(), edges.end());
  for (auto [a, b] : edges) out << a + 1 << ' ' << b + 1 << '\n';
  return out.str();
}

std::string write_labels(const Graph& g) {
  std::ostringstream out;
  for (std::size_t v = 0; v < g.size(); ++v) {
    out << v + 1 << ' ' << label_name(g.label(static_cast<int>(v)));
    const auto& d = g.description(static_cast<int>(v));
    if (!d.empty()) out << ' ' << d;
    out << '\n';
  }
  return out.str();
}

void read_labels(std::string_view text, Graph& g) {
  std::size_t number_ = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number_;
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    const auto words = split(line);
    if (words.empty() || words.front() == "c") continue;
    if (words.size() < 2) throw SyntaxError("expected '<id> <main|edge|none> [description]'", number_, 0);
    const long id = number(words[0], number_);
    if (id < 1 || static_cast<std::size_t>(id) > g.size()) throw SyntaxError("label for unknown vertex", number_, 0);
    VertexLabel label;
    if (words[1] == "main") label = VertexLabel::Main;
    else if (words[1] == "edge") label = VertexLabel::Edge;
    else if (words[1] == "none") label = VertexLabel::None;
    else throw SyntaxError("unknown label '" + std::string(words[1]) + "'", number_, 0);
    std::string desc;
    if (words.size() > 2) {
      const auto start = static_cast<std::size_t>(words[2].data() - line.data());
      desc = std::string(line.substr(start));
      while (!desc.empty() && (desc.back() == '\r' || desc.back() == ' ')) desc.pop_back();
    }
    g.set_label(static_cast<int>(id - 1), label, std::move(desc));
  }
}

}  // namespace nmlkit
