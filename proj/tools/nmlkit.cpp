// nmlkit command-line front end.
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nmlkit/acceptance.hpp"
#include "nmlkit/ael.hpp"
#include "nmlkit/dl.hpp"
#include "nmlkit/error.hpp"
#include "nmlkit/families.hpp"
#include "nmlkit/mso.hpp"
#include "nmlkit/pace.hpp"
#include "nmlkit/random.hpp"
#include "nmlkit/structures.hpp"
#include "nmlkit/theory.hpp"
#include "nmlkit/treewidth.hpp"
#include "nmlkit/twdp.hpp"

using json = nlohmann::ordered_json;
using namespace nmlkit;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double, std::milli>(Clock::now() - t).count(); }

struct UsageError : Error {
  using Error::Error;
};

enum Exit { kComputed = 0, kInputError = 1, kUsage = 2, kLimit = 3 };

std::string read_file(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw InvalidInput("cannot write '" + path + "'");
}

std::string fnv1a(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json limits_json(const Limits& l) {
  return {{"sat_atoms", l.sat_atoms},
          {"tw_exact_vertices", l.tw_exact_vertices},
          {"dp_width", l.dp_width},
          {"dl_defaults", l.dl_defaults},
          {"ael_beliefs", l.ael_beliefs},
          {"clique_vertices", l.clique_vertices},
          {"mso_universe_single", l.mso_universe_single},
          {"mso_universe_nested", l.mso_universe_nested},
          {"mso_steps", l.mso_steps}};
}

std::string join_ids(const std::vector<int>& v, int offset = 1) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : " ") + std::to_string(x + offset);
  return s;
}

std::vector<int> one_based(const std::vector<int>& v) {
  std::vector<int> out;
  for (int x : v) out.push_back(x + 1);
  return out;
}

// Everything a handler needs; filled by CLI11.
struct Options {
  bool json_out = false;
  bool report = false;
  std::string limits_spec;
  Limits limits;
  std::string command;

  std::string file, file2, output;
  std::string method, oracle = "brute", variant = "corrected", dl_variant = "printed", basis = "auto", kind, labels_file, mains;
  std::string formula_text, formula_file, paper;
  bool exact = false, labels = false, gaifman = false, quick = false;
  int n = 0, k = 0, only = 0, repeat = 1;
  std::uint64_t seed = 1;
  std::string family, params;
};

// Per-run bookkeeping for --report.
struct Report {
  std::string fingerprint;
  json timings = json::object();
  std::vector<std::string> limits_hit;

  template <class F>
  auto timed(const std::string& phase, F&& f) {
    const auto t = Clock::now();
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      timings[phase] = since(t);
    } else {
      auto r = f();
      timings[phase] = since(t);
      return r;
    }
  }
};

void emit(const Options& o, json body, const Report& r, const std::string& text) {
  if (!o.json_out) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  if (o.report) {
    body["report"] = {{"command", o.command},
                      {"fingerprint", r.fingerprint},
                      {"timings_ms", r.timings},
                      {"limits", limits_json(o.limits)},
                      {"limits_hit", r.limits_hit}};
  }
  std::cout << body.dump() << '\n';
}

Basis basis_for(const Options& o, const std::vector<Formula>& formulas) {
  if (o.basis != "auto") return Basis::parse(o.basis);
  Basis b{Connective::Not};
  for (const auto& f : formulas)
    for (auto c : connectives_used(f).connectives()) b.insert(c);
  return b;
}

Basis input_basis(const Options& o) { return o.basis == "auto" ? Basis::standard() : Basis::parse(o.basis); }

OracleKind oracle_kind(const Options& o) {
  try {
    return oracle_kind_from_name(o.oracle);
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
}

FormulaVariant variant_of(const Options& o) {
  if (o.variant == "corrected") return FormulaVariant::Corrected;
  if (o.variant == "as_printed") return FormulaVariant::AsPrinted;
  throw UsageError("unknown variant '" + o.variant + "' (corrected|as_printed)");
}

std::vector<Formula> dl_formulas(const DefaultTheory& t) {
  std::vector<Formula> out = t.w;
  for (const auto& r : t.d) out.insert(out.end(), {r.prerequisite, r.justification, r.conclusion});
  return out;
}

// ---------------------------------------------------------------- fmt

int cmd_check_sat(const Options& o) {
  Report r;
  const std::string text = read_file(o.file);
  r.fingerprint = fnv1a(text);
  const auto gamma = r.timed("parse", [&] { return parse_formula_set(text, input_basis(o)); });
  json out;
  std::ostringstream t;
  if (o.method == "dp") {
    const DpRun run = r.timed("solve", [&] { return dp_sat_run(gamma, nullptr, o.limits.dp_width); });
    out = {{"satisfiable", run.satisfiable}, {"method", "dp"}, {"width", run.width}, {"model", nullptr}};
    t << (run.satisfiable ? "satisfiable" : "unsatisfiable") << " (dp, width " << run.width << ")\n";
  } else {
    const auto model = r.timed("solve", [&] { return sat_bruteforce(gamma, o.limits.sat_atoms); });
    json m = nullptr;
    t << (model ? "satisfiable" : "unsatisfiable") << '\n';
    if (model) {
      m = json::object();
      for (const auto& [atom, value] : *model) {
        m[atom.to_string()] = value;
        t << "  " << atom.to_string() << " = " << (value ? "T" : "F") << '\n';
      }
    }
    out = {{"satisfiable", model.has_value()}, {"method", "brute"}, {"model", m}};
  }
  emit(o, out, r, t.str());
  return kComputed;
}

int cmd_check_imp(const Options& o) {
  Report r;
  const std::string text = read_file(o.file);
  r.fingerprint = fnv1a(text);
  const auto inst = r.timed("parse", [&] { return parse_implication(text, input_basis(o)); });
  const bool dp = o.method == "dp";
  const bool holds = r.timed("solve", [&] {
    return dp ? dp_implication(inst.premises, inst.conclusions, o.limits.dp_width)
              : implies_bruteforce(inst.premises, inst.conclusions, o.limits.sat_atoms);
  });
  emit(o, {{"implies", holds}, {"method", dp ? "dp" : "brute"}}, r,
       holds ? "premises imply every conclusion" : "premises do not imply every conclusion");
  return kComputed;
}

// ---------------------------------------------------------------- dl / ael

int cmd_dl_solve(const Options& o) {
  Report r;
  const std::string text = read_file(o.file);
  r.fingerprint = fnv1a(text);
  const auto theory = r.timed("parse", [&] { return parse_default_theory(text, input_basis(o)); });
  if (o.method == "mso") {
    const Basis b = basis_for(o, dl_formulas(theory));
    const auto s = build_dl_structure(theory, b);
    const auto phi = paper_formula(PaperFormula::Extension, b, variant_of(o), StructureKind::Dl);
    const bool v = r.timed("solve", [&] { return eval_mso(s, phi, {}, o.limits); });
    emit(o, {{"exists", v}, {"method", "mso"}}, r, v ? "extension exists" : "no extension");
    return kComputed;
  }
  const auto oracle = make_oracle(oracle_kind(o), o.limits);
  const auto res = r.timed("solve", [&] { return extension_exists(theory, *oracle, o.limits); });
  json wit = json::array();
  std::ostringstream t;
  t << (res.exists ? "extension exists" : "no extension") << '\n';
  for (const auto& w : res.witnesses) {
    wit.push_back(one_based(w.generating));
    t << "  generated by defaults {" << join_ids(w.generating) << "}\n";
  }
  emit(o, {{"exists", res.exists}, {"witnesses", wit}}, r, t.str());
  return kComputed;
}

int cmd_ael_solve(const Options& o) {
  Report r;
  const std::string text = read_file(o.file);
  r.fingerprint = fnv1a(text);
  const auto sigma = r.timed("parse", [&] { return parse_ae_theory(text, input_basis(o)); });
  if (o.method == "mso") {
    const Basis b = basis_for(o, sigma.sigma);
    const auto s = build_ael_structure(sigma, b);
    const auto phi = paper_formula(PaperFormula::FullExists, b, variant_of(o), StructureKind::Ae);
    const bool v = r.timed("solve", [&] { return eval_mso(s, phi, {}, o.limits); });
    emit(o, {{"exists", v}, {"method", "mso"}}, r, v ? "expansion exists" : "no expansion");
    return kComputed;
  }
  const auto oracle = make_oracle(oracle_kind(o), o.limits);
  const auto res = r.timed("solve", [&] { return expansion_exists(sigma, *oracle, o.limits); });
  json sets = json::array();
  std::ostringstream t;
  t << (res.exists ? "expansion exists" : "no expansion") << '\n';
  for (const auto& c : res.full_sets) {
    json one = json::array();
    t << "  full set {";
    for (std::size_t i = 0; i < c.beliefs.size(); ++i) {
      one.push_back({{"Lphi", c.beliefs[i].to_string()}, {"sign", c.positive[i] ? "+" : "-"}});
      t << (i ? ", " : "") << (c.positive[i] ? "" : "!") << c.beliefs[i].to_string();
    }
    t << "}\n";
    sets.push_back(one);
  }
  emit(o, {{"exists", res.exists}, {"full_sets", sets}}, r, t.str());
  return kComputed;
}

// ---------------------------------------------------------------- struct / mso

StructureKind kind_for(const Options& o, const std::string& path) {
  std::string k = o.kind;
  if (k.empty()) {
    const auto dot = path.rfind('.');
    const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    if (ext == "fs") k = "prop";
    else if (ext == "imp") k = "imp";
    else if (ext == "dt") k = "dl";
    else if (ext == "ae") k = "ae";
    else throw UsageError("cannot tell the input kind from '" + path + "'; pass --kind prop|imp|dl|ae");
  }
  if (k == "prop") return StructureKind::Prop;
  if (k == "imp") return StructureKind::Imp;
  if (k == "dl") return StructureKind::Dl;
  if (k == "ae") return StructureKind::Ae;
  throw UsageError("unknown kind '" + k + "' (prop|imp|dl|ae)");
}

RelationalStructure load_structure(const Options& o, StructureKind kind, const std::string& text, Basis& basis) {
  const Basis in = input_basis(o);
  switch (kind) {
    case StructureKind::Prop: {
      const auto gamma = parse_formula_set(text, in);
      basis = basis_for(o, gamma);
      return build_prop_structure(gamma, basis);
    }
    case StructureKind::Imp: {
      const auto inst = parse_implication(text, in);
      std::vector<Formula> all = inst.premises;
      all.insert(all.end(), inst.conclusions.begin(), inst.conclusions.end());
      basis = basis_for(o, all);
      return build_imp_structure(inst.premises, inst.conclusions, basis);
    }
    case StructureKind::Dl: {
      const auto t = parse_default_theory(text, in);
      basis = basis_for(o, dl_formulas(t));
      return build_dl_structure(t, basis);
    }
    case StructureKind::Ae: {
      const auto t = parse_ae_theory(text, in);
      basis = basis_for(o, t.sigma);
      return build_ael_structure(t, basis);
    }
  }
  throw UsageError("unknown structure kind");
}

int cmd_struct_build(const Options& o) {
  Report r;
  const std::string text = read_file(o.file);
  r.fingerprint = fnv1a(text);
  Basis basis;
  const auto s = r.timed("build", [&] { return load_structure(o, kind_for(o, o.file), text, basis); });
  const Graph g = gaifman_graph(s);
  if (o.gaifman && !o.json_out) {
    std::cout << write_gr(g);
    return kComputed;
  }
  json universe = json::array(), relations = json::object(), vocab = json::array();
  std::ostringstream t;
  t << "basis " << basis.to_string() << "\nuniverse\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    universe.push_back({{"id", i + 1}, {"description", s.element(static_cast<int>(i)).description}});
    t << "  " << i + 1 << "  " << s.element(static_cast<int>(i)).description << '\n';
  }
  for (const auto& sym : s.vocabulary().symbols()) {
    vocab.push_back({{"name", sym.name}, {"arity", sym.arity}});
    json ts = json::array();
    const auto& tuples = s.tuples(sym.name);
    if (!tuples.empty()) t << sym.name << '\n';
    for (const auto& tup : tuples) {
      ts.push_back(one_based(tup));
      t << "  (" << join_ids(tup) << ")\n";
    }
    relations[sym.name] = ts;
  }
  emit(o,
       {{"basis", basis.to_string()},
        {"universe", universe},
        {"vocabulary", vocab},
        {"relations", relations},
        {"gaifman", {{"n_vertices", g.size()}, {"n_edges", g.edge_count()}}}},
       r, t.str());
  return kComputed;
}

int cmd_mso_eval(const Options& o) {
  Report r;
  const std::string text = read_file(o.file);
  r.fingerprint = fnv1a(text);
  const StructureKind kind = kind_for(o, o.file);
  Basis basis;
  const auto s = r.timed("build", [&] { return load_structure(o, kind, text, basis); });
  MsoFormula phi = MsoFormula::truth(true);
  std::string label;
  if (!o.paper.empty()) {
    PaperFormula pf;
    try {
      pf = paper_formula_from_name(o.paper);
    } catch (const InvalidInput& e) {
      throw UsageError(e.what());
    }
    phi = paper_formula(pf, basis, variant_of(o), kind);
    label = o.paper + " (" + o.variant + ")";
  } else if (!o.formula_text.empty() || !o.formula_file.empty()) {
    phi = parse_mso(o.formula_text.empty() ? read_file(o.formula_file) : o.formula_text);
    label = phi.to_string();
  } else {
    throw UsageError("mso eval needs --paper, --formula or --formula-file");
  }
  MsoStats stats;
  const bool v = r.timed("eval", [&] { return eval_mso(s, phi, {}, o.limits, &stats); });
  std::ostringstream t;
  t << (v ? "true" : "false") << "  (" << stats.steps << " steps, " << stats.branches << " branches, "
    << stats.memo_hits << " memo hits, universe " << s.size() << ")\n";
  emit(o,
       {{"value", v},
        {"formula", label},
        {"universe_size", s.size()},
        {"formula_nodes", phi.node_count()},
        {"steps", stats.steps},
        {"branches", stats.branches},
        {"memo_hits", stats.memo_hits}},
       r, t.str());
  return kComputed;
}

// ---------------------------------------------------------------- tw

// Labels from "c label <id> <kind> <desc>" comment lines of a .gr file.
void apply_embedded_labels(const std::string& gr_text, Graph& g) {
  std::istringstream in(gr_text);
  std::string line, sidecar;
  const std::string tag = "c label ";
  while (std::getline(in, line))
    if (line.rfind(tag, 0) == 0) sidecar += line.substr(tag.size()) + '\n';
  if (!sidecar.empty()) read_labels(sidecar, g);
}

Graph load_graph(const Options& o, Report& r) {
  const std::string text = read_file(o.file);
  r.fingerprint = fnv1a(text);
  Graph g = r.timed("parse", [&] { return read_gr(text); });
  apply_embedded_labels(text, g);
  if (!o.labels_file.empty()) read_labels(read_file(o.labels_file), g);
  return g;
}

Heuristic heuristic_of(const std::string& m) {
  if (m == "min_degree") return Heuristic::MinDegree;
  if (m == "min_fill" || m.empty()) return Heuristic::MinFill;
  throw UsageError("unknown method '" + m + "' (min_degree|min_fill)");
}

int cmd_tw_compute(const Options& o) {
  Report r;
  const Graph g = load_graph(o, r);
  TreeDecomposition td;
  std::string method;
  if (o.exact || o.method == "exact") {
    method = "exact";
    td = r.timed("solve", [&] { return exact_treewidth(g, std::nullopt, o.limits.tw_exact_vertices).decomposition; });
  } else {
    method = o.method.empty() ? "min_fill" : o.method;
    td = r.timed("solve", [&] { return heuristic_decomposition(g, heuristic_of(method)); });
  }
  const std::string td_text = write_td(td, g.size());
  if (!o.output.empty()) write_file(o.output, td_text);
  const int w = width(td);
  emit(o,
       {{"width", w},
        {"method", method},
        {"exact", method == "exact"},
        {"n_vertices", g.size()},
        {"n_edges", g.edge_count()},
        {"n_bags", td.bag_count()},
        {"minor_min_width", minor_min_width(g)},
        {"td", td_text}},
       r, o.output.empty() ? td_text : "width " + std::to_string(w) + " (" + method + "), written to " + o.output);
  return kComputed;
}

const char* condition_name(TdCondition c) {
  switch (c) {
    case TdCondition::Tree: return "tree";
    case TdCondition::VertexCoverage: return "vertex_coverage";
    case TdCondition::EdgeCoverage: return "edge_coverage";
    case TdCondition::Connectivity: return "connectivity";
  }
  return "?";
}

int cmd_tw_verify(const Options& o) {
  Report r;
  const Graph g = load_graph(o, r);
  const std::string td_text = read_file(o.file2);
  r.fingerprint = fnv1a(r.fingerprint + fnv1a(td_text));
  const auto td = read_td(td_text);
  const auto violations = r.timed("verify", [&] { return validate_decomposition(g, td); });
  json vs = json::array();
  std::ostringstream t;
  t << (violations.empty() ? "valid" : "invalid") << " tree decomposition, width "
    << (td.bags.empty() ? -1 : width(td)) << '\n';
  for (const auto& v : violations) {
    vs.push_back({{"condition", condition_name(v.condition)}, {"message", v.message}, {"witness", v.witness}});
    t << "  " << condition_name(v.condition) << ": " << v.message << '\n';
  }
  emit(o, {{"valid", violations.empty()}, {"width", td.bags.empty() ? -1 : width(td)}, {"violations", vs}}, r,
       t.str());
  return kComputed;
}

std::vector<int> parse_mains(const std::string& list) {
  std::vector<int> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stoi(item) - 1);
    } catch (const std::exception&) {
      throw UsageError("--mains expects comma separated vertex numbers");
    }
  }
  return out;
}

int cmd_tw_normalize(const Options& o) {
  Report r;
  const Graph g = load_graph(o, r);
  const std::string td_in = read_file(o.file2);
  r.fingerprint = fnv1a(r.fingerprint + fnv1a(td_in));
  const auto td = read_td(td_in);
  std::optional<std::vector<int>> mains;
  if (!o.mains.empty()) mains = parse_mains(o.mains);
  else if (!g.labelled()) throw UsageError("tw normalize needs main vertices: --labels FILE, embedded labels or --mains");
  const auto out = r.timed("normalize", [&] { return normalize_pseudo(g, td, mains); });
  const std::string text = write_td(out, g.size());
  if (!o.output.empty()) write_file(o.output, text);
  emit(o, {{"width_before", width(td)}, {"width_after", width(out)}, {"n_bags", out.bag_count()}, {"td", text}}, r,
       o.output.empty() ? text : "width " + std::to_string(width(td)) + " -> " + std::to_string(width(out)));
  return kComputed;
}

int cmd_tw_lower_bound(const Options& o) {
  Report r;
  const Graph g = load_graph(o, r);
  const auto b = r.timed("solve", [&] { return pseudo_clique_lower_bound(g, o.limits.clique_vertices); });
  const int mmw = minor_min_width(g);
  std::ostringstream t;
  t << "treewidth >= " << std::max(b.bound - 1, mmw) << " (pseudo-clique minor of size " << b.bound
    << ", minor-min-width " << mmw << ")\n";
  emit(o,
       {{"bound", b.bound},
        {"treewidth_at_least", std::max(b.bound - 1, mmw)},
        {"clique", one_based(b.clique)},
        {"paths_disjoint", b.paths_disjoint},
        {"minor_min_width", mmw}},
       r, t.str());
  return kComputed;
}

// ---------------------------------------------------------------- gen

int cmd_gen(const Options& o, const std::string& family) {
  Report r;
  std::string content, labels, format;
  if (family == "pseudo-clique") {
    const Graph g = gen_pseudo_clique(o.n, o.k);
    content = write_gr(g);
    format = "gr";
    if (o.labels) labels = write_labels(g);
  } else if (family == "dl-lower") {
    DlLowerVariant v;
    try {
      v = dl_lower_variant_from_name(o.dl_variant);
    } catch (const InvalidInput& e) {
      throw UsageError(e.what());
    }
    content = write_default_theory(gen_dl_lower(o.n, v));
    format = "dt";
  } else if (family == "ael-lower") {
    content = write_ae_theory(gen_ael_lower(o.k));
    format = "ae";
  } else if (family == "imp-lower") {
    ImpLowerKind kind;
    try {
      kind = imp_lower_kind_from_name(o.kind);
    } catch (const InvalidInput& e) {
      throw UsageError(e.what());
    }
    content = write_implication(gen_imp_lower(kind, o.n));
    format = "imp";
  } else if (family == "chain") {
    content = write_formula_set(gen_chain(o.n));
    format = "fs";
  }
  r.fingerprint = fnv1a(content);
  std::string text = content;
  if (!o.output.empty()) {
    write_file(o.output, content);
    text = "wrote " + o.output;
    if (!labels.empty()) {
      const auto dot = o.output.rfind('.');
      const std::string side = (dot == std::string::npos ? o.output : o.output.substr(0, dot)) + ".labels";
      write_file(side, labels);
      text += " and " + side;
    }
  } else if (!labels.empty()) {
    std::istringstream in(labels);
    for (std::string line; std::getline(in, line);) text += "c label " + line + '\n';
  }
  json out = {{"family", family}, {"format", format}, {"content", content}};
  if (o.labels) out["labels"] = labels;
  emit(o, out, r, text);
  return kComputed;
}

// ---------------------------------------------------------------- verify-paper

int cmd_verify_paper(const Options& o) {
  AcceptanceConfig c;
  c.seed = o.seed;
  c.quick = o.quick;
  c.limits = o.limits;
  std::vector<CriterionOutcome> outcomes;
  auto print = [&](const CriterionOutcome& x) {
    if (!o.json_out) std::cout << format_outcome(x) << std::endl;
  };
  if (o.only) {
    if (o.only < 1 || o.only > kCriterionCount) throw UsageError("--only expects 1.." + std::to_string(kCriterionCount));
    outcomes.push_back(run_criterion(o.only, c));
    print(outcomes.back());
  } else {
    outcomes = run_acceptance(c, print);
  }
  int passed = 0;
  json cs = json::array();
  for (const auto& x : outcomes) {
    passed += x.pass;
    cs.push_back({{"id", x.id}, {"title", x.title}, {"pass", x.pass}, {"detail", x.detail}, {"wall_ms", x.wall_ms}});
  }
  if (o.json_out) {
    Report r;
    emit(o, {{"seed", o.seed}, {"quick", o.quick}, {"passed", passed}, {"total", outcomes.size()}, {"criteria", cs}},
         r, "");
  } else {
    std::cout << passed << "/" << outcomes.size() << " criteria passed\n";
  }
  return kComputed;
}

// ---------------------------------------------------------------- bench

std::vector<int> bench_params(const std::string& list) {
  std::vector<int> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto dash = item.find('-', 1);
    try {
      if (dash == std::string::npos) {
        out.push_back(std::stoi(item));
      } else {
        for (int v = std::stoi(item.substr(0, dash)); v <= std::stoi(item.substr(dash + 1)); ++v) out.push_back(v);
      }
    } catch (const std::exception&) {
      throw UsageError("--params expects a list like 1000,2000 or 3-6");
    }
  }
  if (out.empty()) throw UsageError("--params is empty");
  return out;
}

struct BenchRow {
  std::string family;
  int param = 0;
  std::size_t n_vertices = 0;
  int width = -1;
  std::string method;
  double wall_ms = 0;
  std::string verdict;
};

// One instance of a family as whatever the method needs.
struct BenchInstance {
  Graph graph;                // treewidth methods
  std::vector<Formula> gamma; // sat methods
  std::optional<ImplicationInstance> imp;
  std::optional<DefaultTheory> dl;
  std::optional<AeTheory> ae;
};

BenchInstance bench_instance(const std::string& family, int p, Rng& rng) {
  const Basis b = Basis::standard();
  BenchInstance x;
  if (family == "chain") {
    x.gamma = gen_chain(p);
    x.graph = constraint_graph(x.gamma).graph;
  } else if (family == "pseudo-clique") {
    x.graph = gen_pseudo_clique(p, 2);
  } else if (family == "random-graph") {
    x.graph = random_graph(rng, p, 0.3);
  } else if (family == "dl-lower") {
    x.dl = gen_dl_lower(p);
    x.graph = gaifman_graph(build_dl_structure(*x.dl, b));
  } else if (family == "ael-lower") {
    x.ae = gen_ael_lower(p);
    x.graph = gaifman_graph(build_ael_structure(*x.ae, b));
  } else if (family == "imp-xor3" || family == "imp-cnf-dnf") {
    x.imp = gen_imp_lower(family == "imp-xor3" ? ImpLowerKind::Xor3 : ImpLowerKind::CnfDnf, p);
    x.graph = gaifman_graph(build_imp_structure(x.imp->premises, x.imp->conclusions, b));
  } else {
    throw UsageError("unknown family '" + family +
                     "' (chain|pseudo-clique|random-graph|dl-lower|ael-lower|imp-xor3|imp-cnf-dnf)");
  }
  return x;
}

void bench_run(const Options& o, const BenchInstance& x, BenchRow& row) {
  const std::string& m = row.method;
  if (m == "exact") {
    const auto r = exact_treewidth(x.graph, std::nullopt, o.limits.tw_exact_vertices);
    row.width = r.width;
    row.verdict = "ok";
  } else if (m == "min_fill" || m == "min_degree") {
    row.width = width(heuristic_decomposition(x.graph, heuristic_of(m)));
    row.verdict = "ok";
  } else if (m == "dp" && x.imp) {
    row.verdict = dp_implication(x.imp->premises, x.imp->conclusions, o.limits.dp_width) ? "implied" : "not_implied";
  } else if (m == "dp" && !x.gamma.empty()) {
    const auto run = dp_sat_run(x.gamma, nullptr, o.limits.dp_width);
    row.width = run.width;
    row.verdict = run.satisfiable ? "sat" : "unsat";
  } else if (m == "brute" && x.imp) {
    row.verdict = implies_bruteforce(x.imp->premises, x.imp->conclusions, o.limits.sat_atoms) ? "implied" : "not_implied";
  } else if (m == "brute" && !x.gamma.empty()) {
    row.verdict = sat_bruteforce(x.gamma, o.limits.sat_atoms) ? "sat" : "unsat";
  } else if ((m == "enum" || m == "mso") && (x.dl || x.ae)) {
    bool v;
    if (m == "enum") {
      const auto oracle = make_oracle(oracle_kind(o), o.limits);
      v = x.dl ? extension_exists(*x.dl, *oracle, o.limits).exists : expansion_exists(*x.ae, *oracle, o.limits).exists;
    } else {
      const Basis b = x.dl ? basis_for(o, dl_formulas(*x.dl)) : basis_for(o, x.ae->sigma);
      v = x.dl ? eval_mso(build_dl_structure(*x.dl, b),
                          paper_formula(PaperFormula::Extension, b, FormulaVariant::Corrected, StructureKind::Dl), {},
                          o.limits)
               : eval_mso(build_ael_structure(*x.ae, b),
                          paper_formula(PaperFormula::FullExists, b, FormulaVariant::Corrected, StructureKind::Ae),
                          {}, o.limits);
    }
    row.verdict = v ? "exists" : "none";
  } else {
    throw UsageError("method '" + m + "' does not apply to family '" + row.family + "'");
  }
}

int cmd_bench(const Options& o) {
  Rng rng(o.seed);
  const std::string method = o.method.empty() ? "min_fill" : o.method;
  std::vector<BenchRow> rows;
  Report r;
  std::ostringstream csv;
  csv << "family,param,n_vertices,width,method,wall_ms,verdict\n";
  for (int p : bench_params(o.params)) {
    BenchRow row{o.family, p, 0, -1, method, 0, ""};
    try {
      const BenchInstance x = bench_instance(o.family, p, rng);
      row.n_vertices = x.graph.size();
      double best = 1e300;
      for (int rep = 0; rep < std::max(1, o.repeat); ++rep) {
        const auto t = Clock::now();
        bench_run(o, x, row);
        best = std::min(best, since(t));
      }
      row.wall_ms = best;
    } catch (const ResourceLimit& e) {
      row.verdict = "limit";
      r.limits_hit.push_back(o.family + " " + std::to_string(p) + ": " + e.what());
    } catch (const UsageError&) {
      throw;
    } catch (const Error& e) {
      row.verdict = "error";
      std::cerr << "nmlkit: " << o.family << " " << p << ": " << e.what() << '\n';
    }
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", row.wall_ms);
    csv << row.family << ',' << row.param << ',' << row.n_vertices << ','
        << (row.width < 0 ? std::string() : std::to_string(row.width)) << ',' << row.method << ',' << ms << ','
        << row.verdict << '\n';
    rows.push_back(row);
  }
  if (!o.output.empty()) write_file(o.output, csv.str());
  json js = json::array();
  for (const auto& row : rows)
    js.push_back({{"family", row.family},
                  {"param", row.param},
                  {"n_vertices", row.n_vertices},
                  {"width", row.width < 0 ? json(nullptr) : json(row.width)},
                  {"method", row.method},
                  {"wall_ms", row.wall_ms},
                  {"verdict", row.verdict}});
  emit(o, {{"seed", o.seed}, {"rows", js}}, r, csv.str());
  return kComputed;
}

int fail(const Options& o, const char* kind, const std::string& message, std::size_t line, std::size_t col,
         int code) {
  std::cerr << "nmlkit: " << message << '\n';
  if (o.json_out) {
    json e = {{"kind", kind}, {"message", message}};
    if (line) e["line"] = line;
    if (col) e["column"] = col;
    std::cout << json{{"error", e}}.dump() << '\n';
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  for (int i = 0; i < argc; ++i) o.command += (i ? " " : "") + std::string(argv[i]);

  CLI::App app{"nmlkit: treewidth-based reasoning for propositional, default and autoepistemic logic"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_flag("--json", o.json_out, "Machine-readable output");
  app.add_flag("--report", o.report, "Add a run report (command, fingerprint, timings, limits) to JSON output");
  app.add_option("--limits", o.limits_spec, "Cap overrides, e.g. sat_atoms=20,dp_width=10 (on top of NMLKIT_LIMITS)");

  auto add_basis = [&](CLI::App* c) {
    c->add_option("--basis", o.basis, "Connectives, e.g. not,and,or (auto: those used by the input)");
  };

  auto* fmt = app.add_subcommand("fmt", "Propositional satisfiability and implication")->require_subcommand(1);
  auto* check_sat = fmt->add_subcommand("check-sat", "Satisfiability of a .fs formula set");
  check_sat->add_option("file", o.file, "Formula set (.fs)")->required();
  check_sat->add_option("--method", o.method, "brute|dp")->check(CLI::IsMember({"brute", "dp"}));
  add_basis(check_sat);
  auto* check_imp = fmt->add_subcommand("check-imp", "Implication F |= G of a .imp file");
  check_imp->add_option("file", o.file, "Implication instance (.imp)")->required();
  check_imp->add_option("--method", o.method, "brute|dp")->check(CLI::IsMember({"brute", "dp"}));
  add_basis(check_imp);

  auto* dl = app.add_subcommand("dl", "Default logic")->require_subcommand(1);
  auto* dl_solve = dl->add_subcommand("solve", "Extension existence for a .dt theory");
  dl_solve->add_option("file", o.file, "Default theory (.dt)")->required();
  dl_solve->add_option("--method", o.method, "enum|mso")->check(CLI::IsMember({"enum", "mso"}));
  dl_solve->add_option("--oracle", o.oracle, "brute|twdp")->check(CLI::IsMember({"brute", "twdp"}));
  dl_solve->add_option("--variant", o.variant, "corrected|as_printed (mso)");
  add_basis(dl_solve);

  auto* ael = app.add_subcommand("ael", "Autoepistemic logic")->require_subcommand(1);
  auto* ael_solve = ael->add_subcommand("solve", "Expansion existence for a .ae theory");
  ael_solve->add_option("file", o.file, "Autoepistemic theory (.ae)")->required();
  ael_solve->add_option("--method", o.method, "fullsets|mso")->check(CLI::IsMember({"fullsets", "mso"}));
  ael_solve->add_option("--oracle", o.oracle, "brute|twdp")->check(CLI::IsMember({"brute", "twdp"}));
  ael_solve->add_option("--variant", o.variant, "corrected|as_printed (mso)");
  add_basis(ael_solve);

  auto* st = app.add_subcommand("struct", "Relational structures")->require_subcommand(1);
  auto* st_build = st->add_subcommand("build", "Build the structure of an input file");
  st_build->add_option("file", o.file, "Input (.fs, .imp, .dt or .ae)")->required();
  st_build->add_option("--kind", o.kind, "prop|imp|dl|ae (default: from the extension)");
  st_build->add_flag("--gaifman", o.gaifman, "Print the Gaifman graph in .gr format");
  add_basis(st_build);

  auto* tw = app.add_subcommand("tw", "Treewidth")->require_subcommand(1);
  auto* tw_compute = tw->add_subcommand("compute", "Decompose a .gr graph");
  tw_compute->add_option("file", o.file, "Graph (.gr)")->required();
  tw_compute->add_flag("--exact", o.exact, "Exact treewidth");
  tw_compute->add_option("--method", o.method, "min_degree|min_fill|exact")
      ->check(CLI::IsMember({"min_degree", "min_fill", "exact"}));
  tw_compute->add_option("-o,--output", o.output, "Write the .td here");
  auto* tw_verify = tw->add_subcommand("verify", "Check a .td against a .gr");
  tw_verify->add_option("graph", o.file, "Graph (.gr)")->required();
  tw_verify->add_option("td", o.file2, "Decomposition (.td)")->required();
  auto* tw_norm = tw->add_subcommand("normalize", "Rewrite a pseudo-clique decomposition");
  tw_norm->add_option("graph", o.file, "Pseudo-clique (.gr)")->required();
  tw_norm->add_option("td", o.file2, "Decomposition (.td)")->required();
  tw_norm->add_option("--labels", o.labels_file, "Label sidecar");
  tw_norm->add_option("--mains", o.mains, "Main vertices, e.g. 1,2,3");
  tw_norm->add_option("-o,--output", o.output, "Write the .td here");
  auto* tw_lb = tw->add_subcommand("lower-bound", "Pseudo-clique minor lower bound");
  tw_lb->add_option("file", o.file, "Graph (.gr)")->required();

  auto* gen = app.add_subcommand("gen", "Instance families")->require_subcommand(1);
  auto* gen_pc = gen->add_subcommand("pseudo-clique", "Pseudo-clique of size n and cardinality k");
  gen_pc->add_option("-n", o.n, "Main vertices")->required();
  gen_pc->add_option("-k", o.k, "Edge-nodes per pair")->required();
  gen_pc->add_flag("--labels", o.labels, "Emit vertex labels");
  auto* gen_dl = gen->add_subcommand("dl-lower", "Default theories with growing width");
  gen_dl->add_option("-n", o.n, "Size")->required();
  gen_dl->add_option("--variant", o.dl_variant, "printed|symmetric");
  auto* gen_ae = gen->add_subcommand("ael-lower", "Autoepistemic theories with growing width");
  gen_ae->add_option("-k", o.k, "Size")->required();
  auto* gen_imp = gen->add_subcommand("imp-lower", "Implication instances with growing width");
  gen_imp->add_option("--kind", o.kind, "xor3|cnf_dnf")->required();
  gen_imp->add_option("-n", o.n, "Size")->required();
  auto* gen_chain_cmd = gen->add_subcommand("chain", "Implication chain x1, x1 -> x2, ...");
  gen_chain_cmd->add_option("-n", o.n, "Length")->required();
  for (auto* g : {gen_pc, gen_dl, gen_ae, gen_imp, gen_chain_cmd})
    g->add_option("-o,--output", o.output, "Write here instead of stdout");

  auto* mso = app.add_subcommand("mso", "Monadic second-order logic")->require_subcommand(1);
  auto* mso_eval = mso->add_subcommand("eval", "Evaluate a sentence on the structure of an input");
  mso_eval->add_option("file", o.file, "Input (.fs, .imp, .dt or .ae)")->required();
  mso_eval->add_option("--kind", o.kind, "prop|imp|dl|ae (default: from the extension)");
  mso_eval->add_option("--paper", o.paper, "struc|assign|sat|imp|extension|full_exists");
  mso_eval->add_option("--variant", o.variant, "corrected|as_printed");
  mso_eval->add_option("--formula", o.formula_text, "Sentence text");
  mso_eval->add_option("--formula-file", o.formula_file, "File holding the sentence");
  add_basis(mso_eval);

  auto* verify = app.add_subcommand("verify-paper", "Run the acceptance suite");
  verify->add_flag("--quick", o.quick, "Smaller random samples");
  verify->add_option("--seed", o.seed, "Random seed")->default_val(1);
  verify->add_option("--only", o.only, "Run a single criterion");

  auto* bench = app.add_subcommand("bench", "Time a method across a family; CSV output");
  bench->add_option("--family", o.family, "chain|pseudo-clique|random-graph|dl-lower|ael-lower|imp-xor3|imp-cnf-dnf")
      ->required();
  bench->add_option("--params", o.params, "Sizes, e.g. 1000,2000 or 3-6")->required();
  bench->add_option("--method", o.method, "exact|min_fill|min_degree|dp|brute|enum|mso");
  bench->add_option("--oracle", o.oracle, "brute|twdp (enum)");
  bench->add_option("--seed", o.seed, "Random seed")->default_val(1);
  bench->add_option("--repeat", o.repeat, "Report the best of this many runs")->default_val(1);
  bench->add_option("-o,--output", o.output, "Also write the CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    o.limits = Limits::from_env();
    if (!o.limits_spec.empty()) o.limits = Limits::parse(o.limits_spec, o.limits);
  } catch (const Error& e) {
    return fail(o, "usage", e.what(), 0, 0, kUsage);
  }

  const std::vector<std::pair<CLI::App*, std::function<int()>>> handlers = {
      {check_sat, [&] { return cmd_check_sat(o); }},
      {check_imp, [&] { return cmd_check_imp(o); }},
      {dl_solve, [&] { return cmd_dl_solve(o); }},
      {ael_solve, [&] { return cmd_ael_solve(o); }},
      {st_build, [&] { return cmd_struct_build(o); }},
      {tw_compute, [&] { return cmd_tw_compute(o); }},
      {tw_verify, [&] { return cmd_tw_verify(o); }},
      {tw_norm, [&] { return cmd_tw_normalize(o); }},
      {tw_lb, [&] { return cmd_tw_lower_bound(o); }},
      {gen_pc, [&] { return cmd_gen(o, "pseudo-clique"); }},
      {gen_dl, [&] { return cmd_gen(o, "dl-lower"); }},
      {gen_ae, [&] { return cmd_gen(o, "ael-lower"); }},
      {gen_imp, [&] { return cmd_gen(o, "imp-lower"); }},
      {gen_chain_cmd, [&] { return cmd_gen(o, "chain"); }},
      {mso_eval, [&] { return cmd_mso_eval(o); }},
      {verify, [&] { return cmd_verify_paper(o); }},
      {bench, [&] { return cmd_bench(o); }},
  };

  try {
    for (const auto& [sub, run] : handlers)
      if (sub->parsed()) return run();
    return fail(o, "usage", "no command given", 0, 0, kUsage);
  } catch (const UsageError& e) {
    return fail(o, "usage", e.what(), 0, 0, kUsage);
  } catch (const ResourceLimit& e) {
    return fail(o, "resource_limit", e.what(), 0, 0, kLimit);
  } catch (const SyntaxError& e) {
    return fail(o, "syntax", e.what(), e.line(), e.column(), kInputError);
  } catch (const Error& e) {
    return fail(o, "invalid_input", e.what(), 0, 0, kInputError);
  } catch (const std::exception& e) {
    return fail(o, "internal", e.what(), 0, 0, kInputError);
  }
}
