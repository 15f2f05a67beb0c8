#include "solenoidk/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>
#include <json.hpp>

#include "solenoidk/dynamics.hpp"
#include "solenoidk/ktheory.hpp"

namespace solenoidk {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Config

std::string where(const toml::source_region& src) {
  return "line " + std::to_string(src.begin.line) + ", column " + std::to_string(src.begin.column);
}

[[noreturn]] void parse_fail(const toml::node& node, const std::string& what) {
  // Nodes built in code rather than parsed carry no position.
  if (node.source().begin.line == 0) throw Error(ErrorCode::ParseError, what);
  throw Error(ErrorCode::ParseError, what + " at " + where(node.source()));
}

std::size_t as_count(const toml::node& node, const std::string& key) {
  const auto v = node.value<std::int64_t>();
  if (!v || *v < 0) parse_fail(node, "option '" + key + "' must be a non-negative integer");
  return static_cast<std::size_t>(*v);
}

IntMatrix toml_matrix(const toml::node& node, const std::string& key) {
  if (const auto s = node.value<std::string>()) {
    try {
      return parse_matrix(*s);
    } catch (const Error& e) {
      parse_fail(node, "option '" + key + "': " + e.what());
    }
  }
  const toml::array* rows = node.as_array();
  if (!rows || rows->empty()) parse_fail(node, "option '" + key + "' must be a nonempty array of rows");
  std::vector<std::vector<Integer>> out;
  for (const toml::node& row : *rows) {
    const toml::array* r = row.as_array();
    if (!r) parse_fail(row, "option '" + key + "': each row must be an array");
    std::vector<Integer> vals;
    for (const toml::node& x : *r) {
      const auto v = x.value<std::int64_t>();
      if (!v) parse_fail(x, "option '" + key + "': entries must be integers");
      vals.emplace_back(static_cast<long>(*v));
    }
    if (!out.empty() && vals.size() != out.front().size()) parse_fail(row, "option '" + key + "': ragged rows");
    out.push_back(std::move(vals));
  }
  return IntMatrix::from_rows(out);
}

void read_options(const toml::table& t, RunOptions& o) {
  static const std::map<std::string, std::size_t RunOptions::*> counts = {
      {"zeta_max_n", &RunOptions::zeta_max_n},   {"cover_level", &RunOptions::cover_level},
      {"n_max", &RunOptions::n_max},             {"grid_density", &RunOptions::grid_density},
      {"k_max", &RunOptions::k_max},             {"samples", &RunOptions::samples},
      {"wieler_samples", &RunOptions::wieler_samples},
  };
  for (const auto& [k, node] : t) {
    const std::string key(k.str());
    if (auto it = counts.find(key); it != counts.end()) {
      o.*(it->second) = as_count(node, key);
    } else if (key == "seed") {
      o.seed = as_count(node, key);
    } else if (key == "a0") {
      o.a0 = toml_matrix(node, key);
    } else if (key == "a1") {
      o.a1 = toml_matrix(node, key);
    } else if (key == "json_out" || key == "dot_out" || key == "format") {
      const auto s = node.value<std::string>();
      if (!s) parse_fail(node, "option '" + key + "' must be a string");
      (key == "json_out" ? o.json_out : key == "dot_out" ? o.dot_out : o.format) = *s;
    } else {
      parse_fail(node, "unknown option '" + key + "'");
    }
  }
  if (o.format != "text" && o.format != "json")
    throw Error(ErrorCode::ParseError, "option 'format' must be \"text\" or \"json\"");
}

// ---------------------------------------------------------------------------
// JSON helpers

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
    rows.push_back(row);
  }
  return rows;
}

json group_json(const FgGroup& g) {
  json t = json::array();
  for (const auto& d : g.torsion()) t.push_back(d.get_str());
  return {{"name", g.to_string()}, {"rank", g.free_rank()}, {"torsion", t}};
}

json colimit_json(const ColimitGroup& c) {
  json t = json::array();
  for (const auto& d : c.torsion_limit().torsion()) t.push_back(d.get_str());
  return {{"name", c.name()},
          {"recognized", c.pretty().has_value()},
          {"rank", c.free_rank()},
          {"torsion", t},
          {"finitely_generated_free", c.is_finitely_generated_free()},
          {"base", c.base().to_string()},
          {"endo", matrix_json(c.endo())},
          {"stabilization_index", c.stabilization_index()}};
}

json error_json(ErrorCode code, const std::string& message) {
  return {{"code", std::string(error_code_name(code))}, {"message", message}};
}

json pimsner_json(const PimsnerResult& r) {
  return {{"k0_pieces", {{"sub", colimit_json(r.coker0)}, {"quotient", colimit_json(r.ker1)}}},
          {"k1_pieces", {{"sub", colimit_json(r.coker1)}, {"quotient", colimit_json(r.ker0)}}},
          {"assembled", {{"k0", r.k0_name()}, {"k1", r.k1_name()}}},
          {"split_flags", {{"k0", r.split0}, {"k1", r.split1}}},
          {"rank_identity", {{"k0_rank", r.rank0}, {"k1_rank", r.rank1}, {"holds", true}}}};
}

std::string rational_str(const Rational& r) { return r.get_str(); }

// ---------------------------------------------------------------------------
// Stages

struct StageRunner {
  json& stages;
  std::vector<std::string>& text;
  int& exit_code;

  // Runs body when requested. Returns whether the stage succeeded.
  bool run(const std::string& name, bool requested, const std::optional<std::string>& blocked,
           const std::function<json()>& body) {
    if (!requested) return false;
    if (blocked) {
      stages[name] = {{"status", "skipped"}, {"reason", *blocked}};
      text.push_back(name + ": skipped (" + *blocked + ")");
      return false;
    }
    try {
      json out = body();
      out["status"] = "ok";
      stages[name] = out;
      return true;
    } catch (const Error& e) {
      stages[name] = {{"status", "error"}, {"error", error_json(e.code(), e.what())}};
      text.push_back(name + ": error " + std::string(error_code_name(e.code())) + ": " + e.what());
    } catch (const std::exception& e) {
      stages[name] = {{"status", "error"}, {"error", error_json(ErrorCode::InvalidArgument, e.what())}};
      text.push_back(name + ": error: " + std::string(e.what()));
    }
    exit_code = 1;
    return false;
  }
};

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

json config_echo(const RunConfig& c) {
  json subst = json::object();
  for (std::size_t i = 0; i < c.edges.size(); ++i) subst[c.edges[i]] = c.images[i];
  const RunOptions& o = c.options;
  json opts = {{"zeta_max_n", o.zeta_max_n}, {"cover_level", o.cover_level},   {"n_max", o.n_max},
               {"grid_density", o.grid_density}, {"k_max", o.k_max},       {"seed", o.seed},
               {"samples", o.samples},       {"wieler_samples", o.wieler_samples}};
  opts["a0"] = o.a0 ? matrix_json(*o.a0) : json(nullptr);
  opts["a1"] = o.a1 ? matrix_json(*o.a1) : json(nullptr);
  return {{"name", c.name}, {"edges", c.edges}, {"substitution", subst}, {"options", opts}};
}

SubstitutionSystem build_system(const RunConfig& c) { return SubstitutionSystem::from_strings(c.edges, c.images); }

}  // namespace

// ---------------------------------------------------------------------------

IntMatrix parse_matrix(const std::string& text) {
  // "[[2,1],[1,1]]" becomes "2 1;1 1"; a bare "[3]" or "2 1; 1 1" passes through.
  std::string flat;
  int depth = 0;
  for (char ch : text) {
    if (ch == '[') {
      ++depth;
    } else if (ch == ']') {
      if (--depth < 0) break;
      if (depth == 1) flat += ';';
    } else {
      flat += ch == ',' ? ' ' : ch;
    }
  }
  if (depth != 0) throw Error(ErrorCode::ParseError, "unbalanced brackets in matrix '" + text + "'");
  std::vector<std::vector<Integer>> rows;
  std::istringstream lines(flat);
  std::string r;
  while (std::getline(lines, r, ';')) {
    std::istringstream in(r);
    std::vector<Integer> vals;
    std::string tok;
    while (in >> tok) {
      Integer v;
      if (v.set_str(tok, 10) != 0) throw Error(ErrorCode::ParseError, "bad matrix entry '" + tok + "'");
      vals.push_back(v);
    }
    if (!vals.empty()) rows.push_back(vals);
  }
  if (rows.empty()) throw Error(ErrorCode::ParseError, "empty matrix '" + text + "'");
  for (const auto& row : rows)
    if (row.size() != rows.front().size()) throw Error(ErrorCode::ParseError, "ragged matrix '" + text + "'");
  return IntMatrix::from_rows(rows);
}

void set_option(RunOptions& o, const std::string& key, const std::string& value) {
  // Same reader as the [options] table, so both paths accept the same keys.
  toml::table t;
  if (key == "a0" || key == "a1" || key == "json_out" || key == "dot_out" || key == "format") {
    t.insert(key, value);
  } else {
    std::int64_t v = 0;
    const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || end != value.data() + value.size())
      throw Error(ErrorCode::ParseError, "option '" + key + "' needs an integer, got '" + value + "'");
    t.insert(key, v);
  }
  RunOptions next = o;
  read_options(t, next);
  o = std::move(next);
}

RunConfig parse_config_string(const std::string& text, const std::string& source) {
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string(e.description()) + " at " + where(e.source()));
  }
  RunConfig c;
  c.source = source;
  for (const auto& [k, node] : root) {
    const std::string key(k.str());
    if (key != "presolenoid" && key != "substitution" && key != "options")
      parse_fail(node, "unknown section '" + key + "'");
  }

  const toml::table* pre = root["presolenoid"].as_table();
  if (!pre) throw Error(ErrorCode::ParseError, "missing [presolenoid] section");
  const toml::array* edges = (*pre)["edges"].as_array();
  if (!edges) throw Error(ErrorCode::ParseError, "[presolenoid] needs edges = [...] at " + where(pre->source()));
  for (const toml::node& e : *edges) {
    const auto s = e.value<std::string>();
    if (!s || s->empty()) parse_fail(e, "edge names must be nonempty strings");
    for (const auto& prev : c.edges)
      if (prev == *s) parse_fail(e, "duplicate edge '" + *s + "'");
    c.edges.push_back(*s);
  }
  if (c.edges.empty()) throw Error(ErrorCode::ParseError, "edges = [] declares no edges at " + where(edges->source()));
  for (const auto& [k, node] : *pre) {
    const std::string key(k.str());
    if (key == "name") {
      const auto s = node.value<std::string>();
      if (!s) parse_fail(node, "name must be a string");
      c.name = *s;
    } else if (key != "edges") {
      parse_fail(node, "unknown key '" + key + "' in [presolenoid]");
    }
  }

  const toml::table* sub = root["substitution"].as_table();
  if (!sub || sub->empty()) throw Error(ErrorCode::ParseError, "empty or missing [substitution] table");
  c.images.assign(c.edges.size(), std::string());
  std::vector<bool> seen(c.edges.size(), false);
  for (const auto& [k, node] : *sub) {
    const std::string key(k.str());
    std::size_t idx = c.edges.size();
    for (std::size_t i = 0; i < c.edges.size(); ++i)
      if (c.edges[i] == key) idx = i;
    if (idx == c.edges.size())
      throw Error(ErrorCode::UnknownEdge, "unknown edge '" + key + "' in [substitution] at " + where(node.source()));
    const auto s = node.value<std::string>();
    if (!s) parse_fail(node, "image of '" + key + "' must be a string");
    c.images[idx] = *s;
    seen[idx] = true;
  }
  for (std::size_t i = 0; i < c.edges.size(); ++i)
    if (!seen[i]) throw Error(ErrorCode::ParseError, "no image given for edge '" + c.edges[i] + "'");

  // Letters are checked here so that an undeclared edge is a config error.
  build_system(c);

  if (const toml::table* opts = root["options"].as_table()) read_options(*opts, c.options);
  if (c.name.empty()) c.name = join(c.images, "/");
  return c;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_string(buf.str(), path);
}

Report run_pipeline(const RunConfig& config, unsigned stages_mask) {
  // Dependencies are pulled in even when only a later stage is requested.
  if (stages_mask & (StageZeta | StageShiftEquivalence | StageExpansive | StageKTheory)) stages_mask |= StageQuotient;
  if (stages_mask & (StageQuotient | StageEntropy | StageWieler)) stages_mask |= StageValidation;
  const RunOptions& o = config.options;

  json stages = json::object();
  std::vector<std::string> text;
  int exit_code = 0;
  StageRunner runner{stages, text, exit_code};

  text.push_back("system " + config.name + " (" + std::to_string(config.edges.size()) + " edges)");

  const SubstitutionSystem system = build_system(config);
  const bool valid = runner.run("validation", stages_mask & StageValidation, std::nullopt, [&] {
    const ValidationReport v = validate(system);
    json issues = json::array();
    for (const auto& i : v.issues) {
      json e = error_json(i.code, i.message);
      e["edge"] = system.edge_name(i.edge);
      issues.push_back(e);
    }
    if (!v.ok()) throw Error(v.issues.front().code, v.issues.front().message);
    const bool mixing = is_mixing(system);
    text.push_back("validation: ok, " + std::string(mixing ? "mixing" : "not mixing"));
    return json{{"issues", issues}, {"substitution_matrix", matrix_json(substitution_matrix(system))},
                {"mixing", mixing}};
  });
  const std::optional<std::string> invalid =
      valid ? std::nullopt : std::optional<std::string>("validation failed");

  std::optional<QuotientPresentation> q;
  std::optional<std::string> no_flattening;
  const bool have_q = runner.run("quotient", stages_mask & StageQuotient, invalid, [&] {
    q.emplace(system);
    json germs = json::array(), tau = json::object(), nonsep = json::array(), cover = json::object();
    std::vector<std::string> names;
    for (const auto& g : q->germs()) names.push_back(germ_name(system, g));
    for (std::size_t i = 0; i < q->germ_count(); ++i) {
      germs.push_back(names[i]);
      tau[names[i]] = names[q->tau(i)];
    }
    for (const auto& [i, j] : q->non_separated_pairs()) nonsep.push_back({names[i], names[j]});
    for (EdgeId e = 0; e < system.edge_count(); ++e) cover[system.edge_name(e)] = covering_time(system, e);
    const bool hausdorff = is_hausdorff(*q);
    json out = {{"germs", germs},
                {"tau", tau},
                {"hausdorff", hausdorff},
                {"local_homeomorphism", is_local_homeomorphism(system)},
                {"non_separated", nonsep},
                {"covering_time", cover}};
    std::vector<std::string> tau_text;
    for (std::size_t i = 0; i < names.size(); ++i) tau_text.push_back(names[i] + "->" + names[q->tau(i)]);
    text.push_back("quotient: germs {" + join(names, ", ") + "}, tau " + join(tau_text, " ") + ", " +
                   (hausdorff ? "Hausdorff" : "not Hausdorff"));
    const auto d = circle_cover_degree(*q);
    out["circle_degree"] = d ? json(d->get_str()) : json(nullptr);
    try {
      const std::size_t k0 = k0_constant(*q);
      out["k0_constant"] = k0;
      out["flattened_germ"] = names[flattened_germ(*q, k0)];
      text.push_back("quotient: K0 constant " + std::to_string(k0) + ", flattens to " +
                     names[flattened_germ(*q, k0)]);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoFlattening) throw;
      out["k0_constant"] = nullptr;
      out["flattening_error"] = error_json(e.code(), e.what());
      no_flattening = "NoFlattening";
      text.push_back("quotient: error NoFlattening: " + std::string(e.what()));
      exit_code = 1;
    }
    return out;
  });
  const std::optional<std::string> no_q = have_q ? std::nullopt
                                          : invalid ? invalid
                                                    : std::optional<std::string>("quotient failed");
  const std::optional<std::string> needs_flat = no_q ? no_q : no_flattening;

  runner.run("entropy", stages_mask & StageEntropy, invalid, [&] {
    const EntropyEnclosure e = entropy(system, Rational(1, 1000000000));
    text.push_back("entropy: log lambda ~ " + e.decimal);
    return json{{"lambda", {{"lo", rational_str(e.lambda_lo)}, {"hi", rational_str(e.lambda_hi)}}},
                {"log", {{"lo", rational_str(e.log_lo)}, {"hi", rational_str(e.log_hi)}}},
                {"decimal", e.decimal},
                {"width", "1/1000000000"}};
  });

  runner.run("zeta", stages_mask & StageZeta, no_q, [&] {
    const ZetaSeries z = zeta_series(*q, o.zeta_max_n);
    json counts = json::array(), series = json::array();
    std::vector<std::string> ct;
    for (const auto& c : z.counts) {
      counts.push_back(c.get_str());
      ct.push_back(c.get_str());
    }
    for (const auto& c : z.series) series.push_back(rational_str(c));
    text.push_back("zeta: fix counts " + join(ct, " ") +
                   (z.guess ? ", guess " + z.guess->to_string() : ", no rational guess"));
    return json{{"max_n", o.zeta_max_n},
                {"fix_counts", counts},
                {"series", series},
                {"guess", z.guess ? json(z.guess->to_string()) : json(nullptr)},
                {"guess_label", "guess"}};
  });

  runner.run("shift_equivalence", stages_mask & StageShiftEquivalence, needs_flat, [&] {
    const ShiftEquivalenceReport r = shift_equivalence_check(*q, o.samples, o.seed);
    json ids = json::array();
    for (const auto& i : r.identities) ids.push_back({{"identity", i.identity}, {"points_checked", i.points_checked}});
    text.push_back("shift equivalence: " + std::to_string(r.identities.size()) + " identities hold, K0 = " +
                   std::to_string(r.k0));
    return json{{"k0", r.k0}, {"identities", ids}, {"seed", o.seed}};
  });

  runner.run("wieler", stages_mask & StageWieler, invalid, [&] {
    const WielerSearch w = wieler_axiom_witness(system, o.k_max, o.wieler_samples, o.seed);
    json out = {{"k_max", o.k_max}, {"samples_per_candidate", w.samples_per_candidate}, {"seed", o.seed}};
    if (w.witness) {
      out["label"] = "witness";
      out["witness"] = {{"k", w.witness->k},
                        {"gamma", rational_str(w.witness->gamma)},
                        {"beta", rational_str(w.witness->beta)}};
      text.push_back("wieler: witness K=" + std::to_string(w.witness->k) + " gamma=" +
                     rational_str(w.witness->gamma) + " beta=" + rational_str(w.witness->beta));
    } else {
      out["label"] = "no witness found";
      out["witness"] = nullptr;
      out["counterexample"] = w.counterexample;
      text.push_back("wieler: no witness found (" + w.counterexample + ")");
    }
    return out;
  });

  runner.run("expansive", stages_mask & StageExpansive, no_q, [&] {
    const CoverSpec cover(*q, o.cover_level);
    const SeparationReport r = forward_expansive_witness(*q, cover, o.n_max, o.grid_density);
    json unsep = json::array();
    for (const auto& [a, b] : r.unseparated) unsep.push_back({point_string(system, a), point_string(system, b)});
    text.push_back("expansive: level " + std::to_string(r.level) + ", " + std::to_string(r.pair_count) +
                   " pairs, " +
                   (r.all_separated() ? "all separated by n = " + std::to_string(r.max_separation_time)
                                      : std::to_string(r.unseparated.size()) + " unseparated"));
    return json{{"level", r.level},
                {"cover_elements", cover.element_count()},
                {"n_max", r.n_max},
                {"grid_density", r.grid_density},
                {"point_count", r.point_count},
                {"pair_count", r.pair_count},
                {"all_separated", r.all_separated()},
                {"max_separation_time", r.all_separated() ? json(r.max_separation_time) : json(nullptr)},
                {"unseparated", unsep},
                {"label", r.all_separated() ? "witness" : "no witness found"}};
  });

  std::optional<WrongWayProvenance> provenance;
  runner.run("ktheory", stages_mask & StageKTheory, needs_flat, [&] {
    const KGroups k = quotient_ktheory(*q);
    const WrongWayData w = wrongway_matrices(*q, k, o.a0, o.a1);
    provenance = w.provenance;
    const StableKTheory s = stable_ktheory(k, w);
    const PimsnerResult r = ruelle_ktheory(k, w);
    json out = {{"k0_quotient", group_json(k.k0)},
                {"k1_quotient", group_json(k.k1.group)},
                {"k0_basis", matrix_json(w.k0_basis)},
                {"A0", matrix_json(w.a0)},
                {"A1", matrix_json(w.a1)},
                {"provenance", provenance_name(w.provenance)},
                {"provenance_note", w.note},
                {"stable", {{"k0", colimit_json(s.k0)}, {"k1", colimit_json(s.k1)}}},
                {"ruelle", pimsner_json(r)}};
    try {
      out["unstable_ruelle"] = pimsner_json(unstable_ruelle_ktheory(k, w));
    } catch (const Error& e) {
      out["unstable_ruelle"] = {{"error", error_json(e.code(), e.what())}};
    }
    text.push_back("ktheory: quotient (" + k.k0.to_string() + ", " + k.k1.group.to_string() + "), A0 " +
                   w.a0.to_string() + ", A1 " + w.a1.to_string() + " [" + provenance_name(w.provenance) + "]");
    text.push_back("ktheory: stable (" + s.k0.name() + ", " + s.k1.name() + "), ruelle (" + r.k0_name() + ", " +
                   r.k1_name() + ")");
    return out;
  });

  json assumptions = json::array();
  assumptions.push_back({{"id", "germ-model"},
                         {"statement", "the quotient is modelled by admissible germ pairs closed under tau"}});
  if (stages.contains("ktheory")) {
    assumptions.push_back({{"id", "boundary-complex"},
                           {"statement", "K-groups of the quotient are ker and coker of the germ boundary map"}});
    if (provenance) {
      std::string s;
      switch (*provenance) {
        case WrongWayProvenance::UserSupplied: s = "wrong-way matrices supplied by the user"; break;
        case WrongWayProvenance::CircleCoverRule: s = "wrong-way matrices from the circle cover rule"; break;
        case WrongWayProvenance::RoseHeuristic:
          s = "wrong-way matrices from the rose heuristic, unverified beyond the bundled examples";
          break;
      }
      assumptions.push_back({{"id", "wrong-way-" + provenance_name(*provenance)}, {"statement", s}});
    }
  }

  json doc = {{"schema", kReportSchema},
              {"tool", {{"name", "solenoidk"}, {"version", kToolVersion}}},
              {"config", config_echo(config)},
              {"stages", stages},
              {"model_assumptions", assumptions},
              {"exit_code", exit_code},
              {"status", exit_code == 0 ? "ok" : "error"}};

  Report rep;
  rep.json = doc.dump(2) + "\n";
  std::vector<std::string> ids;
  for (const auto& a : assumptions) ids.push_back(a["id"].get<std::string>());
  text.push_back("model assumptions: " + join(ids, ", "));
  rep.text = join(text, "\n") + "\n";
  rep.exit_code = exit_code;
  return rep;
}

std::string export_dot(const RunConfig& config, DotView view) {
  const SubstitutionSystem system = build_system(config);
  require_valid(system);
  const QuotientPresentation q(system);
  std::vector<std::string> names;
  for (const auto& g : q.germs()) names.push_back(germ_name(system, g));
  const auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  };
  std::vector<std::set<std::string>> clique(q.germ_count());
  const auto pairs = q.non_separated_pairs();
  for (const auto& [i, j] : pairs) {
    clique[i].insert(names[j]);
    clique[j].insert(names[i]);
  }

  std::ostringstream out;
  if (view == DotView::Automaton) {
    out << "digraph germs {\n  rankdir=LR;\n  node [shape=ellipse];\n";
    for (std::size_t i = 0; i < q.germ_count(); ++i) {
      std::vector<std::string> c(clique[i].begin(), clique[i].end());
      out << "  " << quote("germ " + names[i]) << " [label=" << quote(names[i]);
      if (!c.empty()) out << ", nonseparated=" << quote(join(c, ",")) << ", tooltip=" << quote("not separated from " + join(c, ", "));
      out << "];\n";
    }
    for (std::size_t i = 0; i < q.germ_count(); ++i)
      out << "  " << quote("germ " + names[i]) << " -> " << quote("germ " + names[q.tau(i)]) << " [label=\"tau\"];\n";
    for (const auto& [i, j] : pairs)
      out << "  " << quote("germ " + names[i]) << " -> " << quote("germ " + names[j])
          << " [dir=none, style=dashed, constraint=false, label=\"nonsep\"];\n";
    out << "}\n";
  } else {
    out << "digraph quotient {\n  rankdir=LR;\n";
    for (EdgeId e = 0; e < system.edge_count(); ++e)
      out << "  " << quote("arc " + system.edge_name(e)) << " [shape=box, label=" << quote(system.edge_name(e)) << "];\n";
    out << "  subgraph cluster_vertex {\n    label=\"germs over the vertex\";\n";
    for (std::size_t i = 0; i < q.germ_count(); ++i) {
      std::vector<std::string> c(clique[i].begin(), clique[i].end());
      out << "    " << quote("germ " + names[i]) << " [shape=point, xlabel=" << quote(names[i]);
      if (!c.empty()) out << ", nonseparated=" << quote(join(c, ","));
      out << "];\n";
    }
    out << "  }\n";
    for (std::size_t i = 0; i < q.germ_count(); ++i) {
      const Germ& g = q.germs()[i];
      out << "  " << quote("arc " + system.edge_name(g.l)) << " -> " << quote("germ " + names[i]) << ";\n";
      out << "  " << quote("germ " + names[i]) << " -> " << quote("arc " + system.edge_name(g.r)) << ";\n";
    }
    out << "}\n";
  }
  return out.str();
}

std::string pq_family_json(const Integer& p, const Integer& q) {
  const PQFamilyReport r = pq_family(p, q);
  json doc = {{"schema", kReportSchema},
              {"tool", {{"name", "solenoidk"}, {"version", kToolVersion}}},
              {"family", "p/q solenoid"},
              {"p", p.get_str()},
              {"q", q.get_str()},
              {"non_normative", r.non_normative},
              {"convention", {{"placement", "coker(1 - A0) in K0"}, {"k0", r.convention_k0}, {"k1", r.convention_k1},
                              {"pieces", pimsner_json(r.convention)}}},
              {"alternative", {{"placement", "coker(1 - A0) in K1"}, {"k0", r.alternative_k0}, {"k1", r.alternative_k1}}}};
  return doc.dump(2) + "\n";
}

}  // namespace solenoidk
