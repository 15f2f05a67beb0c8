// Command line front end; talks to the library only through solenoidk.h.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "solenoidk.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitModel = 1;
constexpr int kExitUsage = 2;

struct ConfigHandle {
  sk_config* ptr = nullptr;
  ~ConfigHandle() { sk_config_free(ptr); }
};

struct ReportHandle {
  sk_report* ptr = nullptr;
  ~ReportHandle() { sk_report_free(ptr); }
};

int fail(sk_status s, int exit_code) {
  std::cerr << "solenoidk: " << sk_status_name(s) << ": " << sk_last_error() << "\n";
  return exit_code;
}

bool write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
  if (!out) {
    std::cerr << "solenoidk: IoError: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

struct Common {
  std::string config_path;
  std::optional<std::string> format;
};

// Loads the config and applies command-line overrides. Config problems are
// usage errors.
int load(const Common& c, const std::vector<std::pair<std::string, std::string>>& overrides, ConfigHandle& h) {
  if (sk_status s = sk_config_load(c.config_path.c_str(), &h.ptr); s != SK_OK) return fail(s, kExitUsage);
  for (const auto& [key, value] : overrides)
    if (sk_status s = sk_config_set_option(h.ptr, key.c_str(), value.c_str()); s != SK_OK) return fail(s, kExitUsage);
  if (c.format)
    if (sk_status s = sk_config_set_option(h.ptr, "format", c.format->c_str()); s != SK_OK) return fail(s, kExitUsage);
  return kExitOk;
}

int run_stages(const Common& c, unsigned stages, const std::vector<std::pair<std::string, std::string>>& overrides,
               const std::optional<std::string>& json_path = std::nullopt) {
  ConfigHandle h;
  if (int rc = load(c, overrides, h); rc != kExitOk) return rc;
  ReportHandle r;
  if (sk_status s = sk_run(h.ptr, stages, &r.ptr); s != SK_OK) return fail(s, kExitModel);

  std::string out_path = json_path ? *json_path : sk_config_get_string(h.ptr, "json_out");
  if (!out_path.empty() && !write_file(out_path, sk_report_json(r.ptr))) return kExitUsage;
  const std::string format = sk_config_get_string(h.ptr, "format");
  std::cout << (format == "json" ? sk_report_json(r.ptr) : sk_report_text(r.ptr));
  return sk_report_exit_code(r.ptr);
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("config", c.config_path, "system TOML file")->required();
  sub->add_option("--format", c.format, "stdout format")->check(CLI::IsMember({"text", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quotient dynamics and K-theory of rose substitution pre-solenoids"};
  app.set_version_flag("--version", std::string(sk_version()));
  app.require_subcommand(1);

  Common c;
  std::size_t max_n = 0, level = 0, n_max = 0, density = 0;
  std::uint64_t seed = 0;
  std::string a0, a1, json_path, dot_path, view = "automaton", p, q;

  auto* validate = app.add_subcommand("validate", "structural validation");
  add_common(validate, c);
  auto* quotient = app.add_subcommand("quotient", "germs, tau, Hausdorff and K0 constant");
  add_common(quotient, c);
  auto* zeta = app.add_subcommand("zeta", "fixed point counts and zeta coefficients");
  add_common(zeta, c);
  auto* zeta_max = zeta->add_option("--max-n", max_n, "largest period")->check(CLI::Range(1, 64));
  auto* expansive = app.add_subcommand("expansive", "forward orbit expansiveness witness");
  add_common(expansive, c);
  auto* ex_level = expansive->add_option("--level", level, "cover level")->check(CLI::Range(1, 12));
  auto* ex_nmax = expansive->add_option("--n-max", n_max, "largest separation time")->check(CLI::Range(1, 1000));
  auto* ex_density = expansive->add_option("--density", density, "grid denominator")->check(CLI::Range(1, 4096));
  auto* ex_seed = expansive->add_option("--seed", seed, "seed");
  auto* ktheory = app.add_subcommand("ktheory", "K-theory of the quotient, stable and Ruelle algebras");
  add_common(ktheory, c);
  auto* kt_a0 = ktheory->add_option("--a0", a0, "degree zero wrong-way matrix, e.g. \"[[2,1],[1,1]]\"");
  auto* kt_a1 = ktheory->add_option("--a1", a1, "degree one wrong-way matrix");
  kt_a0->needs(kt_a1);
  kt_a1->needs(kt_a0);
  auto* report = app.add_subcommand("report", "every stage");
  add_common(report, c);
  auto* rep_json = report->add_option("--json", json_path, "write the JSON report here");
  auto* dot = app.add_subcommand("dot", "DOT export of the germ automaton or the quotient presentation");
  dot->add_option("config", c.config_path, "system TOML file")->required();
  auto* dot_out = dot->add_option("--out", dot_path, "write DOT here instead of stdout");
  dot->add_option("--view", view, "automaton or quotient")->check(CLI::IsMember({"automaton", "quotient"}));
  auto* pq = app.add_subcommand("pq-family", "Ruelle K-theory of the p/q solenoid family, both placements");
  pq->add_option("--p", p, "p")->required();
  pq->add_option("--q", q, "q")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  std::vector<std::pair<std::string, std::string>> overrides;
  if (*validate) return run_stages(c, SK_STAGE_VALIDATION, overrides);
  if (*quotient) return run_stages(c, SK_STAGE_QUOTIENT, overrides);
  if (*zeta) {
    if (*zeta_max) overrides.emplace_back("zeta_max_n", std::to_string(max_n));
    return run_stages(c, SK_STAGE_ZETA, overrides);
  }
  if (*expansive) {
    if (*ex_level) overrides.emplace_back("cover_level", std::to_string(level));
    if (*ex_nmax) overrides.emplace_back("n_max", std::to_string(n_max));
    if (*ex_density) overrides.emplace_back("grid_density", std::to_string(density));
    if (*ex_seed) overrides.emplace_back("seed", std::to_string(seed));
    return run_stages(c, SK_STAGE_EXPANSIVE, overrides);
  }
  if (*ktheory) {
    if (*kt_a0) {
      overrides.emplace_back("a0", a0);
      overrides.emplace_back("a1", a1);
    }
    return run_stages(c, SK_STAGE_KTHEORY, overrides);
  }
  if (*report) return run_stages(c, SK_STAGE_ALL, overrides, *rep_json ? std::optional(json_path) : std::nullopt);
  if (*dot) {
    ConfigHandle h;
    if (int rc = load(c, overrides, h); rc != kExitOk) return rc;
    char* text = nullptr;
    const int v = view == "quotient" ? SK_DOT_QUOTIENT : SK_DOT_AUTOMATON;
    if (sk_status s = sk_export_dot(h.ptr, v, &text); s != SK_OK) return fail(s, kExitModel);
    std::string body(text);
    sk_string_free(text);
    std::string path = *dot_out ? dot_path : sk_config_get_string(h.ptr, "dot_out");
    if (path.empty()) {
      std::cout << body;
    } else if (!write_file(path, body)) {
      return kExitUsage;
    }
    return kExitOk;
  }
  if (*pq) {
    char* text = nullptr;
    if (sk_status s = sk_pq_family_json(p.c_str(), q.c_str(), &text); s != SK_OK) return fail(s, kExitUsage);
    std::cout << text;
    sk_string_free(text);
    return kExitOk;
  }
  return kExitUsage;
}
