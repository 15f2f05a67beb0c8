#pragma once

// Run configuration, the staged validate -> quotient -> dynamics -> K-theory
// pipeline, and its JSON, text and DOT renderings.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "solenoidk/abelian.hpp"
#include "solenoidk/error.hpp"

namespace solenoidk {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "solenoidk-report/1";

struct RunOptions {
  std::size_t zeta_max_n = 8;
  std::size_t cover_level = 2;
  std::size_t n_max = 20;
  std::size_t grid_density = 16;
  std::size_t k_max = 2;
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  std::size_t wieler_samples = 200;
  std::optional<IntMatrix> a0;
  std::optional<IntMatrix> a1;
  std::string json_out;
  std::string dot_out;
  std::string format = "text";
};

struct RunConfig {
  std::string name;
  std::vector<std::string> edges;
  /// Image words in edge order, as written in the file.
  std::vector<std::string> images;
  RunOptions options;
  std::string source;
};

/// ParseError messages carry "line L, column C" when the TOML parser or the
/// offending key knows its position. UnknownEdge for undeclared letters.
RunConfig parse_config_string(const std::string& text, const std::string& source = "<string>");
RunConfig parse_config(const std::string& path);

/// Sets one [options] key from its textual value; ParseError on bad values or
/// unknown keys.
void set_option(RunOptions& options, const std::string& key, const std::string& value);

/// Integer matrix from "[[2,1],[1,1]]" or "2 1; 1 1".
IntMatrix parse_matrix(const std::string& text);

enum Stage : unsigned {
  StageValidation = 1u << 0,
  StageQuotient = 1u << 1,
  StageEntropy = 1u << 2,
  StageZeta = 1u << 3,
  StageShiftEquivalence = 1u << 4,
  StageWieler = 1u << 5,
  StageExpansive = 1u << 6,
  StageKTheory = 1u << 7,
  StageAll = (1u << 8) - 1,
};

struct Report {
  /// Serialized report, keys sorted, no timestamps.
  std::string json;
  std::string text;
  /// 0 all requested stages ok, 1 a stage failed.
  int exit_code = 0;
};

/// Never throws for failures inside a stage; they are recorded and later
/// stages that depend on the failed one are marked skipped.
Report run_pipeline(const RunConfig& config, unsigned stages = StageAll);

enum class DotView { Automaton, Quotient };

/// Germ automaton (nodes germs, edges tau, dashed non-separation edges) or the
/// quotient presentation (arc nodes joined through germ clusters).
std::string export_dot(const RunConfig& config, DotView view = DotView::Automaton);

/// p/q family K-theory as a JSON document.
std::string pq_family_json(const Integer& p, const Integer& q);

}  // namespace solenoidk
