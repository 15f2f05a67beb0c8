#include "solenoidk.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "solenoidk/pipeline.hpp"

struct sk_config {
  solenoidk::RunConfig config;
};

struct sk_report {
  solenoidk::Report report;
};

namespace {

thread_local std::string last_error;

static_assert(static_cast<int>(solenoidk::ErrorCode::InvalidArgument) + 1 == SK_INVALID_ARGUMENT);

sk_status to_status(solenoidk::ErrorCode code) {
  // ErrorCode and sk_status list the codes in the same order, offset by SK_OK.
  return static_cast<sk_status>(static_cast<int>(code) + 1);
}

template <class F>
sk_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return SK_OK;
  } catch (const solenoidk::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SK_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SK_INTERNAL;
  }
}

sk_status null_argument(const char* what) {
  last_error = std::string(what) + " is null";
  return SK_INVALID_ARGUMENT;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* sk_version(void) { return solenoidk::kToolVersion; }

const char* sk_status_name(sk_status status) {
  if (status == SK_OK) return "Ok";
  if (status == SK_INTERNAL) return "Internal";
  if (status < SK_OK || status > SK_INTERNAL) return "Unknown";
  // string_view literals from error_code_name are null terminated.
  return solenoidk::error_code_name(static_cast<solenoidk::ErrorCode>(status - 1)).data();
}

const char* sk_last_error(void) { return last_error.c_str(); }

sk_status sk_config_load(const char* path, sk_config** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new sk_config{solenoidk::parse_config(path)}; });
}

sk_status sk_config_parse(const char* toml_text, sk_config** out) {
  if (!toml_text) return null_argument("toml_text");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new sk_config{solenoidk::parse_config_string(toml_text)}; });
}

sk_status sk_config_set_option(sk_config* config, const char* key, const char* value) {
  if (!config) return null_argument("config");
  if (!key || !value) return null_argument("key or value");
  return guarded([&] { solenoidk::set_option(config->config.options, key, value); });
}

const char* sk_config_get_string(const sk_config* config, const char* key) {
  if (!config || !key) return nullptr;
  const auto& o = config->config.options;
  if (std::strcmp(key, "format") == 0) return o.format.c_str();
  if (std::strcmp(key, "json_out") == 0) return o.json_out.c_str();
  if (std::strcmp(key, "dot_out") == 0) return o.dot_out.c_str();
  return nullptr;
}

void sk_config_free(sk_config* config) { delete config; }

sk_status sk_run(const sk_config* config, unsigned stages, sk_report** out) {
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new sk_report{solenoidk::run_pipeline(config->config, stages)}; });
}

const char* sk_report_json(const sk_report* report) { return report ? report->report.json.c_str() : nullptr; }
const char* sk_report_text(const sk_report* report) { return report ? report->report.text.c_str() : nullptr; }
int sk_report_exit_code(const sk_report* report) { return report ? report->report.exit_code : 1; }
void sk_report_free(sk_report* report) { delete report; }

sk_status sk_export_dot(const sk_config* config, int view, char** out) {
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  if (view != SK_DOT_AUTOMATON && view != SK_DOT_QUOTIENT) {
    last_error = "unknown DOT view " + std::to_string(view);
    return SK_INVALID_ARGUMENT;
  }
  *out = nullptr;
  return guarded([&] {
    *out = dup(solenoidk::export_dot(config->config, view == SK_DOT_AUTOMATON ? solenoidk::DotView::Automaton
                                                                              : solenoidk::DotView::Quotient));
  });
}

sk_status sk_pq_family_json(const char* p, const char* q, char** out) {
  if (!p || !q) return null_argument("p or q");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    solenoidk::Integer pi, qi;
    if (pi.set_str(p, 10) != 0 || qi.set_str(q, 10) != 0)
      throw solenoidk::Error(solenoidk::ErrorCode::InvalidArgument, "p and q must be decimal integers");
    *out = dup(solenoidk::pq_family_json(pi, qi));
  });
}

void sk_string_free(char* s) { std::free(s); }

}  // extern "C"
