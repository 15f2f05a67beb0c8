/* Exercises the C interface from C. argv[1] is the systems directory. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "solenoidk.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static sk_config* load(const char* dir, const char* name) {
  char path[1024];
  snprintf(path, sizeof path, "%s/%s", dir, name);
  sk_config* c = NULL;
  sk_status s = sk_config_load(path, &c);
  if (s != SK_OK) {
    fprintf(stderr, "load %s: %s: %s\n", path, sk_status_name(s), sk_last_error());
    exit(1);
  }
  return c;
}

int main(int argc, char** argv) {
  if (argc < 2) return 2;
  const char* dir = argv[1];

  EXPECT(strcmp(sk_version(), "0.1.0") == 0);
  EXPECT(strcmp(sk_status_name(SK_NO_FLATTENING), "NoFlattening") == 0);
  EXPECT(strcmp(sk_status_name(SK_INVALID_ARGUMENT), "InvalidArgument") == 0);

  sk_config* c = load(dir, "aab_ab.toml");
  sk_report* r = NULL;
  EXPECT(sk_run(c, SK_STAGE_KTHEORY, &r) == SK_OK);
  EXPECT(sk_report_exit_code(r) == 0);
  EXPECT(strstr(sk_report_json(r), "\"provenance\": \"RoseHeuristic\"") != NULL);
  EXPECT(strstr(sk_report_text(r), "stable (Z^2, Z)") != NULL);
  sk_report_free(r);

  EXPECT(sk_config_set_option(c, "n_max", "abc") == SK_PARSE_ERROR);
  EXPECT(strlen(sk_last_error()) > 0);
  EXPECT(sk_config_set_option(c, "format", "json") == SK_OK);
  EXPECT(strcmp(sk_config_get_string(c, "format"), "json") == 0);
  EXPECT(sk_config_get_string(c, "seed") == NULL);

  char* dot = NULL;
  EXPECT(sk_export_dot(c, SK_DOT_AUTOMATON, &dot) == SK_OK);
  EXPECT(dot && strncmp(dot, "digraph germs", 13) == 0);
  sk_string_free(dot);
  EXPECT(sk_export_dot(c, 7, &dot) == SK_INVALID_ARGUMENT);
  sk_config_free(c);

  c = load(dir, "thue_morse.toml");
  EXPECT(sk_run(c, SK_STAGE_ALL, &r) == SK_OK);
  EXPECT(sk_report_exit_code(r) == 1);
  EXPECT(strstr(sk_report_json(r), "NoFlattening") != NULL);
  sk_report_free(r);
  sk_config_free(c);

  sk_config* bad = NULL;
  EXPECT(sk_config_parse("[presolenoid]\nedges = [\"a\"]\n[substitution]\na = \"ab\"\n", &bad) == SK_UNKNOWN_EDGE);
  EXPECT(bad == NULL);
  EXPECT(sk_config_parse("[presolenoid\n", &bad) == SK_PARSE_ERROR);
  EXPECT(strstr(sk_last_error(), "line 1") != NULL);
  EXPECT(sk_config_load(NULL, &bad) == SK_INVALID_ARGUMENT);
  EXPECT(sk_run(NULL, SK_STAGE_ALL, &r) == SK_INVALID_ARGUMENT);

  char* pq = NULL;
  EXPECT(sk_pq_family_json("5", "3", &pq) == SK_OK);
  EXPECT(pq && strstr(pq, "\"non_normative\": true") != NULL);
  sk_string_free(pq);
  EXPECT(sk_pq_family_json("3", "5", &pq) == SK_INVALID_ARGUMENT);
  EXPECT(sk_pq_family_json("x", "5", &pq) == SK_INVALID_ARGUMENT);

  sk_report_free(NULL);
  sk_config_free(NULL);
  sk_string_free(NULL);

  if (failures) fprintf(stderr, "%d failures\n", failures);
  else printf("capi: all checks passed\n");
  return failures ? 1 : 0;
}
