// Copyright 2026 The SEG Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// C interface to the semantic event graph engine.
//
// Objects are opaque handles created by seg_*_parse / seg_*_create style calls
// and released with the matching seg_*_free. Every fallible call returns a
// seg_status; on failure seg_last_error() describes the problem (the message
// is per thread and valid until the next failing call on that thread).
// Strings returned through `char**` are heap-allocated by the library and
// must be released with seg_string_free().
//
// Handles are immutable after creation except where noted and may be shared
// between threads for reading.

#ifndef SEG_SEG_H_
#define SEG_SEG_H_

#include <stddef.h>
#include <stdint.h>

#if defined(SEG_BUILDING_LIBRARY)
#define SEG_API __attribute__((visibility("default")))
#else
#define SEG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum seg_status {
  SEG_OK = 0,
  SEG_ERR_INVALID_ARGUMENT = 1,
  SEG_ERR_DATA = 2,
  SEG_ERR_BACKEND = 3,
  SEG_ERR_INTERNAL = 4
} seg_status;

typedef enum seg_prune_mode {
  SEG_PRUNE_ANCHOR = 0,
  SEG_PRUNE_LEXICAL = 1,
  SEG_PRUNE_EMPTY = 2
} seg_prune_mode;

typedef struct seg_log seg_log;
typedef struct seg_events seg_events;
typedef struct seg_graph seg_graph;
typedef struct seg_prune_result seg_prune_result;
typedef struct seg_qa_set seg_qa_set;
typedef struct seg_answerer seg_answerer;
typedef struct seg_judge seg_judge;
typedef struct seg_report seg_report;
typedef struct seg_workload seg_workload;

SEG_API const char* seg_version(void);
SEG_API const char* seg_last_error(void);
SEG_API void seg_string_free(char* s);

// ---- detection logs -------------------------------------------------------

SEG_API seg_status seg_log_parse(const char* json, size_t len, seg_log** out);
SEG_API seg_status seg_log_render(const seg_log* log, char** out_json);
SEG_API size_t seg_log_frame_count(const seg_log* log);
// Timestamp of the last frame in seconds (0 for an empty log).
SEG_API double seg_log_end_time(const seg_log* log);
SEG_API void seg_log_free(seg_log* log);

// ---- event extraction -----------------------------------------------------

typedef struct seg_extract_config {
  double delta;             // pixels, inclusive
  int beta;                 // tolerated apart/absent frames
  const char* focus_class;  // NULL means "person"
} seg_extract_config;

SEG_API void seg_extract_config_init(seg_extract_config* cfg);
SEG_API seg_status seg_extract(const seg_log* log, const seg_extract_config* cfg,
                               seg_events** out);

// ---- event lists ----------------------------------------------------------

SEG_API seg_status seg_events_parse(const char* json, size_t len,
                                    seg_events** out);
SEG_API seg_status seg_events_render(const seg_events* events, char** out_json);
SEG_API size_t seg_events_count(const seg_events* events);
// Chronological narrative text; `out_tokens` (optional) receives the chars/4
// estimate of the text.
SEG_API seg_status seg_events_narrate(const seg_events* events, char** out_text,
                                      size_t* out_tokens);
// START/END pairs as a JSON array of {subject, object, start, end, duration,
// open}.
SEG_API seg_status seg_events_intervals(const seg_events* events,
                                        char** out_json);
SEG_API void seg_events_free(seg_events* events);

// ---- temporal scene graph -------------------------------------------------

SEG_API seg_status seg_graph_build(const seg_events* events, seg_graph** out);
SEG_API size_t seg_graph_node_count(const seg_graph* graph);
SEG_API size_t seg_graph_edge_count(const seg_graph* graph);
SEG_API seg_status seg_graph_render_dot(const seg_graph* graph, char** out_dot);
// {"nodes": [{"id", "class", "degree"}], "edges": n}, nodes sorted by id.
SEG_API seg_status seg_graph_summary(const seg_graph* graph, char** out_json);
SEG_API void seg_graph_free(seg_graph* graph);

// ---- query pruning --------------------------------------------------------

typedef struct seg_prune_config {
  double tau;         // lexical relevance threshold in [0, 1]
  int use_stopwords;  // nonzero: drop stopwords before scoring
  size_t max_events;  // 0 means no cap
} seg_prune_config;

SEG_API void seg_prune_config_init(seg_prune_config* cfg);
SEG_API seg_status seg_prune(const seg_graph* graph, const char* query,
                             const seg_prune_config* cfg,
                             seg_prune_result** out);
SEG_API seg_status seg_prune_result_render(const seg_prune_result* result,
                                           char** out_json);
SEG_API seg_prune_mode seg_prune_result_mode(const seg_prune_result* result);
SEG_API double seg_prune_result_compression(const seg_prune_result* result);
// Copies the retrieved events into a new event list.
SEG_API seg_status seg_prune_result_events(const seg_prune_result* result,
                                           seg_events** out);
SEG_API void seg_prune_result_free(seg_prune_result* result);

// `estimator` is "chars/4" (NULL selects it) or "words".
SEG_API seg_status seg_estimate_tokens(const char* text, size_t len,
                                       const char* estimator, size_t* out);

// ---- answering backends ---------------------------------------------------

typedef struct seg_backend_config {
  const char* url;         // base URL for HTTP backends; may be NULL for mock
  double timeout_seconds;  // per request
  int max_retries;
} seg_backend_config;

SEG_API void seg_backend_config_init(seg_backend_config* cfg);
// kind: "mock" | "http". HTTP backends read SEG_API_KEY from the environment.
SEG_API seg_status seg_answerer_create(const char* kind,
                                       const seg_backend_config* cfg,
                                       seg_answerer** out);
// `out_reported_tokens` (optional) receives the backend's input token count
// or -1 when the backend did not report one.
SEG_API seg_status seg_answer(const seg_answerer* answerer, const char* context,
                              const char* question, char** out_answer,
                              int64_t* out_reported_tokens);
SEG_API void seg_answerer_free(seg_answerer* answerer);

// kind: "exact" | "substring" | "http".
SEG_API seg_status seg_judge_create(const char* kind,
                                    const seg_backend_config* cfg,
                                    seg_judge** out);
SEG_API seg_status seg_judge_evaluate(const seg_judge* judge,
                                      const char* predicted, const char* gold,
                                      int* out_correct);
SEG_API void seg_judge_free(seg_judge* judge);

// ---- QA sets ----------------------------------------------------------------

SEG_API seg_status seg_qa_parse(const char* json, size_t len, seg_qa_set** out);
SEG_API seg_status seg_qa_render(const seg_qa_set* qa, char** out_json);
SEG_API size_t seg_qa_count(const seg_qa_set* qa);
SEG_API void seg_qa_free(seg_qa_set* qa);

// ---- synthetic workloads --------------------------------------------------

// The evaluation-sized default scenario for `seed`.
SEG_API seg_status seg_synth_default(uint64_t seed, seg_workload** out);
// A scenario described as JSON (see the README for the schema).
SEG_API seg_status seg_synth_scenario(const char* json, size_t len,
                                      seg_workload** out);
// Borrowed views, valid while the workload lives.
SEG_API const seg_log* seg_workload_log(const seg_workload* w);
SEG_API const seg_events* seg_workload_gold_events(const seg_workload* w);
SEG_API const seg_qa_set* seg_workload_qa(const seg_workload* w);
SEG_API void seg_workload_free(seg_workload* w);

// ---- evaluation -----------------------------------------------------------

typedef struct seg_eval_config {
  double window_seconds;  // short-context window
  seg_prune_config prune;
  double video_end;       // seconds; negative means "last event timestamp"
  const char* estimator;  // NULL selects "chars/4"
  int concurrency;        // in-flight questions
} seg_eval_config;

SEG_API void seg_eval_config_init(seg_eval_config* cfg);
// Runs SHORT_CONTEXT, FULL_LOG and TSG. `config_echo_json` (optional) is a
// flat JSON object of settings copied verbatim into the report.
SEG_API seg_status seg_eval_run(const seg_events* events, const seg_qa_set* qa,
                                const seg_eval_config* cfg,
                                const seg_answerer* answerer,
                                const seg_judge* judge,
                                const char* config_echo_json, seg_report** out);
// format: "md" | "csv" | "json".
SEG_API seg_status seg_report_render(const seg_report* report,
                                     const char* format, char** out);
// Accuracy / average tokens / average compression of one condition
// ("SHORT_CONTEXT", "FULL_LOG", "TSG").
SEG_API seg_status seg_report_condition(const seg_report* report,
                                        const char* condition,
                                        double* out_accuracy,
                                        double* out_avg_tokens,
                                        double* out_avg_compression);
SEG_API void seg_report_free(seg_report* report);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // SEG_SEG_H_
