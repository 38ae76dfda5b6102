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

#include "seg/seg.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "json.hpp"
#include "seg/backend.hpp"
#include "seg/detection.hpp"
#include "seg/error.hpp"
#include "seg/eval.hpp"
#include "seg/events.hpp"
#include "seg/extractor.hpp"
#include "seg/graph.hpp"
#include "seg/narrative.hpp"
#include "seg/pruner.hpp"
#include "seg/qa.hpp"
#include "seg/synth.hpp"

struct seg_log {
  seg::DetectionLog log;
};
struct seg_events {
  std::vector<seg::InteractionEvent> events;
};
struct seg_graph {
  seg::TemporalSceneGraph graph;
};
struct seg_prune_result {
  seg::PruneResult result;
};
struct seg_qa_set {
  std::vector<seg::QaItem> items;
};
struct seg_answerer {
  std::unique_ptr<seg::Answerer> impl;
};
struct seg_judge {
  std::unique_ptr<seg::Judge> impl;
};
struct seg_report {
  seg::EvalReport report;
};
struct seg_workload {
  seg_log log;
  seg_events gold;
  seg_qa_set qa;
};

namespace {

thread_local std::string g_last_error;

seg_status Fail(seg_status status, const std::string& msg) {
  g_last_error = msg;
  return status;
}

template <typename Fn>
seg_status Guard(Fn&& fn) {
  try {
    fn();
    return SEG_OK;
  } catch (const seg::Error& e) {
    switch (e.kind()) {
      case seg::ErrorKind::kInvalidArgument:
        return Fail(SEG_ERR_INVALID_ARGUMENT, e.what());
      case seg::ErrorKind::kData:
        return Fail(SEG_ERR_DATA, e.what());
      case seg::ErrorKind::kBackend:
        return Fail(SEG_ERR_BACKEND, e.what());
      case seg::ErrorKind::kInternal:
        return Fail(SEG_ERR_INTERNAL, e.what());
    }
    return Fail(SEG_ERR_INTERNAL, e.what());
  } catch (const nlohmann::json::exception& e) {
    return Fail(SEG_ERR_DATA, e.what());
  } catch (const std::bad_alloc&) {
    return Fail(SEG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(SEG_ERR_INTERNAL, e.what());
  }
}

void Require(bool cond, const char* what) {
  if (!cond) throw seg::ArgumentError(std::string(what) + " must not be NULL");
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

seg::ExtractionConfig ToCore(const seg_extract_config* cfg) {
  seg::ExtractionConfig out;
  if (cfg != nullptr) {
    out.delta = cfg->delta;
    out.beta = cfg->beta;
    if (cfg->focus_class != nullptr) out.focus_class = cfg->focus_class;
  }
  return out;
}

seg::PruneConfig ToCore(const seg_prune_config* cfg) {
  seg::PruneConfig out;
  if (cfg != nullptr) {
    out.tau = cfg->tau;
    out.use_stopwords = cfg->use_stopwords != 0;
    if (cfg->max_events > 0) out.max_events = cfg->max_events;
  }
  return out;
}

seg::HttpConfig ToCore(const seg_backend_config* cfg) {
  seg::HttpConfig out = seg::HttpConfig::FromEnvironment(
      cfg != nullptr && cfg->url != nullptr ? cfg->url : "");
  if (cfg != nullptr) {
    out.timeout_seconds = cfg->timeout_seconds;
    out.max_retries = cfg->max_retries;
  }
  return out;
}

}  // namespace

extern "C" {

const char* seg_version(void) { return "1.0.0"; }

const char* seg_last_error(void) { return g_last_error.c_str(); }

void seg_string_free(char* s) { std::free(s); }

seg_status seg_log_parse(const char* json, size_t len, seg_log** out) {
  return Guard([&] {
    Require(json != nullptr && out != nullptr, "json/out");
    *out = new seg_log{seg::ParseDetectionLog(std::string_view(json, len))};
  });
}

seg_status seg_log_render(const seg_log* log, char** out_json) {
  return Guard([&] {
    Require(log != nullptr && out_json != nullptr, "log/out_json");
    *out_json = CopyString(seg::RenderDetectionLog(log->log));
  });
}

size_t seg_log_frame_count(const seg_log* log) {
  return log == nullptr ? 0 : log->log.frames.size();
}

double seg_log_end_time(const seg_log* log) {
  return log == nullptr ? 0.0 : log->log.EndTime();
}

void seg_log_free(seg_log* log) { delete log; }

void seg_extract_config_init(seg_extract_config* cfg) {
  if (cfg == nullptr) return;
  const seg::ExtractionConfig d;
  cfg->delta = d.delta;
  cfg->beta = d.beta;
  cfg->focus_class = nullptr;
}

seg_status seg_extract(const seg_log* log, const seg_extract_config* cfg,
                       seg_events** out) {
  return Guard([&] {
    Require(log != nullptr && out != nullptr, "log/out");
    *out = new seg_events{seg::ExtractEvents(log->log, ToCore(cfg))};
  });
}

seg_status seg_events_parse(const char* json, size_t len, seg_events** out) {
  return Guard([&] {
    Require(json != nullptr && out != nullptr, "json/out");
    *out = new seg_events{seg::ParseEventLog(std::string_view(json, len))};
  });
}

seg_status seg_events_render(const seg_events* events, char** out_json) {
  return Guard([&] {
    Require(events != nullptr && out_json != nullptr, "events/out_json");
    *out_json = CopyString(seg::RenderEventLog(events->events));
  });
}

size_t seg_events_count(const seg_events* events) {
  return events == nullptr ? 0 : events->events.size();
}

seg_status seg_events_narrate(const seg_events* events, char** out_text,
                              size_t* out_tokens) {
  return Guard([&] {
    Require(events != nullptr && out_text != nullptr, "events/out_text");
    const seg::Narrative n = seg::Verbalize(events->events);
    *out_text = CopyString(n.Text());
    if (out_tokens != nullptr) *out_tokens = n.estimated_tokens;
  });
}

seg_status seg_events_intervals(const seg_events* events, char** out_json) {
  return Guard([&] {
    Require(events != nullptr && out_json != nullptr, "events/out_json");
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const seg::Interval& iv : seg::PairIntervals(events->events)) {
      arr.push_back({{"subject", iv.subject.Render()},
                     {"object", iv.object.Render()},
                     {"start", iv.start_ts},
                     {"end", iv.end_ts},
                     {"duration", iv.duration},
                     {"open", iv.open}});
    }
    *out_json = CopyString(arr.dump(2) + "\n");
  });
}

void seg_events_free(seg_events* events) { delete events; }

seg_status seg_graph_build(const seg_events* events, seg_graph** out) {
  return Guard([&] {
    Require(events != nullptr && out != nullptr, "events/out");
    *out = new seg_graph{seg::TemporalSceneGraph::Build(events->events)};
  });
}

size_t seg_graph_node_count(const seg_graph* graph) {
  return graph == nullptr ? 0 : graph->graph.nodes().size();
}

size_t seg_graph_edge_count(const seg_graph* graph) {
  return graph == nullptr ? 0 : graph->graph.edges().size();
}

seg_status seg_graph_render_dot(const seg_graph* graph, char** out_dot) {
  return Guard([&] {
    Require(graph != nullptr && out_dot != nullptr, "graph/out_dot");
    *out_dot = CopyString(graph->graph.ToDot());
  });
}

seg_status seg_graph_summary(const seg_graph* graph, char** out_json) {
  return Guard([&] {
    Require(graph != nullptr && out_json != nullptr, "graph/out_json");
    std::vector<const seg::EntityNode*> nodes;
    for (const seg::EntityNode& n : graph->graph.nodes()) nodes.push_back(&n);
    std::sort(nodes.begin(), nodes.end(),
              [](const seg::EntityNode* a, const seg::EntityNode* b) {
                return a->rendered < b->rendered;
              });
    nlohmann::ordered_json doc;
    doc["nodes"] = nlohmann::ordered_json::array();
    for (const seg::EntityNode* n : nodes) {
      doc["nodes"].push_back(
          {{"id", n->rendered}, {"class", n->cls()}, {"degree", n->degree}});
    }
    doc["edges"] = graph->graph.edges().size();
    *out_json = CopyString(doc.dump(2) + "\n");
  });
}

void seg_graph_free(seg_graph* graph) { delete graph; }

void seg_prune_config_init(seg_prune_config* cfg) {
  if (cfg == nullptr) return;
  const seg::PruneConfig d;
  cfg->tau = d.tau;
  cfg->use_stopwords = d.use_stopwords ? 1 : 0;
  cfg->max_events = 0;
}

seg_status seg_prune(const seg_graph* graph, const char* query,
                     const seg_prune_config* cfg, seg_prune_result** out) {
  return Guard([&] {
    Require(graph != nullptr && query != nullptr && out != nullptr,
            "graph/query/out");
    *out = new seg_prune_result{seg::Prune(graph->graph, query, ToCore(cfg))};
  });
}

seg_status seg_prune_result_render(const seg_prune_result* result,
                                   char** out_json) {
  return Guard([&] {
    Require(result != nullptr && out_json != nullptr, "result/out_json");
    *out_json = CopyString(seg::RenderPruneResult(result->result));
  });
}

seg_prune_mode seg_prune_result_mode(const seg_prune_result* result) {
  if (result == nullptr) return SEG_PRUNE_EMPTY;
  switch (result->result.mode) {
    case seg::PruneMode::kAnchor:
      return SEG_PRUNE_ANCHOR;
    case seg::PruneMode::kLexical:
      return SEG_PRUNE_LEXICAL;
    case seg::PruneMode::kEmpty:
      return SEG_PRUNE_EMPTY;
  }
  return SEG_PRUNE_EMPTY;
}

double seg_prune_result_compression(const seg_prune_result* result) {
  return result == nullptr ? 0.0 : result->result.compression;
}

seg_status seg_prune_result_events(const seg_prune_result* result,
                                   seg_events** out) {
  return Guard([&] {
    Require(result != nullptr && out != nullptr, "result/out");
    *out = new seg_events{result->result.events};
  });
}

void seg_prune_result_free(seg_prune_result* result) { delete result; }

seg_status seg_estimate_tokens(const char* text, size_t len,
                               const char* estimator, size_t* out) {
  return Guard([&] {
    Require(text != nullptr && out != nullptr, "text/out");
    const auto est = estimator == nullptr
                         ? seg::TokenEstimator::kCharsPerFour
                         : seg::ParseTokenEstimator(estimator);
    *out = seg::EstimateTokens(std::string_view(text, len), est);
  });
}

void seg_backend_config_init(seg_backend_config* cfg) {
  if (cfg == nullptr) return;
  const seg::HttpConfig d;
  cfg->url = nullptr;
  cfg->timeout_seconds = d.timeout_seconds;
  cfg->max_retries = d.max_retries;
}

seg_status seg_answerer_create(const char* kind, const seg_backend_config* cfg,
                               seg_answerer** out) {
  return Guard([&] {
    Require(kind != nullptr && out != nullptr, "kind/out");
    *out = new seg_answerer{seg::MakeAnswerer(kind, ToCore(cfg))};
  });
}

seg_status seg_answer(const seg_answerer* answerer, const char* context,
                      const char* question, char** out_answer,
                      int64_t* out_reported_tokens) {
  return Guard([&] {
    Require(answerer != nullptr && context != nullptr && question != nullptr &&
                out_answer != nullptr,
            "answerer/context/question/out_answer");
    if (*question == '\0') throw seg::ArgumentError("question must be non-empty");
    const seg::AnswerResponse res = answerer->impl->Answer({context, question});
    *out_answer = CopyString(res.answer);
    if (out_reported_tokens != nullptr) {
      *out_reported_tokens = res.reported_input_tokens
                                 ? static_cast<int64_t>(*res.reported_input_tokens)
                                 : -1;
    }
  });
}

void seg_answerer_free(seg_answerer* answerer) { delete answerer; }

seg_status seg_judge_create(const char* kind, const seg_backend_config* cfg,
                            seg_judge** out) {
  return Guard([&] {
    Require(kind != nullptr && out != nullptr, "kind/out");
    *out = new seg_judge{seg::MakeJudge(kind, ToCore(cfg))};
  });
}

seg_status seg_judge_evaluate(const seg_judge* judge, const char* predicted,
                              const char* gold, int* out_correct) {
  return Guard([&] {
    Require(judge != nullptr && predicted != nullptr && gold != nullptr &&
                out_correct != nullptr,
            "judge/predicted/gold/out_correct");
    *out_correct = judge->impl->Evaluate(predicted, gold).correct ? 1 : 0;
  });
}

void seg_judge_free(seg_judge* judge) { delete judge; }

seg_status seg_qa_parse(const char* json, size_t len, seg_qa_set** out) {
  return Guard([&] {
    Require(json != nullptr && out != nullptr, "json/out");
    *out = new seg_qa_set{seg::ParseQaSet(std::string_view(json, len))};
  });
}

seg_status seg_qa_render(const seg_qa_set* qa, char** out_json) {
  return Guard([&] {
    Require(qa != nullptr && out_json != nullptr, "qa/out_json");
    *out_json = CopyString(seg::RenderQaSet(qa->items));
  });
}

size_t seg_qa_count(const seg_qa_set* qa) {
  return qa == nullptr ? 0 : qa->items.size();
}

void seg_qa_free(seg_qa_set* qa) { delete qa; }

namespace {

seg_workload* MakeWorkload(const seg::ScenarioSpec& spec) {
  seg::SyntheticWorkload w = seg::Generate(spec);
  return new seg_workload{seg_log{std::move(w.log)},
                          seg_events{std::move(w.gold_events)},
                          seg_qa_set{std::move(w.qa)}};
}

}  // namespace

seg_status seg_synth_default(uint64_t seed, seg_workload** out) {
  return Guard([&] {
    Require(out != nullptr, "out");
    *out = MakeWorkload(seg::DefaultWorkloadSpec(seed));
  });
}

seg_status seg_synth_scenario(const char* json, size_t len, seg_workload** out) {
  return Guard([&] {
    Require(json != nullptr && out != nullptr, "json/out");
    *out = MakeWorkload(seg::ParseScenarioSpec(std::string_view(json, len)));
  });
}

const seg_log* seg_workload_log(const seg_workload* w) {
  return w == nullptr ? nullptr : &w->log;
}

const seg_events* seg_workload_gold_events(const seg_workload* w) {
  return w == nullptr ? nullptr : &w->gold;
}

const seg_qa_set* seg_workload_qa(const seg_workload* w) {
  return w == nullptr ? nullptr : &w->qa;
}

void seg_workload_free(seg_workload* w) { delete w; }

void seg_eval_config_init(seg_eval_config* cfg) {
  if (cfg == nullptr) return;
  const seg::EvalOptions d;
  cfg->window_seconds = 30;
  seg_prune_config_init(&cfg->prune);
  cfg->video_end = -1;
  cfg->estimator = nullptr;
  cfg->concurrency = d.concurrency;
}

seg_status seg_eval_run(const seg_events* events, const seg_qa_set* qa,
                        const seg_eval_config* cfg, const seg_answerer* answerer,
                        const seg_judge* judge, const char* config_echo_json,
                        seg_report** out) {
  return Guard([&] {
    Require(events != nullptr && qa != nullptr && answerer != nullptr &&
                judge != nullptr && out != nullptr,
            "events/qa/answerer/judge/out");
    seg_eval_config c;
    seg_eval_config_init(&c);
    if (cfg != nullptr) c = *cfg;

    seg::EvalOptions options;
    if (c.video_end >= 0) options.video_end = c.video_end;
    if (c.estimator != nullptr) options.estimator = seg::ParseTokenEstimator(c.estimator);
    options.concurrency = c.concurrency;

    std::vector<std::pair<std::string, std::string>> echo;
    if (config_echo_json != nullptr) {
      auto doc = nlohmann::ordered_json::parse(config_echo_json);
      if (!doc.is_object()) throw seg::ArgumentError("config echo must be a JSON object");
      for (auto& [k, v] : doc.items()) {
        echo.emplace_back(k, v.is_string() ? v.get<std::string>() : v.dump());
      }
    }
    *out = new seg_report{seg::RunEvaluation(
        events->events, qa->items,
        seg::StandardConditions(c.window_seconds, ToCore(&c.prune)),
        *answerer->impl, *judge->impl, options, std::move(echo))};
  });
}

seg_status seg_report_render(const seg_report* report, const char* format,
                             char** out) {
  return Guard([&] {
    Require(report != nullptr && format != nullptr && out != nullptr,
            "report/format/out");
    const std::string f = format;
    if (f == "md") {
      *out = CopyString(seg::RenderReportMarkdown(report->report));
    } else if (f == "csv") {
      *out = CopyString(seg::RenderReportCsv(report->report));
    } else if (f == "json") {
      *out = CopyString(seg::RenderReportJson(report->report));
    } else {
      throw seg::ArgumentError("unknown report format '" + f + "'");
    }
  });
}

seg_status seg_report_condition(const seg_report* report, const char* condition,
                                double* out_accuracy, double* out_avg_tokens,
                                double* out_avg_compression) {
  return Guard([&] {
    Require(report != nullptr && condition != nullptr, "report/condition");
    for (const seg::ConditionResult& c : report->report.conditions) {
      if (std::strcmp(seg::ConditionName(c.kind), condition) != 0) continue;
      if (out_accuracy != nullptr) *out_accuracy = c.accuracy;
      if (out_avg_tokens != nullptr) *out_avg_tokens = c.avg_tokens;
      if (out_avg_compression != nullptr) *out_avg_compression = c.avg_compression;
      return;
    }
    throw seg::ArgumentError(std::string("no condition '") + condition + "' in report");
  });
}

void seg_report_free(seg_report* report) { delete report; }

}  // extern "C"
