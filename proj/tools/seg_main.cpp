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

// `seg` command-line front end. Every stage reads and writes plain files so
// stages can be run one at a time or chained by `seg eval`.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "seg/seg.h"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kBackend = 3 };

struct Failure {
  int code;
  std::string message;
};

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using LogPtr = std::unique_ptr<seg_log, Deleter<seg_log, seg_log_free>>;
using EventsPtr = std::unique_ptr<seg_events, Deleter<seg_events, seg_events_free>>;
using GraphPtr = std::unique_ptr<seg_graph, Deleter<seg_graph, seg_graph_free>>;
using PrunePtr = std::unique_ptr<seg_prune_result,
                                 Deleter<seg_prune_result, seg_prune_result_free>>;
using QaPtr = std::unique_ptr<seg_qa_set, Deleter<seg_qa_set, seg_qa_free>>;
using AnswererPtr =
    std::unique_ptr<seg_answerer, Deleter<seg_answerer, seg_answerer_free>>;
using JudgePtr = std::unique_ptr<seg_judge, Deleter<seg_judge, seg_judge_free>>;
using ReportPtr = std::unique_ptr<seg_report, Deleter<seg_report, seg_report_free>>;
using WorkloadPtr =
    std::unique_ptr<seg_workload, Deleter<seg_workload, seg_workload_free>>;

void Check(seg_status status) {
  switch (status) {
    case SEG_OK:
      return;
    case SEG_ERR_INVALID_ARGUMENT:
      throw Failure{kUsage, seg_last_error()};
    case SEG_ERR_BACKEND:
      throw Failure{kBackend, seg_last_error()};
    default:
      throw Failure{kData, seg_last_error()};
  }
}

std::string TakeString(char* s) {
  std::string out(s == nullptr ? "" : s);
  seg_string_free(s);
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kData, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kData, "cannot write " + path};
  out << content;
  if (!out) throw Failure{kData, "failed writing " + path};
}

// Writes to `path`, or to stdout when the path is empty and `--json` is off.
void Emit(const std::string& path, const std::string& content, bool json_mode) {
  if (!path.empty()) {
    WriteFile(path, content);
  } else if (!json_mode) {
    std::cout << content;
  }
}

std::string Num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

LogPtr LoadLog(const std::string& path) {
  const std::string text = ReadFile(path);
  seg_log* log = nullptr;
  Check(seg_log_parse(text.data(), text.size(), &log));
  return LogPtr(log);
}

EventsPtr LoadEvents(const std::string& path) {
  const std::string text = ReadFile(path);
  seg_events* ev = nullptr;
  Check(seg_events_parse(text.data(), text.size(), &ev));
  return EventsPtr(ev);
}

QaPtr LoadQa(const std::string& path) {
  const std::string text = ReadFile(path);
  seg_qa_set* qa = nullptr;
  Check(seg_qa_parse(text.data(), text.size(), &qa));
  return QaPtr(qa);
}

struct ExtractFlags {
  double delta = 100;
  int beta = 5;
  std::string focus_class = "person";

  void Add(CLI::App* app) {
    app->add_option("--delta", delta, "Interaction distance in pixels (inclusive)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--beta", beta, "Apart/absent frames tolerated before END")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app->add_option("--focus-class", focus_class,
                    "Class that must take part in every interaction")
        ->capture_default_str();
  }

  seg_extract_config Config() const {
    seg_extract_config cfg;
    seg_extract_config_init(&cfg);
    cfg.delta = delta;
    cfg.beta = beta;
    cfg.focus_class = focus_class.c_str();
    return cfg;
  }
};

struct PruneFlags {
  double tau = 0.3;
  bool no_stopwords = false;
  size_t max_events = 0;

  void Add(CLI::App* app) {
    app->add_option("--tau", tau, "Lexical relevance threshold in [0, 1]")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    app->add_flag("--no-stopwords", no_stopwords,
                  "Score against every query token, stopwords included");
    app->add_option("--max-events", max_events,
                    "Cap on retrieved events (0 = no cap)")
        ->capture_default_str();
  }

  seg_prune_config Config() const {
    seg_prune_config cfg;
    seg_prune_config_init(&cfg);
    cfg.tau = tau;
    cfg.use_stopwords = no_stopwords ? 0 : 1;
    cfg.max_events = max_events;
    return cfg;
  }
};

struct BackendFlags {
  std::string backend = "mock";
  std::string url;
  double timeout = 60;
  int retries = 3;

  void Add(CLI::App* app) {
    app->add_option("--backend", backend, "Answering backend")
        ->check(CLI::IsMember({"mock", "http"}))
        ->capture_default_str();
    app->add_option("--backend-url", url, "Base URL of the HTTP backend");
    app->add_option("--request-timeout", timeout, "Per-request timeout in seconds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--retries", retries, "Retries after a failed request")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
  }

  seg_backend_config Config() const {
    seg_backend_config cfg;
    seg_backend_config_init(&cfg);
    cfg.url = url.empty() ? nullptr : url.c_str();
    cfg.timeout_seconds = timeout;
    cfg.max_retries = retries;
    return cfg;
  }

  void Validate(const std::string& judge = "") const {
    if ((backend == "http" || judge == "http") && url.empty()) {
      throw Failure{kUsage, "--backend-url is required for HTTP backends"};
    }
  }
};

GraphPtr BuildGraph(const seg_events* events) {
  seg_graph* g = nullptr;
  Check(seg_graph_build(events, &g));
  return GraphPtr(g);
}

PrunePtr RunPrune(const seg_graph* g, const std::string& query,
                  const PruneFlags& flags) {
  const seg_prune_config cfg = flags.Config();
  seg_prune_result* r = nullptr;
  Check(seg_prune(g, query.c_str(), &cfg, &r));
  return PrunePtr(r);
}

// Events narrowed to a query when one is given.
EventsPtr SelectEvents(EventsPtr events, const std::string& query,
                       const PruneFlags& flags) {
  if (query.empty()) return events;
  GraphPtr g = BuildGraph(events.get());
  PrunePtr r = RunPrune(g.get(), query, flags);
  seg_events* out = nullptr;
  Check(seg_prune_result_events(r.get(), &out));
  return EventsPtr(out);
}

std::string Narrate(const seg_events* events, size_t* tokens) {
  char* text = nullptr;
  Check(seg_events_narrate(events, &text, tokens));
  return TakeString(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic event graph: detections -> events -> graph -> pruned "
               "narrative -> answers"};
  app.require_subcommand(1);
  bool json_mode = false;

  auto add_json = [&json_mode](CLI::App* sub) {
    sub->add_flag("--json", json_mode, "Machine-readable JSON on stdout");
  };

  // extract
  std::string in_path, out_path, events_path, qa_path, query, question,
      out_dir = ".", scenario_path, estimator = "chars/4", judge_kind = "exact",
      context_mode = "tsg";
  ExtractFlags extract_flags;
  PruneFlags prune_flags;
  BackendFlags backend_flags;
  double window = 30;
  double video_end = -1;
  int concurrency = 4;
  std::optional<uint64_t> seed;

  CLI::App* extract = app.add_subcommand("extract", "Detection log -> event log");
  extract->add_option("--in", in_path, "Detection-log JSON")->required();
  extract->add_option("--out", out_path, "Event-log JSON (default: stdout)");
  extract_flags.Add(extract);
  add_json(extract);

  CLI::App* graph = app.add_subcommand("graph", "Summarize the temporal scene graph");
  graph->add_option("--events", events_path, "Event-log JSON")->required();
  graph->add_option("--out", out_path, "Write the summary JSON here");
  add_json(graph);

  CLI::App* prune = app.add_subcommand("prune", "Query-aware subgraph retrieval");
  prune->add_option("--events", events_path, "Event-log JSON")->required();
  prune->add_option("--query", query, "Natural-language query")->required();
  prune->add_option("--out", out_path, "Write the prune result JSON here");
  prune_flags.Add(prune);
  add_json(prune);

  CLI::App* narrate = app.add_subcommand("narrate", "Events -> chronological narrative");
  narrate->add_option("--events", events_path, "Event-log JSON")->required();
  narrate->add_option("--query", query, "Narrate only the events retrieved for this query");
  narrate->add_option("--out", out_path, "Narrative text file (default: stdout)");
  prune_flags.Add(narrate);
  add_json(narrate);

  CLI::App* answer = app.add_subcommand("answer", "Answer one question over an event log");
  answer->add_option("--events", events_path, "Event-log JSON")->required();
  answer->add_option("--question", question, "Question text")->required();
  answer->add_option("--context", context_mode, "Context given to the backend")
      ->check(CLI::IsMember({"tsg", "full"}))
      ->capture_default_str();
  prune_flags.Add(answer);
  backend_flags.Add(answer);
  add_json(answer);

  CLI::App* eval = app.add_subcommand(
      "eval", "Run SHORT_CONTEXT / FULL_LOG / TSG over a QA set and write reports");
  eval->add_option("--events", events_path, "Event-log JSON");
  eval->add_option("--in", in_path,
                   "Detection-log JSON (extracted when --events is absent; "
                   "sets the video end)");
  eval->add_option("--qa", qa_path, "QA-set JSON");
  eval->add_option("--seed", seed,
                   "Evaluate the synthetic workload for this seed when no inputs "
                   "are given");
  eval->add_option("--out-dir", out_dir, "Directory for report.{md,csv,json}")
      ->capture_default_str();
  eval->add_option("--window", window, "Short-context window in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  eval->add_option("--video-end", video_end,
                   "Video end in seconds (default: log end or last event)");
  eval->add_option("--judge", judge_kind, "Answer judge")
      ->check(CLI::IsMember({"exact", "substring", "http"}))
      ->capture_default_str();
  eval->add_option("--estimator", estimator, "Token estimator")
      ->check(CLI::IsMember({"chars/4", "words"}))
      ->capture_default_str();
  eval->add_option("--concurrency", concurrency, "Questions in flight")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  extract_flags.Add(eval);
  prune_flags.Add(eval);
  backend_flags.Add(eval);
  add_json(eval);

  CLI::App* synth = app.add_subcommand(
      "synth", "Write a synthetic detection log, gold events and QA set");
  synth->add_option("--seed", seed, "Seed of the default workload");
  synth->add_option("--scenario", scenario_path, "Scenario JSON instead of the default");
  synth->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
  add_json(synth);

  CLI::App* dot = app.add_subcommand("export-dot", "Graph (optionally pruned) as DOT");
  dot->add_option("--events", events_path, "Event-log JSON")->required();
  dot->add_option("--query", query, "Export only the subgraph retrieved for this query");
  dot->add_option("--out", out_path, "DOT file (default: stdout)");
  prune_flags.Add(dot);
  add_json(dot);

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

  nlohmann::ordered_json summary;
  summary["status"] = "ok";
  try {
    if (extract->parsed()) {
      LogPtr log = LoadLog(in_path);
      const seg_extract_config cfg = extract_flags.Config();
      seg_events* ev = nullptr;
      Check(seg_extract(log.get(), &cfg, &ev));
      EventsPtr events(ev);
      char* text = nullptr;
      Check(seg_events_render(events.get(), &text));
      Emit(out_path, TakeString(text), json_mode);
      summary["frames"] = seg_log_frame_count(log.get());
      summary["events"] = seg_events_count(events.get());
      if (!out_path.empty()) summary["out"] = out_path;
    } else if (graph->parsed()) {
      EventsPtr events = LoadEvents(events_path);
      GraphPtr g = BuildGraph(events.get());
      char* text = nullptr;
      Check(seg_graph_summary(g.get(), &text));
      const std::string s = TakeString(text);
      if (!out_path.empty()) WriteFile(out_path, s);
      if (json_mode) {
        summary["graph"] = nlohmann::ordered_json::parse(s);
      } else {
        std::cout << seg_graph_node_count(g.get()) << " nodes, "
                  << seg_graph_edge_count(g.get()) << " edges\n";
        for (const auto& n : nlohmann::json::parse(s)["nodes"]) {
          std::cout << "  " << n["id"].get<std::string>() << "  degree "
                    << n["degree"].get<size_t>() << "\n";
        }
      }
    } else if (prune->parsed()) {
      EventsPtr events = LoadEvents(events_path);
      GraphPtr g = BuildGraph(events.get());
      PrunePtr r = RunPrune(g.get(), query, prune_flags);
      char* text = nullptr;
      Check(seg_prune_result_render(r.get(), &text));
      const std::string s = TakeString(text);
      if (!out_path.empty()) WriteFile(out_path, s);
      if (json_mode) {
        summary["result"] = nlohmann::ordered_json::parse(s);
      } else if (out_path.empty()) {
        std::cout << s;
      }
    } else if (narrate->parsed()) {
      EventsPtr events = SelectEvents(LoadEvents(events_path), query, prune_flags);
      size_t tokens = 0;
      const std::string text = Narrate(events.get(), &tokens);
      Emit(out_path, text, json_mode);
      char* iv = nullptr;
      Check(seg_events_intervals(events.get(), &iv));
      summary["events"] = seg_events_count(events.get());
      summary["estimated_tokens"] = tokens;
      summary["estimator"] = "chars/4";
      summary["intervals"] = nlohmann::ordered_json::parse(TakeString(iv));
      if (out_path.empty()) summary["narrative"] = text;
    } else if (answer->parsed()) {
      backend_flags.Validate();
      EventsPtr events = LoadEvents(events_path);
      const size_t total = seg_events_count(events.get());
      if (context_mode == "tsg") {
        events = SelectEvents(std::move(events), question, prune_flags);
      }
      size_t est = 0;
      const std::string context = Narrate(events.get(), &est);
      const seg_backend_config bcfg = backend_flags.Config();
      seg_answerer* a = nullptr;
      Check(seg_answerer_create(backend_flags.backend.c_str(), &bcfg, &a));
      AnswererPtr answerer(a);
      char* ans = nullptr;
      int64_t reported = -1;
      Check(seg_answer(answerer.get(), context.c_str(), question.c_str(), &ans,
                       &reported));
      const std::string answer_text = TakeString(ans);
      size_t tokens = 0;
      const std::string prompt = context + question;
      Check(seg_estimate_tokens(prompt.data(), prompt.size(), "chars/4", &tokens));
      summary["answer"] = answer_text;
      summary["context_events"] = seg_events_count(events.get());
      summary["total_events"] = total;
      summary["tokens"] = reported >= 0 ? static_cast<size_t>(reported) : tokens;
      summary["estimated_tokens"] = tokens;
      summary["estimator"] = "chars/4";
      if (!json_mode) std::cout << answer_text << "\n";
    } else if (eval->parsed()) {
      backend_flags.Validate(judge_kind);
      EventsPtr events;
      QaPtr qa_owned;
      WorkloadPtr workload;
      const seg_qa_set* qa = nullptr;
      double end_time = video_end;
      const seg_extract_config xcfg = extract_flags.Config();

      if (events_path.empty() && in_path.empty()) {
        if (!seed) {
          throw Failure{kUsage, "eval needs --events/--in with --qa, or --seed"};
        }
        seg_workload* w = nullptr;
        Check(seg_synth_default(*seed, &w));
        workload.reset(w);
        seg_events* ev = nullptr;
        Check(seg_extract(seg_workload_log(w), &xcfg, &ev));
        events.reset(ev);
        qa = seg_workload_qa(w);
        if (end_time < 0) end_time = seg_log_end_time(seg_workload_log(w));
      } else {
        if (qa_path.empty()) throw Failure{kUsage, "--qa is required with --events/--in"};
        LogPtr log;
        if (!in_path.empty()) {
          log = LoadLog(in_path);
          if (end_time < 0) end_time = seg_log_end_time(log.get());
        }
        if (!events_path.empty()) {
          events = LoadEvents(events_path);
        } else {
          seg_events* ev = nullptr;
          Check(seg_extract(log.get(), &xcfg, &ev));
          events.reset(ev);
        }
        qa_owned = LoadQa(qa_path);
        qa = qa_owned.get();
      }

      const seg_backend_config bcfg = backend_flags.Config();
      seg_answerer* a = nullptr;
      Check(seg_answerer_create(backend_flags.backend.c_str(), &bcfg, &a));
      AnswererPtr answerer(a);
      seg_judge* j = nullptr;
      Check(seg_judge_create(judge_kind.c_str(), &bcfg, &j));
      JudgePtr judge(j);

      seg_eval_config ecfg;
      seg_eval_config_init(&ecfg);
      ecfg.window_seconds = window;
      ecfg.prune = prune_flags.Config();
      ecfg.video_end = end_time;
      ecfg.estimator = estimator.c_str();
      ecfg.concurrency = concurrency;

      nlohmann::ordered_json echo;
      echo["delta"] = Num(extract_flags.delta);
      echo["beta"] = std::to_string(extract_flags.beta);
      echo["focus_class"] = extract_flags.focus_class;
      echo["tau"] = Num(prune_flags.tau);
      echo["stopwords"] = prune_flags.no_stopwords ? "off" : "on";
      echo["max_events"] = prune_flags.max_events == 0
                               ? std::string("none")
                               : std::to_string(prune_flags.max_events);
      echo["window_seconds"] = Num(window);
      echo["video_end"] = end_time < 0 ? std::string("last event") : Num(end_time);
      echo["estimator"] = estimator;
      echo["backend"] = backend_flags.backend;
      echo["judge"] = judge_kind;
      echo["questions"] = std::to_string(seg_qa_count(qa));
      echo["events"] = std::to_string(seg_events_count(events.get()));

      seg_report* rep = nullptr;
      Check(seg_eval_run(events.get(), qa, &ecfg, answerer.get(), judge.get(),
                         echo.dump().c_str(), &rep));
      ReportPtr report(rep);

      std::filesystem::create_directories(out_dir);
      nlohmann::ordered_json outputs = nlohmann::ordered_json::array();
      for (const char* fmt : {"md", "csv", "json"}) {
        char* text = nullptr;
        Check(seg_report_render(report.get(), fmt, &text));
        const std::string path =
            (std::filesystem::path(out_dir) / (std::string("report.") + fmt)).string();
        WriteFile(path, TakeString(text));
        outputs.push_back(path);
      }
      summary["outputs"] = outputs;
      if (seed) summary["seed"] = *seed;
      nlohmann::ordered_json conds;
      for (const char* c : {"SHORT_CONTEXT", "FULL_LOG", "TSG"}) {
        double acc = 0, tok = 0, comp = 0;
        Check(seg_report_condition(report.get(), c, &acc, &tok, &comp));
        conds[c] = {{"accuracy", acc}, {"avg_tokens", tok}, {"avg_compression", comp}};
        if (!json_mode) {
          std::printf("%-14s accuracy %6.1f%%  avg tokens %9.1f  compression %5.1f%%\n",
                      c, 100 * acc, tok, 100 * comp);
        }
      }
      summary["conditions"] = conds;
    } else if (synth->parsed()) {
      seg_workload* w = nullptr;
      if (!scenario_path.empty()) {
        const std::string text = ReadFile(scenario_path);
        Check(seg_synth_scenario(text.data(), text.size(), &w));
      } else {
        Check(seg_synth_default(seed.value_or(0), &w));
      }
      WorkloadPtr workload(w);
      std::filesystem::create_directories(out_dir);
      const std::filesystem::path dir(out_dir);
      char* text = nullptr;
      Check(seg_log_render(seg_workload_log(w), &text));
      WriteFile((dir / "detections.json").string(), TakeString(text));
      Check(seg_events_render(seg_workload_gold_events(w), &text));
      WriteFile((dir / "gold_events.json").string(), TakeString(text));
      Check(seg_qa_render(seg_workload_qa(w), &text));
      WriteFile((dir / "qa.json").string(), TakeString(text));
      summary["frames"] = seg_log_frame_count(seg_workload_log(w));
      summary["gold_events"] = seg_events_count(seg_workload_gold_events(w));
      summary["questions"] = seg_qa_count(seg_workload_qa(w));
      summary["out_dir"] = out_dir;
      if (!json_mode) {
        std::cout << "wrote detections.json, gold_events.json, qa.json to "
                  << out_dir << "\n";
      }
    } else if (dot->parsed()) {
      EventsPtr events = SelectEvents(LoadEvents(events_path), query, prune_flags);
      GraphPtr g = BuildGraph(events.get());
      char* text = nullptr;
      Check(seg_graph_render_dot(g.get(), &text));
      const std::string s = TakeString(text);
      Emit(out_path, s, json_mode);
      summary["nodes"] = seg_graph_node_count(g.get());
      summary["edges"] = seg_graph_edge_count(g.get());
      if (out_path.empty()) summary["dot"] = s;
    }
  } catch (const Failure& f) {
    std::cerr << "seg: " << f.message << "\n";
    if (json_mode) {
      std::cout << nlohmann::ordered_json{{"status", "error"},
                                          {"code", f.code},
                                          {"message", f.message}}
                       .dump()
                << "\n";
    }
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "seg: " << e.what() << "\n";
    return kData;
  }

  if (json_mode) std::cout << summary.dump(2) << "\n";
  return kOk;
}
