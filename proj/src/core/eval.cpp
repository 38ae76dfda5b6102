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

#include "seg/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <thread>

#include "json.hpp"
#include "seg/error.hpp"
#include "seg/graph.hpp"

namespace seg {
namespace {

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

std::string MdCell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else if (c == '\n') out += ' ';
    else out.push_back(c);
  }
  return out;
}

const ConditionResult* Find(const EvalReport& r, ConditionKind kind) {
  for (const ConditionResult& c : r.conditions) {
    if (c.kind == kind) return &c;
  }
  return nullptr;
}

}  // namespace

const char* ConditionName(ConditionKind kind) {
  switch (kind) {
    case ConditionKind::kShortContext:
      return "SHORT_CONTEXT";
    case ConditionKind::kFullLog:
      return "FULL_LOG";
    case ConditionKind::kTsg:
      return "TSG";
  }
  return "TSG";
}

const char* ConditionLabel(ConditionKind kind) {
  switch (kind) {
    case ConditionKind::kShortContext:
      return "Short-context";
    case ConditionKind::kFullLog:
      return "Full Log";
    case ConditionKind::kTsg:
      return "TSG";
  }
  return "TSG";
}

void Condition::Validate() const {
  if (!(window_seconds > 0)) throw ArgumentError("window must be > 0 seconds");
  prune.Validate();
}

std::vector<Condition> StandardConditions(double window_seconds,
                                          const PruneConfig& prune) {
  return {{ConditionKind::kShortContext, window_seconds, prune},
          {ConditionKind::kFullLog, window_seconds, prune},
          {ConditionKind::kTsg, window_seconds, prune}};
}

ConditionResult RunCondition(const std::vector<InteractionEvent>& events,
                             const std::vector<QaItem>& qa,
                             const Condition& condition, const Answerer& answerer,
                             const Judge& judge, const EvalOptions& options) {
  condition.Validate();
  if (options.concurrency < 1) throw ArgumentError("concurrency must be >= 1");

  ConditionResult result;
  result.kind = condition.kind;
  result.rows.resize(qa.size());

  // Shared contexts for the question-independent conditions.
  std::string shared_context;
  size_t shared_events = 0;
  TemporalSceneGraph graph;
  if (condition.kind == ConditionKind::kShortContext) {
    double t_max = options.video_end.value_or(0.0);
    if (!options.video_end) {
      for (const InteractionEvent& ev : events) t_max = std::max(t_max, ev.timestamp);
    }
    const double cutoff = t_max - condition.window_seconds;
    std::vector<InteractionEvent> recent;
    for (const InteractionEvent& ev : events) {
      if (ev.timestamp >= cutoff) recent.push_back(ev);
    }
    shared_context = Verbalize(recent).Text();
    shared_events = recent.size();
  } else if (condition.kind == ConditionKind::kFullLog) {
    shared_context = Verbalize(events).Text();
    shared_events = events.size();
  } else {
    graph = TemporalSceneGraph::Build(events);
  }

  auto run_one = [&](size_t i) {
    const QaItem& item = qa[i];
    QuestionRow& row = result.rows[i];
    row.qid = i;
    row.question = item.question;
    row.category = item.category;
    row.gold = item.answer;
    row.mode = "-";

    AnswerRequest req;
    req.question = item.question;
    if (condition.kind == ConditionKind::kTsg) {
      PruneResult pruned = Prune(graph, item.question, condition.prune);
      req.context = Verbalize(pruned.events).Text();
      row.compression = pruned.compression;
      row.mode = PruneModeName(pruned.mode);
      row.context_events = pruned.events.size();
    } else {
      req.context = shared_context;
      row.context_events = shared_events;
    }
    try {
      AnswerResponse res = answerer.Answer(req);
      row.answer = res.answer;
      row.tokens = res.reported_input_tokens.value_or(
          EstimateTokens(req.context + req.question, options.estimator));
      row.correct = judge.Evaluate(res.answer, item.answer).correct;
    } catch (const std::exception& e) {
      row.tokens = EstimateTokens(req.context + req.question, options.estimator);
      row.correct = false;
      row.error = "q" + std::to_string(i) + ": " + e.what();
    }
  };

  const size_t workers =
      std::min(qa.size(), static_cast<size_t>(options.concurrency));
  if (workers <= 1) {
    for (size_t i = 0; i < qa.size(); ++i) run_one(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (size_t i = next++; i < qa.size(); i = next++) run_one(i);
      });
    }
    for (std::thread& t : pool) t.join();
  }

  double tokens = 0;
  double compression = 0;
  for (const QuestionRow& row : result.rows) {
    result.correct += row.correct ? 1 : 0;
    tokens += static_cast<double>(row.tokens);
    compression += row.compression;
    CategoryScore& cs = result.per_category[row.category];
    ++cs.total;
    cs.correct += row.correct ? 1 : 0;
  }
  if (!qa.empty()) {
    const auto n = static_cast<double>(qa.size());
    result.accuracy = static_cast<double>(result.correct) / n;
    result.avg_tokens = tokens / n;
    result.avg_compression = compression / n;
  }
  return result;
}

EvalReport RunEvaluation(const std::vector<InteractionEvent>& events,
                         const std::vector<QaItem>& qa,
                         const std::vector<Condition>& conditions,
                         const Answerer& answerer, const Judge& judge,
                         const EvalOptions& options,
                         std::vector<std::pair<std::string, std::string>> config) {
  EvalReport report;
  report.config = std::move(config);
  for (const Condition& c : conditions) {
    report.conditions.push_back(
        RunCondition(events, qa, c, answerer, judge, options));
  }
  return report;
}

std::string RenderReportMarkdown(const EvalReport& report) {
  std::string md = "# Evaluation report\n\n## Configuration\n\n| key | value |\n|---|---|\n";
  for (const auto& [k, v] : report.config) md += "| " + MdCell(k) + " | " + MdCell(v) + " |\n";

  const ConditionResult* full = Find(report, ConditionKind::kFullLog);
  md += "\n## Main results\n\n"
        "| Method | Tokens | Relative cost | Accuracy | Compression |\n"
        "|---|---:|---:|---:|---:|\n";
  for (const ConditionResult& c : report.conditions) {
    std::string rel = "-";
    if (full != nullptr && full->avg_tokens > 0) {
      rel = Fixed(c.avg_tokens / full->avg_tokens, 3) + "x";
    }
    md += std::string("| ") + ConditionLabel(c.kind) + " | " + Fixed(c.avg_tokens, 1) +
          " | " + rel + " | " + Fixed(100 * c.accuracy, 1) + "% | " +
          Fixed(100 * c.avg_compression, 1) + "% |\n";
  }

  md += "\n## Accuracy by category\n\n| Category |";
  for (const ConditionResult& c : report.conditions) md += std::string(" ") + ConditionLabel(c.kind) + " |";
  md += "\n|---|";
  for (size_t i = 0; i < report.conditions.size(); ++i) md += "---:|";
  md += "\n";
  for (QaCategory cat : kAllCategories) {
    md += std::string("| ") + QaCategoryName(cat) + " |";
    for (const ConditionResult& c : report.conditions) {
      auto it = c.per_category.find(cat);
      const CategoryScore cs = it == c.per_category.end() ? CategoryScore{} : it->second;
      md += " " + Fixed(100 * cs.Accuracy(), 1) + "% (" + std::to_string(cs.correct) +
            "/" + std::to_string(cs.total) + ") |";
    }
    md += "\n";
  }

  md += "\n## Questions\n\n"
        "| condition | qid | category | question | gold | answer | correct | tokens | compression | mode | error |\n"
        "|---|---:|---|---|---|---|---|---:|---:|---|---|\n";
  for (const ConditionResult& c : report.conditions) {
    for (const QuestionRow& r : c.rows) {
      md += std::string("| ") + ConditionName(c.kind) + " | " + std::to_string(r.qid) +
            " | " + QaCategoryName(r.category) + " | " + MdCell(r.question) + " | " +
            MdCell(r.gold) + " | " + MdCell(r.answer) + " | " +
            (r.correct ? "yes" : "no") + " | " + std::to_string(r.tokens) + " | " +
            Fixed(r.compression, 4) + " | " + r.mode + " | " + MdCell(r.error) + " |\n";
    }
  }
  return md;
}

std::string RenderReportCsv(const EvalReport& report) {
  std::string csv =
      "condition,qid,category,question,gold,answer,correct,tokens,compression,mode,"
      "context_events,error\n";
  for (const ConditionResult& c : report.conditions) {
    for (const QuestionRow& r : c.rows) {
      csv += std::string(ConditionName(c.kind)) + "," + std::to_string(r.qid) + "," +
             QaCategoryName(r.category) + "," + CsvField(r.question) + "," +
             CsvField(r.gold) + "," + CsvField(r.answer) + "," +
             (r.correct ? "1" : "0") + "," + std::to_string(r.tokens) + "," +
             Fixed(r.compression, 6) + "," + r.mode + "," +
             std::to_string(r.context_events) + "," + CsvField(r.error) + "\n";
    }
  }
  return csv;
}

std::string RenderReportJson(const EvalReport& report) {
  using nlohmann::ordered_json;
  ordered_json doc;
  ordered_json config = ordered_json::object();
  for (const auto& [k, v] : report.config) config[k] = v;
  doc["config"] = config;
  ordered_json conds = ordered_json::array();
  for (const ConditionResult& c : report.conditions) {
    ordered_json j;
    j["condition"] = ConditionName(c.kind);
    j["questions"] = c.rows.size();
    j["correct"] = c.correct;
    j["accuracy"] = c.accuracy;
    j["avg_tokens"] = c.avg_tokens;
    j["avg_compression"] = c.avg_compression;
    ordered_json cats = ordered_json::object();
    for (QaCategory cat : kAllCategories) {
      auto it = c.per_category.find(cat);
      const CategoryScore cs = it == c.per_category.end() ? CategoryScore{} : it->second;
      cats[QaCategoryName(cat)] = {
          {"correct", cs.correct}, {"total", cs.total}, {"accuracy", cs.Accuracy()}};
    }
    j["per_category"] = cats;
    ordered_json rows = ordered_json::array();
    for (const QuestionRow& r : c.rows) {
      rows.push_back({{"qid", r.qid},
                      {"category", QaCategoryName(r.category)},
                      {"question", r.question},
                      {"gold", r.gold},
                      {"answer", r.answer},
                      {"correct", r.correct},
                      {"tokens", r.tokens},
                      {"compression", r.compression},
                      {"mode", r.mode},
                      {"context_events", r.context_events},
                      {"error", r.error}});
    }
    j["rows"] = rows;
    conds.push_back(j);
  }
  doc["conditions"] = conds;
  return doc.dump(2) + "\n";
}

}  // namespace seg
