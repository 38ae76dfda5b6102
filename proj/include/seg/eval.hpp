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

// Evaluation harness: runs a QA set under the short-context, full-log and
// pruned-graph conditions and reports accuracy, token cost and compression.

#ifndef SEG_EVAL_HPP_
#define SEG_EVAL_HPP_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seg/backend.hpp"
#include "seg/events.hpp"
#include "seg/narrative.hpp"
#include "seg/pruner.hpp"
#include "seg/qa.hpp"

namespace seg {

enum class ConditionKind { kShortContext, kFullLog, kTsg };

// "SHORT_CONTEXT" | "FULL_LOG" | "TSG".
const char* ConditionName(ConditionKind kind);
// Table-style label: "Short-context", "Full Log", "TSG".
const char* ConditionLabel(ConditionKind kind);

struct Condition {
  ConditionKind kind = ConditionKind::kTsg;
  double window_seconds = 30;  // short-context only
  PruneConfig prune;           // TSG only

  void Validate() const;
};

struct EvalOptions {
  // End of the video in seconds; the short-context window ends here. Defaults
  // to the last event timestamp.
  std::optional<double> video_end;
  TokenEstimator estimator = TokenEstimator::kCharsPerFour;
  int concurrency = 4;
};

struct QuestionRow {
  size_t qid = 0;
  std::string question;
  QaCategory category = QaCategory::kInteraction;
  std::string gold;
  std::string answer;
  bool correct = false;
  size_t tokens = 0;
  double compression = 0;
  std::string mode;  // prune mode for TSG, "-" otherwise
  size_t context_events = 0;
  std::string error;  // non-empty when the backend or judge failed
};

struct CategoryScore {
  size_t correct = 0;
  size_t total = 0;

  double Accuracy() const {
    return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
  }
};

struct ConditionResult {
  ConditionKind kind = ConditionKind::kTsg;
  std::vector<QuestionRow> rows;  // by qid
  size_t correct = 0;
  double accuracy = 0;
  double avg_tokens = 0;
  double avg_compression = 0;
  std::map<QaCategory, CategoryScore> per_category;
};

// Answers and judges every question under one condition. Questions run on up
// to options.concurrency threads; rows come back ordered by qid. Backend or
// judge failures mark the row incorrect with the error recorded.
ConditionResult RunCondition(const std::vector<InteractionEvent>& events,
                             const std::vector<QaItem>& qa,
                             const Condition& condition, const Answerer& answerer,
                             const Judge& judge, const EvalOptions& options);

struct EvalReport {
  std::vector<std::pair<std::string, std::string>> config;  // echoed settings
  std::vector<ConditionResult> conditions;
};

// The three standard conditions in table order.
std::vector<Condition> StandardConditions(double window_seconds,
                                          const PruneConfig& prune);

EvalReport RunEvaluation(const std::vector<InteractionEvent>& events,
                         const std::vector<QaItem>& qa,
                         const std::vector<Condition>& conditions,
                         const Answerer& answerer, const Judge& judge,
                         const EvalOptions& options,
                         std::vector<std::pair<std::string, std::string>> config);

std::string RenderReportMarkdown(const EvalReport& report);
std::string RenderReportCsv(const EvalReport& report);
std::string RenderReportJson(const EvalReport& report);

}  // namespace seg

#endif  // SEG_EVAL_HPP_
