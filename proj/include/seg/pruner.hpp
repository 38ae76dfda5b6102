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

// Query-aware pruning of a temporal scene graph.
//
// A query is grounded on entities it names (by id such as `person-4`, or by
// class such as `cup`). Grounded queries retrieve the 1-hop ego-subgraph of
// the anchors; ungrounded ones fall back to lexical overlap scoring against
// each event's tokens with a relevance threshold tau.

#ifndef SEG_PRUNER_HPP_
#define SEG_PRUNER_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seg/events.hpp"
#include "seg/graph.hpp"

namespace seg {

// Versioned stopword resource shipped with the library.
const std::vector<std::string>& Stopwords();
const char* StopwordListVersion();

struct QueryTokens {
  std::string raw;
  // Lowercased unique tokens in first-occurrence order.
  std::vector<std::string> tokens;
  // Sorted set of tokens minus stopwords (all tokens when stopword removal
  // is off).
  std::vector<std::string> content_tokens;

  bool HasToken(std::string_view t) const;
  bool HasContentToken(std::string_view t) const;
};

// Tokens are maximal runs of [a-z0-9_-] after ASCII lowercasing, with leading
// and trailing hyphens stripped, so `person-4` and `tv_monitor-2` survive
// whole.
QueryTokens Tokenize(std::string_view query, bool use_stopwords = true);

struct PruneConfig {
  double tau = 0.3;
  bool use_stopwords = true;
  std::optional<size_t> max_events;

  void Validate() const;
};

enum class PruneMode { kAnchor, kLexical, kEmpty };
const char* PruneModeName(PruneMode mode);

struct PruneResult {
  std::vector<InteractionEvent> events;  // deduped, (frame, seq) order
  std::vector<EntityId> anchors;         // sorted; empty unless kAnchor
  PruneMode mode = PruneMode::kEmpty;
  double compression = 0;  // 1 - |events| / max(total_events, 1)
  size_t total_events = 0;
};

struct Anchors {
  std::vector<uint32_t> by_id;     // node indices named literally
  std::vector<uint32_t> by_class;  // node indices whose class is a content token

  // Sorted, deduplicated union.
  std::vector<uint32_t> All() const;
};

Anchors FindAnchors(const TemporalSceneGraph& g, const QueryTokens& q);

// {subject id, subject class, object id, object class, "start"|"end"}, sorted
// and deduplicated; at most five tokens.
std::vector<std::string> EventTokens(const EventEdge& e);

// |content_tokens ∩ EventTokens(e)| / |content_tokens|, in [0, 1]. Throws an
// argument error when the query has no content tokens.
double LexicalScore(const QueryTokens& q, const EventEdge& e);

PruneResult Prune(const TemporalSceneGraph& g, std::string_view query,
                  const PruneConfig& cfg);

// {"mode", "anchors", "compression", "total_events", "events"}.
std::string RenderPruneResult(const PruneResult& result);

}  // namespace seg

#endif  // SEG_PRUNER_HPP_
