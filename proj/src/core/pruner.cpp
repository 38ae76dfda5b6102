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

#include "seg/pruner.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <unordered_set>

#include "json.hpp"
#include "seg/error.hpp"

namespace seg {
namespace {

#include "stopwords_data.inc"

bool IsTokenChar(unsigned char c) {
  return std::isalnum(c) || c == '-' || c == '_';
}

bool SortedContains(const std::vector<std::string>& sorted, std::string_view t) {
  return std::binary_search(sorted.begin(), sorted.end(), t,
                            [](std::string_view a, std::string_view b) { return a < b; });
}

struct EventHash {
  EventKind kind;
  uint32_t from;
  uint32_t to;
  int64_t frame;

  bool operator==(const EventHash&) const = default;
};

struct EventHashHasher {
  size_t operator()(const EventHash& h) const noexcept {
    size_t x = std::hash<int64_t>()(h.frame);
    x ^= (static_cast<size_t>(h.from) * 0x9e3779b97f4a7c15ULL) + (x << 6) + (x >> 2);
    x ^= (static_cast<size_t>(h.to) * 0xc2b2ae3d27d4eb4fULL) + (x << 6) + (x >> 2);
    return x ^ static_cast<size_t>(h.kind);
  }
};

// Drops later edges whose (kind, subject, object, frame) matches an earlier
// one. `indices` must be chronological.
std::vector<uint32_t> Dedupe(const TemporalSceneGraph& g,
                             const std::vector<uint32_t>& indices) {
  std::unordered_set<EventHash, EventHashHasher> seen;
  seen.reserve(indices.size());
  std::vector<uint32_t> out;
  out.reserve(indices.size());
  for (uint32_t i : indices) {
    const EventEdge& e = g.edges()[i];
    if (seen.insert({e.kind, e.from_node, e.to_node, e.frame}).second) {
      out.push_back(i);
    }
  }
  return out;
}

// Up to five distinct tokens of an edge, as views into graph-owned strings.
size_t EdgeTokenViews(const TemporalSceneGraph& g, const EventEdge& e,
                      std::array<std::string_view, 5>& out) {
  out = {g.nodes()[e.from_node].rendered, e.from.label,
         g.nodes()[e.to_node].rendered, e.to.label,
         e.kind == EventKind::kStart ? "start" : "end"};
  std::sort(out.begin(), out.end());
  return static_cast<size_t>(std::unique(out.begin(), out.end()) - out.begin());
}

double ScoreEdge(const TemporalSceneGraph& g, const QueryTokens& q,
                 const EventEdge& e) {
  std::array<std::string_view, 5> toks;
  const size_t n = EdgeTokenViews(g, e, toks);
  size_t hits = 0;
  for (size_t i = 0; i < n; ++i) hits += q.HasContentToken(toks[i]) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(q.content_tokens.size());
}

}  // namespace

const std::vector<std::string>& Stopwords() {
  static const std::vector<std::string> kWords = [] {
    std::vector<std::string> words;
    size_t pos = 0;
    while (pos < kStopwordsText.size()) {
      size_t end = kStopwordsText.find('\n', pos);
      if (end == std::string_view::npos) end = kStopwordsText.size();
      std::string_view line = kStopwordsText.substr(pos, end - pos);
      while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
        line.remove_suffix(1);
      }
      if (!line.empty()) words.emplace_back(line);
      pos = end + 1;
    }
    std::sort(words.begin(), words.end());
    return words;
  }();
  return kWords;
}

const char* StopwordListVersion() { return "stopwords_v1"; }

bool QueryTokens::HasToken(std::string_view t) const {
  return std::find(tokens.begin(), tokens.end(), t) != tokens.end();
}

bool QueryTokens::HasContentToken(std::string_view t) const {
  return SortedContains(content_tokens, t);
}

QueryTokens Tokenize(std::string_view query, bool use_stopwords) {
  QueryTokens q;
  q.raw = std::string(query);
  std::string current;
  auto finish = [&] {
    size_t b = current.find_first_not_of('-');
    size_t e = current.find_last_not_of('-');
    if (b != std::string::npos) {
      std::string tok = current.substr(b, e - b + 1);
      if (!q.HasToken(tok)) q.tokens.push_back(std::move(tok));
    }
    current.clear();
  };
  for (char raw : query) {
    auto c = static_cast<unsigned char>(raw);
    if (IsTokenChar(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else {
      finish();
    }
  }
  finish();

  for (const std::string& t : q.tokens) {
    if (!use_stopwords || !SortedContains(Stopwords(), t)) {
      q.content_tokens.push_back(t);
    }
  }
  std::sort(q.content_tokens.begin(), q.content_tokens.end());
  return q;
}

void PruneConfig::Validate() const {
  if (!(tau >= 0.0 && tau <= 1.0)) throw ArgumentError("tau must be in [0, 1]");
  if (max_events && *max_events == 0) {
    throw ArgumentError("max_events must be positive when set");
  }
}

const char* PruneModeName(PruneMode mode) {
  switch (mode) {
    case PruneMode::kAnchor:
      return "ANCHOR";
    case PruneMode::kLexical:
      return "LEXICAL";
    case PruneMode::kEmpty:
      return "EMPTY";
  }
  return "EMPTY";
}

std::vector<uint32_t> Anchors::All() const {
  std::vector<uint32_t> all = by_id;
  all.insert(all.end(), by_class.begin(), by_class.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

Anchors FindAnchors(const TemporalSceneGraph& g, const QueryTokens& q) {
  Anchors a;
  for (const std::string& t : q.tokens) {
    const int64_t node = g.FindNode(t);
    if (node >= 0) a.by_id.push_back(static_cast<uint32_t>(node));
  }
  for (const std::string& t : q.content_tokens) {
    const auto& members = g.NodesOfClass(t);
    a.by_class.insert(a.by_class.end(), members.begin(), members.end());
  }
  std::sort(a.by_id.begin(), a.by_id.end());
  std::sort(a.by_class.begin(), a.by_class.end());
  a.by_class.erase(std::unique(a.by_class.begin(), a.by_class.end()),
                   a.by_class.end());
  return a;
}

std::vector<std::string> EventTokens(const EventEdge& e) {
  std::vector<std::string> out = {e.from.Render(), e.from.label, e.to.Render(),
                                  e.to.label,
                                  e.kind == EventKind::kStart ? "start" : "end"};
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double LexicalScore(const QueryTokens& q, const EventEdge& e) {
  if (q.content_tokens.empty()) {
    throw ArgumentError("lexical score undefined for a query without content tokens");
  }
  size_t hits = 0;
  for (const std::string& t : EventTokens(e)) hits += q.HasContentToken(t) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(q.content_tokens.size());
}

PruneResult Prune(const TemporalSceneGraph& g, std::string_view query,
                  const PruneConfig& cfg) {
  cfg.Validate();
  const QueryTokens q = Tokenize(query, cfg.use_stopwords);
  const std::vector<EventEdge>& edges = g.edges();

  PruneResult result;
  result.total_events = edges.size();
  std::vector<uint32_t> picked;
  std::vector<double> scores;

  const std::vector<uint32_t> anchors = FindAnchors(g, q).All();
  if (!anchors.empty()) {
    result.mode = PruneMode::kAnchor;
    for (uint32_t n : anchors) result.anchors.push_back(g.nodes()[n].id);
    std::sort(result.anchors.begin(), result.anchors.end());
    std::vector<char> taken(edges.size(), 0);
    for (uint32_t n : anchors) {
      for (uint32_t e : g.IncidentEdgeIndices(g.nodes()[n].rendered)) taken[e] = 1;
    }
    for (uint32_t e = 0; e < taken.size(); ++e) {
      if (taken[e]) picked.push_back(e);
    }
  } else if (!q.content_tokens.empty()) {
    scores.assign(edges.size(), 0.0);
    for (uint32_t e = 0; e < edges.size(); ++e) {
      scores[e] = ScoreEdge(g, q, edges[e]);
      if (scores[e] >= cfg.tau) picked.push_back(e);
    }
    if (!picked.empty()) result.mode = PruneMode::kLexical;
  }

  picked = Dedupe(g, picked);
  if (cfg.max_events && picked.size() > *cfg.max_events) {
    // Lexical results keep the highest-scoring events, anchored ones the
    // earliest; either way the survivors stay chronological.
    if (result.mode == PruneMode::kLexical) {
      std::stable_sort(picked.begin(), picked.end(),
                       [&](uint32_t a, uint32_t b) { return scores[a] > scores[b]; });
      picked.resize(*cfg.max_events);
      std::sort(picked.begin(), picked.end());
    } else {
      picked.resize(*cfg.max_events);
    }
  }

  result.events.reserve(picked.size());
  for (uint32_t e : picked) result.events.push_back(edges[e].ToEvent());
  if (result.mode == PruneMode::kEmpty) result.events.clear();
  result.compression =
      1.0 - static_cast<double>(result.events.size()) /
                static_cast<double>(std::max<size_t>(result.total_events, 1));
  return result;
}

std::string RenderPruneResult(const PruneResult& result) {
  nlohmann::ordered_json j;
  j["mode"] = PruneModeName(result.mode);
  j["anchors"] = nlohmann::ordered_json::array();
  for (const EntityId& a : result.anchors) j["anchors"].push_back(a.Render());
  j["compression"] = result.compression;
  j["total_events"] = result.total_events;
  j["events"] = nlohmann::ordered_json::array();
  for (const InteractionEvent& ev : result.events) {
    j["events"].push_back(nlohmann::ordered_json::parse(RenderEvent(ev)));
  }
  return j.dump(2) + "\n";
}

}  // namespace seg
