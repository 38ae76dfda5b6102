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

#include "seg/narrative.hpp"

#include <cctype>
#include <cstdio>
#include <map>
#include <utility>

#include "seg/error.hpp"

namespace seg {

std::string Narrative::Body() const {
  std::string out;
  for (const std::string& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

std::string Narrative::Text() const { return header + "\n" + Body(); }

std::string NarrativeLine(const InteractionEvent& ev) {
  std::string line = "[t=" + FormatNumber(ev.timestamp) + "s, frame " +
                     std::to_string(ev.frame) + "] " + ev.subject.Render();
  line += ev.kind == EventKind::kStart ? " STARTED" : " ENDED";
  line += " interacting with " + ev.object.Render() + ".";
  return line;
}

Narrative Verbalize(const std::vector<InteractionEvent>& events) {
  Narrative n;
  n.source_event_count = events.size();
  if (events.empty()) {
    n.header = "Interaction log: 0 events.";
  } else {
    n.header = "Interaction log: " + std::to_string(events.size()) +
               " events from t=" + FormatNumber(events.front().timestamp) +
               "s to t=" + FormatNumber(events.back().timestamp) + "s.";
  }
  n.lines.reserve(events.size());
  for (const InteractionEvent& ev : events) n.lines.push_back(NarrativeLine(ev));
  n.estimated_tokens = EstimateTokens(n.Text());
  return n;
}

std::vector<Interval> PairIntervals(const std::vector<InteractionEvent>& events) {
  std::vector<Interval> out;
  std::map<std::pair<EntityId, EntityId>, size_t> open;
  for (const InteractionEvent& ev : events) {
    auto key = std::pair{ev.subject, ev.object};
    auto it = open.find(key);
    if (ev.kind == EventKind::kStart) {
      if (it != open.end()) {
        throw DataError("alternation violation: second START for " +
                        ev.subject.Render() + " -> " + ev.object.Render() +
                        " at frame " + std::to_string(ev.frame));
      }
      open.emplace(key, out.size());
      out.push_back({ev.subject, ev.object, ev.timestamp, ev.timestamp, 0, true});
    } else {
      if (it == open.end()) {
        throw DataError("alternation violation: END without START for " +
                        ev.subject.Render() + " -> " + ev.object.Render() +
                        " at frame " + std::to_string(ev.frame));
      }
      Interval& iv = out[it->second];
      iv.end_ts = ev.timestamp;
      iv.duration = iv.end_ts - iv.start_ts;
      iv.open = false;
      open.erase(it);
    }
  }
  if (!events.empty()) {
    const double last = events.back().timestamp;
    for (const auto& [key, idx] : open) {
      out[idx].end_ts = last;
      out[idx].duration = last - out[idx].start_ts;
    }
  }
  return out;
}

std::string FormatInstantAnswer(double timestamp) {
  return "t=" + FormatNumber(timestamp) + "s";
}

std::string FormatDurationAnswer(double seconds) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2fs", seconds);
  return buf;
}

const char* TokenEstimatorName(TokenEstimator est) {
  return est == TokenEstimator::kCharsPerFour ? "chars/4" : "words";
}

TokenEstimator ParseTokenEstimator(std::string_view name) {
  if (name == "chars/4" || name == "chars") return TokenEstimator::kCharsPerFour;
  if (name == "words") return TokenEstimator::kWhitespaceWords;
  throw ArgumentError("unknown token estimator '" + std::string(name) + "'");
}

size_t EstimateTokens(std::string_view text, TokenEstimator est) {
  if (est == TokenEstimator::kCharsPerFour) return (text.size() + 3) / 4;
  size_t words = 0;
  bool in_word = false;
  for (char c : text) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_word) ++words;
    in_word = !space;
  }
  return words;
}

}  // namespace seg
