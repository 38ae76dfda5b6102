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

#ifndef SEG_NARRATIVE_HPP_
#define SEG_NARRATIVE_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "seg/events.hpp"

namespace seg {

// Chronological verbalization handed to the answering backend.
struct Narrative {
  std::string header;
  std::vector<std::string> lines;  // one per event
  size_t estimated_tokens = 0;     // of Text(), chars/4
  size_t source_event_count = 0;

  // Header and body lines, each newline-terminated.
  std::string Text() const;
  std::string Body() const;
};

// One line per event:
//   [t=<ts>s, frame <f>] <subject> STARTED|ENDED interacting with <object>.
// preceded by a header naming the event count and the time span covered.
// `events` must already be in (frame, seq) order.
Narrative Verbalize(const std::vector<InteractionEvent>& events);

// The body line for a single event.
std::string NarrativeLine(const InteractionEvent& ev);

struct Interval {
  EntityId subject;
  EntityId object;
  double start_ts = 0;
  double end_ts = 0;
  double duration = 0;
  bool open = false;  // no END seen; closed at the last event timestamp
};

// Matches each START with the next END of the same (subject, object), in
// START order. Throws a data error on END-without-START or a double START.
std::vector<Interval> PairIntervals(const std::vector<InteractionEvent>& events);

// Answer phrasing shared by every component that produces or checks answers:
// "t=12.3s" for instants, "7.00s" (two decimals) for durations.
std::string FormatInstantAnswer(double timestamp);
std::string FormatDurationAnswer(double seconds);

enum class TokenEstimator { kCharsPerFour, kWhitespaceWords };

// "chars/4" or "words".
const char* TokenEstimatorName(TokenEstimator est);
TokenEstimator ParseTokenEstimator(std::string_view name);

size_t EstimateTokens(std::string_view text,
                      TokenEstimator est = TokenEstimator::kCharsPerFour);

}  // namespace seg

#endif  // SEG_NARRATIVE_HPP_
