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

#ifndef SEG_EVENTS_HPP_
#define SEG_EVENTS_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "seg/detection.hpp"

namespace seg {

enum class EventKind { kStart, kEnd };

// "START" / "END".
const char* EventKindName(EventKind kind);

// A timestamped boundary of a proximity interaction between a focus-class
// subject and another entity.
struct InteractionEvent {
  double timestamp = 0;
  int64_t frame = 0;
  EventKind kind = EventKind::kStart;
  EntityId subject;
  EntityId object;
  int64_t seq = 0;

  bool operator==(const InteractionEvent&) const = default;
};

// Chronological order used everywhere: (frame, seq).
inline bool ChronologicalLess(const InteractionEvent& a,
                              const InteractionEvent& b) {
  return a.frame != b.frame ? a.frame < b.frame : a.seq < b.seq;
}

// Canonical single-line record, keys in the order
// timestamp, frame, type, subject, object, seq.
std::string RenderEvent(const InteractionEvent& ev);

// JSON array of canonical records, one per line.
std::string RenderEventLog(const std::vector<InteractionEvent>& events);

// Accepts the event-log JSON array. A missing "seq" is filled from the record
// position. The result is sorted by (frame, seq).
std::vector<InteractionEvent> ParseEventLog(std::string_view json);

// Shortest decimal text that round-trips the double ("12.3", "7", "0.5").
std::string FormatNumber(double value);

}  // namespace seg

#endif  // SEG_EVENTS_HPP_
