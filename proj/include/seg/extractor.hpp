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

// Proximity-based interaction extraction with frame hysteresis.

#ifndef SEG_EXTRACTOR_HPP_
#define SEG_EXTRACTOR_HPP_

#include <string>
#include <utility>
#include <vector>

#include "seg/detection.hpp"
#include "seg/events.hpp"

namespace seg {

struct ExtractionConfig {
  // Centroid distance (pixels, inclusive) under which two entities interact.
  // 100 suits close-up footage; wide-angle scenes typically want 200.
  double delta = 100.0;
  // Consecutive apart-or-absent frames tolerated before an interaction ends.
  int beta = 5;
  // Every tracked pair must contain at least one entity of this class.
  std::string focus_class = "person";

  // Throws an argument error unless delta is finite and positive, beta >= 0
  // and focus_class is non-empty.
  void Validate() const;
};

// Euclidean distance between detection centroids.
double PairDistance(const Detection& a, const Detection& b);

// Orders a pair as (subject, object): the focus-class entity is the subject;
// when both are focus-class the lower track id wins. Throws an argument error
// when neither entity is focus-class.
std::pair<EntityId, EntityId> CanonicalRoles(const EntityId& a,
                                             const EntityId& b,
                                             const ExtractionConfig& cfg);

// Runs the per-pair state machine over the frames of `log`.
//
// A pair that is inactive and close (distance <= delta, both present) emits
// START. An active pair accumulates one count for each frame in which it is
// apart or either member is missing; a close frame resets the count. When the
// count exceeds beta an END is emitted at that (confirmation) frame. Pairs
// still active after the last frame are closed with END at the last frame.
//
// Events within a frame are ordered by (subject, object); seq numbers follow
// emission order, so the output is sorted by (frame, seq).
std::vector<InteractionEvent> ExtractEvents(const DetectionLog& log,
                                            const ExtractionConfig& cfg);

}  // namespace seg

#endif  // SEG_EXTRACTOR_HPP_
