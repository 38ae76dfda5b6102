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

// Synthetic detection logs with planted interactions and derived ground truth.
//
// Every entity has a home position on a grid 450px apart. People stay home;
// during a planted interaction the object sits 30px from the subject's home.
// Inside a gap run the object either returns home or drops out of the log.
// Per-axis jitter must stay <= 20px, which keeps planted pairs well inside
// delta = 100 and every other pair beyond 300px.

#ifndef SEG_SYNTH_HPP_
#define SEG_SYNTH_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

#include "seg/detection.hpp"
#include "seg/events.hpp"
#include "seg/qa.hpp"

namespace seg {

struct GapRun {
  int64_t frame = 0;   // first gap frame
  int64_t length = 1;  // frames
  bool absent = false; // object missing instead of moved away
};

struct PlantedInteraction {
  EntityId subject;
  EntityId object;
  int64_t start_frame = 0;  // first close frame
  int64_t end_frame = 0;    // last close frame
  std::vector<GapRun> gap_runs;
};

struct ScenarioSpec {
  uint64_t seed = 0;
  int n_entities = 2;
  int n_people = 1;
  int64_t duration = 100;  // frames 0 .. duration-1
  double fps = 30;
  double jitter = 0;       // per-axis uniform, pixels
  int beta = 5;            // hysteresis the gold events assume (delta is 100)
  std::vector<PlantedInteraction> planted;
  // Number of distinct pairs to ask about (four questions each); 0 = all.
  int qa_pairs = 0;
};

// Track ids 1..n_entities; the first n_people are "person", the rest cycle
// through a fixed object vocabulary (some multi-word, e.g. "cell phone").
std::vector<std::string> ScenarioLabels(const ScenarioSpec& spec);
std::vector<EntityId> ScenarioEntities(const ScenarioSpec& spec);

struct SyntheticWorkload {
  DetectionLog log;
  std::vector<InteractionEvent> gold_events;
  std::vector<QaItem> qa;
};

// Throws an argument error for an infeasible spec: unknown entities, a pair
// without a person, intervals or gaps out of range, or one entity planted in
// two overlapping interactions.
void ValidateScenario(const ScenarioSpec& spec);

// Deterministic per spec (seed included).
SyntheticWorkload Generate(const ScenarioSpec& spec);

// The events implied by per-pair close-frame sets under hysteresis beta:
// close positions (indices into the frame sequence) separated by at most
// beta non-close positions merge into one interval; an interval starts at
// its first close position and ends beta + 1 positions after its last one,
// or at the final frame. Roles follow the focus class "person".
struct PairCloseFrames {
  EntityId a;
  EntityId b;
  std::vector<size_t> close_positions;  // ascending
};
std::vector<InteractionEvent> IntervalOracle(
    const std::vector<PairCloseFrames>& pairs,
    const std::vector<int64_t>& frame_indices,
    const std::vector<double>& timestamps, int beta);

// Question set over gold events: for each chosen (subject, object) pair one
// question per category.
std::vector<QaItem> DeriveQa(const std::vector<InteractionEvent>& gold,
                             uint64_t seed, int max_pairs);

// Random feasible scenario within the limits, used by the property suites.
struct RandomScenarioLimits {
  int max_entities = 50;
  int64_t max_frames = 2000;
  int max_beta = 8;
  double max_jitter = 20;
};
ScenarioSpec RandomScenario(uint64_t seed, const RandomScenarioLimits& limits);

// Scenario JSON: {"seed", "n_entities", "n_people", "duration", "fps",
// "jitter", "beta", "qa_pairs", "planted": [{"subject", "object",
// "start_frame", "end_frame", "gap_runs": [{"frame", "length", "absent"}]}]}.
// Omitted scalars keep their defaults.
ScenarioSpec ParseScenarioSpec(std::string_view json);

// Evaluation-sized workload: 48 entities (16 people), ten minutes at 5 fps,
// ~175 planted intervals (~370 events) and 30 question pairs (120 questions).
ScenarioSpec DefaultWorkloadSpec(uint64_t seed);

}  // namespace seg

#endif  // SEG_SYNTH_HPP_
