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

#include "seg/extractor.hpp"

#include <random>

#include "gtest/gtest.h"
#include "seg/error.hpp"
#include "support/oracles.hpp"

namespace seg {
namespace {

using testing::EventTuple;
using testing::MakeFrame;
using testing::Placed;
using testing::ToTuples;

ExtractionConfig Config(double delta, int beta) {
  ExtractionConfig cfg;
  cfg.delta = delta;
  cfg.beta = beta;
  return cfg;
}

// Frames 1..20 at 10 fps; person-1 and cup-2 are close on frames 2-7 and
// 11-15 and 500 px apart otherwise.
DetectionLog TwentyFrameStream() {
  DetectionLog log;
  log.video = {"stream.mp4", 10, 640, 480};
  for (int f = 1; f <= 20; ++f) {
    const bool close = (f >= 2 && f <= 7) || (f >= 11 && f <= 15);
    log.frames.push_back(MakeFrame(
        f, 10, {{1, "person", 100, 100}, {2, "cup", close ? 130.0 : 600.0, 100}}));
  }
  return log;
}

TEST(Extractor, DistanceBoundaryIsInclusive) {
  Detection a{1, "person", {0, 0, 0, 0}, {0, 0}};
  Detection b{2, "cup", {3, 4, 3, 4}, {3, 4}};
  EXPECT_DOUBLE_EQ(PairDistance(a, b), 5.0);

  DetectionLog log;
  log.video = {"x", 10, 100, 100};
  log.frames.push_back(MakeFrame(0, 10, {{1, "person", 0, 0}, {2, "cup", 60, 80}}));
  const auto at = ExtractEvents(log, Config(100, 5));
  ASSERT_EQ(at.size(), 2u);
  EXPECT_EQ(at[0].kind, EventKind::kStart);
  EXPECT_EQ(at[1].kind, EventKind::kEnd);
  EXPECT_TRUE(ExtractEvents(log, Config(99.999, 5)).empty());
}

TEST(Extractor, SingleEntityProducesNothing) {
  DetectionLog log;
  log.video = {"x", 10, 100, 100};
  for (int f = 0; f < 10; ++f) log.frames.push_back(MakeFrame(f, 10, {{1, "person", 5, 5}}));
  EXPECT_TRUE(ExtractEvents(log, {}).empty());
}

TEST(Extractor, EmptyLog) {
  DetectionLog log;
  EXPECT_TRUE(ExtractEvents(log, {}).empty());
}

TEST(Extractor, HysteresisBridgesShortGap) {
  const auto events = ExtractEvents(TwentyFrameStream(), Config(100, 5));
  const std::vector<EventTuple> want = {{2, "person-1", "cup-2", "START"},
                                        {20, "person-1", "cup-2", "END"}};
  EXPECT_EQ(ToTuples(events), want);
  EXPECT_DOUBLE_EQ(events[0].timestamp, 0.2);
  EXPECT_DOUBLE_EQ(events[1].timestamp, 2.0);
}

TEST(Extractor, SmallBetaSplitsInterval) {
  const auto events = ExtractEvents(TwentyFrameStream(), Config(100, 2));
  const std::vector<EventTuple> want = {{2, "person-1", "cup-2", "START"},
                                        {10, "person-1", "cup-2", "END"},
                                        {11, "person-1", "cup-2", "START"},
                                        {18, "person-1", "cup-2", "END"}};
  EXPECT_EQ(ToTuples(events), want);
  for (size_t i = 0; i < events.size(); ++i) EXPECT_EQ(events[i].seq, static_cast<int64_t>(i));
}

TEST(Extractor, AbsenceCountsAsApart) {
  DetectionLog log;
  log.video = {"x", 1, 100, 100};
  log.frames.push_back(MakeFrame(0, 1, {{1, "person", 0, 0}, {2, "cup", 10, 0}}));
  for (int f = 1; f <= 3; ++f) log.frames.push_back(MakeFrame(f, 1, {{1, "person", 0, 0}}));
  log.frames.push_back(MakeFrame(4, 1, {{1, "person", 0, 0}, {2, "cup", 10, 0}}));
  const std::vector<EventTuple> bridged = {{0, "person-1", "cup-2", "START"},
                                           {4, "person-1", "cup-2", "END"}};
  EXPECT_EQ(ToTuples(ExtractEvents(log, Config(100, 3))), bridged);
  const std::vector<EventTuple> split = {{0, "person-1", "cup-2", "START"},
                                         {3, "person-1", "cup-2", "END"},
                                         {4, "person-1", "cup-2", "START"},
                                         {4, "person-1", "cup-2", "END"}};
  EXPECT_EQ(ToTuples(ExtractEvents(log, Config(100, 2))), split);
}

TEST(Extractor, CanonicalRoles) {
  const ExtractionConfig cfg;
  const EntityId p1{"person", 1}, p7{"person", 7}, cup{"cup", 3}, bowl{"bowl", 2};
  EXPECT_EQ(CanonicalRoles(cup, p7, cfg), std::make_pair(p7, cup));
  EXPECT_EQ(CanonicalRoles(p7, p1, cfg), std::make_pair(p1, p7));
  EXPECT_THROW(CanonicalRoles(cup, bowl, cfg), Error);
}

TEST(Extractor, ObjectPairsIgnored) {
  DetectionLog log;
  log.video = {"x", 10, 100, 100};
  log.frames.push_back(MakeFrame(0, 10, {{1, "cup", 0, 0}, {2, "bowl", 1, 0}}));
  EXPECT_TRUE(ExtractEvents(log, {}).empty());
}

TEST(Extractor, WithinFrameOrdering) {
  DetectionLog log;
  log.video = {"x", 10, 1000, 1000};
  log.frames.push_back(MakeFrame(
      0, 10, {{9, "person", 0, 0}, {4, "person", 500, 500}, {2, "cup", 510, 500}, {5, "cup", 10, 0}}));
  const auto events = ExtractEvents(log, Config(100, 0));
  ASSERT_EQ(events.size(), 4u);
  // Starts sorted by (subject, object) first, then the closing ends.
  EXPECT_EQ(events[0].subject.Render(), "person-4");
  EXPECT_EQ(events[1].subject.Render(), "person-9");
  EXPECT_EQ(events[2].kind, EventKind::kEnd);
  EXPECT_EQ(events[2].subject.Render(), "person-4");
}

TEST(Extractor, ConfigValidation) {
  EXPECT_THROW(Config(0, 5).Validate(), Error);
  EXPECT_THROW(Config(-1, 5).Validate(), Error);
  EXPECT_THROW(Config(100, -1).Validate(), Error);
  ExtractionConfig cfg;
  cfg.focus_class = "";
  EXPECT_THROW(cfg.Validate(), Error);
  EXPECT_NO_THROW(Config(100, 0).Validate());
}

DetectionLog RandomLog(std::mt19937_64& rng, int frames, int entities) {
  const char* labels[] = {"person", "cup", "bowl", "person", "laptop"};
  DetectionLog log;
  log.video = {"r", 10, 400, 400};
  std::uniform_real_distribution<double> coord(0, 250);
  std::vector<std::pair<double, double>> pos(entities);
  for (auto& p : pos) p = {coord(rng), coord(rng)};
  for (int f = 0; f < frames; ++f) {
    std::vector<Placed> dets;
    for (int e = 0; e < entities; ++e) {
      pos[e].first += std::uniform_real_distribution<double>(-40, 40)(rng);
      pos[e].second += std::uniform_real_distribution<double>(-40, 40)(rng);
      if (rng() % 5 == 0) continue;
      dets.push_back({e + 1, labels[e % 5], pos[e].first, pos[e].second});
    }
    log.frames.push_back(MakeFrame(f * 2, 10, dets));
  }
  return log;
}

TEST(ExtractorProperty, MatchesBruteForce) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const DetectionLog log = RandomLog(rng, 1 + static_cast<int>(rng() % 60), 2 + static_cast<int>(rng() % 5));
    const double delta = 40 + static_cast<double>(rng() % 120);
    const int beta = static_cast<int>(rng() % 7);
    EXPECT_EQ(ToTuples(ExtractEvents(log, Config(delta, beta))),
              testing::BruteForceExtraction(log, delta, beta, "person"))
        << "trial " << trial;
  }
}

TEST(ExtractorProperty, AlternationAndFocus) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const DetectionLog log = RandomLog(rng, 40, 5);
    const auto events = ExtractEvents(log, Config(120, static_cast<int>(rng() % 4)));
    std::map<std::pair<EntityId, EntityId>, int> open;
    for (size_t i = 0; i < events.size(); ++i) {
      const auto& e = events[i];
      EXPECT_EQ(e.subject.label, "person");
      if (i > 0) EXPECT_TRUE(ChronologicalLess(events[i - 1], e));
      int& state = open[{e.subject, e.object}];
      if (e.kind == EventKind::kStart) {
        EXPECT_EQ(state, 0);
        state = 1;
      } else {
        EXPECT_EQ(state, 1);
        state = 0;
      }
    }
    for (const auto& [pair, state] : open) EXPECT_EQ(state, 0);
  }
}

size_t StartCount(const std::vector<InteractionEvent>& events) {
  return std::count_if(events.begin(), events.end(),
                       [](const InteractionEvent& e) { return e.kind == EventKind::kStart; });
}

// Larger beta only bridges more gaps, so the number of intervals cannot grow.
TEST(ExtractorProperty, IntervalsMonotoneInBeta) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const DetectionLog log = RandomLog(rng, 50, 4);
    size_t prev = SIZE_MAX;
    for (int beta = 0; beta <= 8; ++beta) {
      const size_t n = StartCount(ExtractEvents(log, Config(100, beta)));
      EXPECT_LE(n, prev);
      prev = n;
    }
  }
}

// Larger delta makes every close frame stay close, so the set of frames
// covered by some interval of a pair can only grow.
TEST(ExtractorProperty, CoverageMonotoneInDelta) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 60; ++trial) {
    const DetectionLog log = RandomLog(rng, 50, 4);
    std::set<std::tuple<std::string, std::string, int64_t>> prev;
    for (double delta : {20.0, 60.0, 100.0, 200.0, 400.0}) {
      std::set<std::tuple<std::string, std::string, int64_t>> covered;
      std::map<std::pair<std::string, std::string>, int64_t> start;
      for (const auto& e : ExtractEvents(log, Config(delta, 2))) {
        const auto key = std::make_pair(e.subject.Render(), e.object.Render());
        if (e.kind == EventKind::kStart) {
          start[key] = e.frame;
        } else {
          for (const auto& f : log.frames) {
            if (f.frame >= start[key] && f.frame < e.frame) covered.insert({key.first, key.second, f.frame});
          }
        }
      }
      for (const auto& c : prev) EXPECT_TRUE(covered.count(c)) << "delta " << delta;
      prev = covered;
    }
  }
}

}  // namespace
}  // namespace seg
