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

#include <random>

#include "gtest/gtest.h"
#include "seg/error.hpp"
#include "support/oracles.hpp"

namespace seg {
namespace {

using testing::Ev;

constexpr auto S = EventKind::kStart;
constexpr auto E = EventKind::kEnd;

TEST(Verbalize, Empty) {
  const Narrative n = Verbalize({});
  EXPECT_EQ(n.header, "Interaction log: 0 events.");
  EXPECT_TRUE(n.lines.empty());
  EXPECT_EQ(n.Text(), "Interaction log: 0 events.\n");
  EXPECT_EQ(n.source_event_count, 0u);
}

TEST(Verbalize, LinesAndHeader) {
  const Narrative n = Verbalize({Ev(S, "person-1", "cup-3", 123, 12.3, 0),
                                 Ev(E, "person-1", "cup-3", 200, 20, 1)});
  EXPECT_EQ(n.header, "Interaction log: 2 events from t=12.3s to t=20s.");
  ASSERT_EQ(n.lines.size(), 2u);
  EXPECT_EQ(n.lines[0], "[t=12.3s, frame 123] person-1 STARTED interacting with cup-3.");
  EXPECT_EQ(n.lines[1], "[t=20s, frame 200] person-1 ENDED interacting with cup-3.");
  EXPECT_EQ(n.Body(), n.lines[0] + "\n" + n.lines[1] + "\n");
  EXPECT_EQ(n.estimated_tokens, EstimateTokens(n.Text()));
}

TEST(EstimateTokensTest, CharsPerFour) {
  EXPECT_EQ(EstimateTokens(""), 0u);
  EXPECT_EQ(EstimateTokens("abcdefgh"), 2u);
  EXPECT_EQ(EstimateTokens("abcdefghi"), 3u);
  EXPECT_EQ(EstimateTokens("a"), 1u);
}

TEST(EstimateTokensTest, Words) {
  const auto w = TokenEstimator::kWhitespaceWords;
  EXPECT_EQ(EstimateTokens("", w), 0u);
  EXPECT_EQ(EstimateTokens("   ", w), 0u);
  EXPECT_EQ(EstimateTokens(" one  two\tthree\n", w), 3u);
  EXPECT_EQ(ParseTokenEstimator("words"), w);
  EXPECT_EQ(ParseTokenEstimator("chars/4"), TokenEstimator::kCharsPerFour);
  EXPECT_STREQ(TokenEstimatorName(w), "words");
  EXPECT_THROW(ParseTokenEstimator("tiktoken"), Error);
}

TEST(Verbalize, TokensGrowWithEvents) {
  std::mt19937_64 rng(3);
  std::vector<InteractionEvent> events;
  size_t prev = Verbalize(events).estimated_tokens;
  for (int i = 0; i < 200; ++i) {
    events.push_back(Ev(i % 2 ? E : S, "person-" + std::to_string(1 + rng() % 5),
                        "cup-" + std::to_string(rng() % 50), i, i * 0.1, i));
    const Narrative n = Verbalize(events);
    EXPECT_GE(n.estimated_tokens, prev);
    EXPECT_EQ(n.lines.size(), events.size());
    prev = n.estimated_tokens;
  }
}

TEST(Intervals, PairsStartsWithEnds) {
  // The twenty-frame stream at 10 fps with beta = 2.
  const auto iv = PairIntervals({Ev(S, "person-1", "cup-2", 2, 0.2, 0),
                                 Ev(E, "person-1", "cup-2", 10, 1.0, 1),
                                 Ev(S, "person-1", "cup-2", 11, 1.1, 2),
                                 Ev(E, "person-1", "cup-2", 18, 1.8, 3)});
  ASSERT_EQ(iv.size(), 2u);
  EXPECT_DOUBLE_EQ(iv[0].start_ts, 0.2);
  EXPECT_DOUBLE_EQ(iv[0].end_ts, 1.0);
  EXPECT_NEAR(iv[0].duration, 0.8, 1e-12);
  EXPECT_DOUBLE_EQ(iv[1].start_ts, 1.1);
  EXPECT_DOUBLE_EQ(iv[1].end_ts, 1.8);
  EXPECT_NEAR(iv[1].duration, 0.7, 1e-12);
  EXPECT_FALSE(iv[0].open);
}

TEST(Intervals, OpenIntervalClosesAtLastEvent) {
  const auto iv = PairIntervals({Ev(S, "person-1", "cup-2", 2, 0.5, 0),
                                 Ev(S, "person-3", "cup-4", 9, 2.0, 1)});
  ASSERT_EQ(iv.size(), 2u);
  EXPECT_TRUE(iv[0].open);
  EXPECT_DOUBLE_EQ(iv[0].end_ts, 2.0);
  EXPECT_DOUBLE_EQ(iv[0].duration, 1.5);
}

TEST(Intervals, AlternationViolations) {
  EXPECT_THROW(PairIntervals({Ev(E, "person-1", "cup-2", 2, 0.2, 0)}), Error);
  EXPECT_THROW(PairIntervals({Ev(S, "person-1", "cup-2", 2, 0.2, 0),
                              Ev(S, "person-1", "cup-2", 3, 0.3, 1)}),
               Error);
  EXPECT_TRUE(PairIntervals({}).empty());
}

TEST(AnswerFormat, InstantsAndDurations) {
  EXPECT_EQ(FormatInstantAnswer(12.3), "t=12.3s");
  EXPECT_EQ(FormatInstantAnswer(7), "t=7s");
  EXPECT_EQ(FormatDurationAnswer(7), "7.00s");
  EXPECT_EQ(FormatDurationAnswer(0.8), "0.80s");
  EXPECT_EQ(FormatDurationAnswer(2.755), "2.75s");
}

}  // namespace
}  // namespace seg
