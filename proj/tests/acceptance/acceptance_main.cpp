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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "seg/eval.hpp"
#include "seg/extractor.hpp"
#include "seg/graph.hpp"
#include "seg/pruner.hpp"
#include "seg/synth.hpp"
#include "support/oracles.hpp"

namespace {

using Clock = std::chrono::steady_clock;
namespace fs = std::filesystem;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

constexpr auto S = seg::EventKind::kStart;
constexpr auto E = seg::EventKind::kEnd;

const char* kClasses[] = {"cup", "bowl", "laptop", "knife", "bottle", "cell_phone"};

// Random chronological events over `people` persons and `objects` objects
// with no repeated (kind, subject, object, frame) record.
std::vector<seg::InteractionEvent> RandomEvents(std::mt19937_64& rng, size_t m, int people,
                                                int objects) {
  std::vector<seg::InteractionEvent> out;
  out.reserve(m);
  int64_t frame = 0;
  for (size_t i = 0; i < m; ++i) {
    frame += static_cast<int64_t>(rng() % 2);
    const int p = 1 + static_cast<int>(rng() % people);
    seg::EntityId object;
    if (rng() % 8 == 0) {
      object = {"person", 1 + static_cast<int>(rng() % people)};
      if (object.track_id == p) object.track_id = p % people + 1;
      if (object.track_id == p) object = {"cup", 1000};
    } else {
      const int o = 1000 + static_cast<int>(rng() % objects);
      object = {kClasses[o % 6], o};
    }
    out.push_back({static_cast<double>(frame) / 10, frame, rng() % 2 ? S : E,
                   {"person", p}, object, static_cast<int64_t>(i)});
    // Keep records unique by moving on to the next frame.
    ++frame;
  }
  return out;
}

Outcome ExtractionEquivalence() {
  size_t mismatches = 0, events = 0;
  double extract_seconds = 0;
  const auto t0 = Clock::now();
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    const seg::ScenarioSpec spec = seg::RandomScenario(seed, {});
    const seg::SyntheticWorkload w = seg::Generate(spec);
    seg::ExtractionConfig cfg;
    cfg.beta = spec.beta;
    const auto t = Clock::now();
    const auto got = seg::ExtractEvents(w.log, cfg);
    extract_seconds += Seconds(t);
    const auto tuples = seg::testing::ToTuples(got);
    events += got.size();
    if (tuples != seg::testing::BruteForceExtraction(w.log, cfg.delta, cfg.beta, "person") ||
        tuples != seg::testing::ToTuples(w.gold_events)) {
      ++mismatches;
    }
  }
  const double total = Seconds(t0);
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "1000 logs, %zu events, %zu mismatches, %.1fs total (%.2fs extracting)", events,
                mismatches, total, extract_seconds);
  return {mismatches == 0 && total < 60, buf};
}

Outcome AnchorSetEquality() {
  std::mt19937_64 rng(500);
  size_t failures = 0, anchored = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto g = seg::TemporalSceneGraph::Build(
        RandomEvents(rng, 1 + rng() % 400, 1 + static_cast<int>(rng() % 10),
                     1 + static_cast<int>(rng() % 30)));
    std::set<std::string> anchors;
    std::string query = "what happened around";
    const size_t k = 1 + rng() % 3;
    for (size_t i = 0; i < k; ++i) {
      const auto& node = g.nodes()[rng() % g.nodes().size()];
      if (rng() % 4 == 0) {
        // Name the class: every entity of that class becomes an anchor.
        query += " " + node.cls();
        for (const auto& other : g.nodes()) {
          if (other.id.label == node.id.label) anchors.insert(other.rendered);
        }
      } else {
        query += " " + node.rendered;
        anchors.insert(node.rendered);
      }
    }
    const auto r = seg::Prune(g, query, {});
    std::set<std::string> got_anchors;
    for (const auto& a : r.anchors) got_anchors.insert(a.Render());
    if (r.mode != seg::PruneMode::kAnchor || got_anchors != anchors ||
        seg::testing::Seqs(r.events) != seg::testing::BruteForceEgoFilter(g, anchors)) {
      ++failures;
    }
    anchored += anchors.size();
  }
  return {failures == 0, "500 graphs, " + std::to_string(anchored) + " anchors, " +
                             std::to_string(failures) + " mismatches"};
}

Outcome TauMonotonicity() {
  std::mt19937_64 rng(200);
  const char* words[] = {"start", "end", "interacting", "moment", "began", "stopped",
                         "scene", "ended", "giraffe", "start"};
  size_t chain_breaks = 0, c_drops = 0, c0_nonzero = 0, non_lexical = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = seg::TemporalSceneGraph::Build(
        RandomEvents(rng, 1 + rng() % 300, 1 + static_cast<int>(rng() % 8),
                     1 + static_cast<int>(rng() % 20)));
    std::string query;
    const size_t n = 1 + rng() % 4;
    for (size_t i = 0; i < n; ++i) query += std::string(words[rng() % 10]) + " ";
    std::vector<int64_t> prev;
    double prev_c = -1;
    for (int step = 0; step <= 10; ++step) {
      seg::PruneConfig cfg;
      cfg.tau = step / 10.0;
      const auto r = seg::Prune(g, query, cfg);
      if (!r.anchors.empty()) ++non_lexical;
      const auto seqs = seg::testing::Seqs(r.events);
      if (step == 0 && r.compression != 0.0) ++c0_nonzero;
      if (step > 0 && !std::includes(prev.begin(), prev.end(), seqs.begin(), seqs.end())) {
        ++chain_breaks;
      }
      if (r.compression < prev_c) ++c_drops;
      prev = seqs;
      prev_c = r.compression;
    }
  }
  return {chain_breaks == 0 && c_drops == 0 && c0_nonzero == 0 && non_lexical == 0,
          "200 queries x 11 thresholds: " + std::to_string(chain_breaks) +
              " inclusion breaks, " + std::to_string(c_drops) + " compression drops, " +
              std::to_string(c0_nonzero) + " nonzero C(0), " + std::to_string(non_lexical) +
              " anchored"};
}

Outcome CompressionRealism() {
  std::mt19937_64 rng(350);
  double lo = 1, hi = 0;
  size_t questions = 0;
  bool shape_ok = true;
  for (int trial = 0; trial < 50; ++trial) {
    // 175 intervals; the target person owns k/2 of them on private objects.
    const int k = 30 + 2 * static_cast<int>(rng() % 11);
    std::vector<std::pair<seg::EntityId, seg::EntityId>> intervals;
    for (int i = 0; i < k / 2; ++i) {
      intervals.push_back({{"person", 1}, {kClasses[i % 6], 100 + i % 6}});
    }
    while (intervals.size() < 175) {
      const int p = 2 + static_cast<int>(rng() % 15);
      const int o = 200 + static_cast<int>(rng() % 30);
      intervals.push_back({{"person", p}, {kClasses[o % 6], o}});
    }
    std::shuffle(intervals.begin(), intervals.end(), rng);
    std::vector<seg::InteractionEvent> events;
    int64_t frame = 0, seq = 0;
    for (const auto& [s, o] : intervals) {
      events.push_back({frame / 5.0, frame, S, s, o, seq++});
      frame += 1 + static_cast<int64_t>(rng() % 20);
      events.push_back({frame / 5.0, frame, E, s, o, seq++});
      frame += 1;
    }
    const auto g = seg::TemporalSceneGraph::Build(events);
    shape_ok = shape_ok && g.edges().size() == 350 &&
               g.IncidentEdgeIndices("person-1").size() == static_cast<size_t>(k);
    for (const auto& q : seg::DeriveQa(events, trial, 0)) {
      if (q.question.find("person-1 ") == std::string::npos) continue;
      const auto r = seg::Prune(g, q.question, {});
      lo = std::min(lo, r.compression);
      hi = std::max(hi, r.compression);
      ++questions;
    }
  }
  // The bounds are stated to three decimals; compare at that precision.
  const double lo3 = std::round(lo * 1000) / 1000, hi3 = std::round(hi * 1000) / 1000;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "%zu questions over 350-event graphs, C in [%.4f, %.4f] (%.3f..%.3f)",
                questions, lo, hi, lo3, hi3);
  return {shape_ok && questions > 0 && lo3 >= 0.857 && hi3 <= 0.914, buf};
}

Outcome EndToEnd() {
  const auto t0 = Clock::now();
  const seg::SyntheticWorkload w = seg::Generate(seg::DefaultWorkloadSpec(7));
  const auto events = seg::ExtractEvents(w.log, {});
  seg::EvalOptions opts;
  opts.video_end = w.log.EndTime();
  const auto report =
      seg::RunEvaluation(events, w.qa, seg::StandardConditions(30, {}), seg::MockAnswerer(),
                         seg::ExactJudge(), opts, {});
  const double secs = Seconds(t0);
  const auto& shrt = report.conditions[0];
  const auto& full = report.conditions[1];
  const auto& tsg = report.conditions[2];
  std::set<seg::QaCategory> cats;
  for (const auto& q : w.qa) cats.insert(q.category);
  const double ratio = tsg.avg_tokens / full.avg_tokens;
  char buf[300];
  std::snprintf(buf, sizeof(buf),
                "%zu questions, %zu categories: short %.1f%%, full %.1f%%, tsg %.1f%%, "
                "tokens tsg/full %.3f, %.1fs",
                w.qa.size(), cats.size(), 100 * shrt.accuracy, 100 * full.accuracy,
                100 * tsg.accuracy, ratio, secs);
  return {w.qa.size() >= 100 && cats.size() == 4 && shrt.accuracy < 0.10 &&
              full.accuracy == 1.0 && tsg.accuracy == 1.0 && ratio <= 0.15 && secs < 120,
          buf};
}

double BestOf(int reps, const std::function<void()>& fn) {
  double best = 1e30;
  for (int i = 0; i < reps; ++i) {
    const auto t = Clock::now();
    fn();
    best = std::min(best, Seconds(t));
  }
  return best;
}

Outcome Linearity() {
  std::mt19937_64 rng(100000);
  const auto small = RandomEvents(rng, 10000, 40, 400);
  const auto large = RandomEvents(rng, 100000, 40, 400);
  seg::PruneConfig cfg;
  size_t sink = 0;
  auto measure = [&](const std::vector<seg::InteractionEvent>& events) {
    return BestOf(5, [&] {
      const auto g = seg::TemporalSceneGraph::Build(events);
      sink += seg::Prune(g, "which interaction did start first", cfg).events.size();
    });
  };
  const double t_small = measure(small);
  const double t_large = measure(large);
  const double bound = 2 * 10 * t_small;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "m=10k %.4fs, m=100k %.4fs, bound %.4fs (ratio %.2f of linear)", t_small,
                t_large, bound, t_large / (10 * t_small));
  return {sink > 0 && t_large <= bound, buf};
}

int RunCli(const std::string& args) {
  const std::string cmd = std::string(SEG_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome Determinism() {
  const fs::path root = fs::temp_directory_path() / ("seg_accept_" + std::to_string(::getpid()));
  fs::remove_all(root);
  const fs::path a = root / "a", b = root / "b";
  const int ca = RunCli("eval --backend mock --seed 7 --out-dir " + a.string());
  const int cb = RunCli("eval --backend mock --seed 7 --out-dir " + b.string());
  size_t same = 0, bytes = 0;
  for (const char* f : {"report.md", "report.csv", "report.json"}) {
    const std::string x = Slurp(a / f);
    if (!x.empty() && x == Slurp(b / f)) ++same;
    bytes += x.size();
  }
  fs::remove_all(root);
  return {ca == 0 && cb == 0 && same == 3,
          std::to_string(same) + "/3 reports identical (" + std::to_string(bytes) + " bytes)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"extraction-oracle-equivalence", ExtractionEquivalence},
      {"anchor-pruning-set-equality", AnchorSetEquality},
      {"tau-monotonicity", TauMonotonicity},
      {"compression-realism", CompressionRealism},
      {"end-to-end-mock-ordering", EndToEnd},
      {"linearity", Linearity},
      {"determinism", Determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
