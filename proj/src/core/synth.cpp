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

#include "seg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "json.hpp"
#include "seg/error.hpp"
#include "seg/extractor.hpp"
#include "seg/narrative.hpp"

namespace seg {
namespace {

constexpr double kGridSpacing = 450.0;
constexpr double kContactOffset = 30.0;
constexpr double kMaxJitter = 20.0;

const char* const kObjectLabels[] = {
    "cup",   "bowl",  "laptop", "bottle", "book",     "cell phone",
    "chair", "knife", "spoon",  "remote", "keyboard", "tv monitor"};

struct Size {
  double w, h;
};

Size BoxSize(const std::string& label) {
  return label == "person" ? Size{80, 200} : Size{40, 40};
}

using PairKey = std::pair<EntityId, EntityId>;

PairKey Canonical(const EntityId& a, const EntityId& b) {
  ExtractionConfig cfg;
  return CanonicalRoles(a, b, cfg);
}

bool Overlaps(const PlantedInteraction& p, int64_t start, int64_t end) {
  return p.start_frame <= end && start <= p.end_frame;
}

bool Involves(const PlantedInteraction& p, const EntityId& e) {
  return p.subject == e || p.object == e;
}

// Adds up to `target` non-conflicting random interactions.
void PlantRandom(ScenarioSpec& spec, std::mt19937_64& rng, int target,
                 int max_attempts, int64_t len_min, int64_t len_max,
                 double gap_prob, double person_pair_prob) {
  const std::vector<EntityId> ents = ScenarioEntities(spec);
  if (spec.duration < 2 || ents.size() < 2) return;
  len_max = std::min(len_max, spec.duration);
  len_min = std::clamp<int64_t>(len_min, 2, len_max);
  std::uniform_int_distribution<int> person(0, spec.n_people - 1);
  std::uniform_int_distribution<int> any(0, static_cast<int>(ents.size()) - 1);
  std::uniform_int_distribution<int64_t> length(len_min, len_max);
  std::bernoulli_distribution want_gap(gap_prob);
  std::bernoulli_distribution person_pair(person_pair_prob);
  std::bernoulli_distribution absent(0.5);

  int planted = 0;
  for (int attempt = 0; attempt < max_attempts && planted < target; ++attempt) {
    const EntityId& s = ents[static_cast<size_t>(person(rng))];
    EntityId o;
    if (spec.n_people > 1 && person_pair(rng)) {
      o = ents[static_cast<size_t>(person(rng))];
    } else {
      o = ents[static_cast<size_t>(any(rng))];
    }
    if (o == s) continue;
    const int64_t len = length(rng);
    std::uniform_int_distribution<int64_t> start_d(0, spec.duration - len);
    const int64_t start = start_d(rng);
    const int64_t end = start + len - 1;
    const bool clash = std::any_of(
        spec.planted.begin(), spec.planted.end(), [&](const PlantedInteraction& p) {
          return (Involves(p, s) || Involves(p, o)) && Overlaps(p, start, end);
        });
    if (clash) continue;

    auto [subject, object] = Canonical(s, o);
    PlantedInteraction p{subject, object, start, end, {}};
    if (len >= 3 && want_gap(rng)) {
      // One or two disjoint runs strictly inside (start, end).
      int64_t cursor = start + 1;
      const int runs = 1 + static_cast<int>(rng() % 2);
      for (int r = 0; r < runs && cursor <= end - 1; ++r) {
        std::uniform_int_distribution<int64_t> at(cursor, end - 1);
        const int64_t g = at(rng);
        std::uniform_int_distribution<int64_t> glen(1, 2 * spec.beta + 2);
        const int64_t gl = std::min(glen(rng), end - g);
        if (gl < 1) break;
        p.gap_runs.push_back({g, gl, absent(rng)});
        cursor = g + gl + 1;
      }
    }
    spec.planted.push_back(std::move(p));
    ++planted;
  }
  std::sort(spec.planted.begin(), spec.planted.end(),
            [](const PlantedInteraction& a, const PlantedInteraction& b) {
              if (a.start_frame != b.start_frame) return a.start_frame < b.start_frame;
              return std::tie(a.subject, a.object) < std::tie(b.subject, b.object);
            });
}

}  // namespace

std::vector<std::string> ScenarioLabels(const ScenarioSpec& spec) {
  std::vector<std::string> labels;
  constexpr size_t n_obj = std::size(kObjectLabels);
  for (int i = 0; i < spec.n_entities; ++i) {
    labels.emplace_back(i < spec.n_people
                            ? "person"
                            : kObjectLabels[static_cast<size_t>(i - spec.n_people) % n_obj]);
  }
  return labels;
}

std::vector<EntityId> ScenarioEntities(const ScenarioSpec& spec) {
  std::vector<EntityId> ids;
  const auto labels = ScenarioLabels(spec);
  for (size_t i = 0; i < labels.size(); ++i) {
    ids.push_back({NormalizeLabel(labels[i]), static_cast<int64_t>(i + 1)});
  }
  return ids;
}

void ValidateScenario(const ScenarioSpec& spec) {
  auto fail = [](const std::string& m) -> void {
    throw ArgumentError("infeasible scenario: " + m);
  };
  if (spec.n_people < 1) fail("n_people must be >= 1");
  if (spec.n_entities < spec.n_people) fail("n_entities < n_people");
  if (spec.duration < 0) fail("negative duration");
  if (!(spec.fps > 0)) fail("fps must be > 0");
  if (spec.jitter < 0 || spec.jitter > kMaxJitter) fail("jitter must be in [0, 20]");
  if (spec.beta < 0) fail("beta must be >= 0");

  const auto ents = ScenarioEntities(spec);
  auto known = [&](const EntityId& e) {
    return std::find(ents.begin(), ents.end(), e) != ents.end();
  };
  for (size_t i = 0; i < spec.planted.size(); ++i) {
    const PlantedInteraction& p = spec.planted[i];
    const std::string where = "planted[" + std::to_string(i) + "] ";
    if (!known(p.subject) || !known(p.object)) fail(where + "unknown entity");
    if (p.subject == p.object) fail(where + "subject equals object");
    if (p.subject.label != "person" && p.object.label != "person") {
      fail(where + "pair has no person");
    }
    if (!(0 <= p.start_frame && p.start_frame < p.end_frame &&
          p.end_frame < spec.duration)) {
      fail(where + "interval outside [0, duration)");
    }
    for (const GapRun& g : p.gap_runs) {
      if (g.length < 1 || g.frame <= p.start_frame ||
          g.frame + g.length - 1 >= p.end_frame) {
        fail(where + "gap run not strictly inside the interval");
      }
    }
    for (size_t j = 0; j < i; ++j) {
      const PlantedInteraction& q = spec.planted[j];
      const bool shared = Involves(q, p.subject) || Involves(q, p.object);
      if (shared && Overlaps(q, p.start_frame, p.end_frame)) {
        fail(where + "overlaps planted[" + std::to_string(j) +
             "] on a shared entity");
      }
    }
  }
}

std::vector<InteractionEvent> IntervalOracle(
    const std::vector<PairCloseFrames>& pairs,
    const std::vector<int64_t>& frame_indices,
    const std::vector<double>& timestamps, int beta) {
  std::vector<InteractionEvent> out;
  if (frame_indices.empty()) return out;
  const size_t last_pos = frame_indices.size() - 1;
  const auto b = static_cast<size_t>(beta);
  for (const PairCloseFrames& pc : pairs) {
    if (pc.close_positions.empty()) continue;
    auto [subject, object] = Canonical(pc.a, pc.b);
    auto emit = [&](EventKind kind, size_t pos) {
      out.push_back({timestamps[pos], frame_indices[pos], kind, subject, object, 0});
    };
    size_t run_start = pc.close_positions.front();
    size_t run_last = run_start;
    for (size_t i = 1; i < pc.close_positions.size(); ++i) {
      const size_t p = pc.close_positions[i];
      if (p - run_last - 1 <= b) {
        run_last = p;
        continue;
      }
      emit(EventKind::kStart, run_start);
      emit(EventKind::kEnd, run_last + b + 1);
      run_start = run_last = p;
    }
    emit(EventKind::kStart, run_start);
    emit(EventKind::kEnd, std::min(run_last + b + 1, last_pos));
  }
  std::sort(out.begin(), out.end(),
            [](const InteractionEvent& x, const InteractionEvent& y) {
              return std::tie(x.frame, x.subject, x.object, x.kind) <
                     std::tie(y.frame, y.subject, y.object, y.kind);
            });
  for (size_t i = 0; i < out.size(); ++i) out[i].seq = static_cast<int64_t>(i);
  return out;
}

SyntheticWorkload Generate(const ScenarioSpec& spec) {
  ValidateScenario(spec);
  const auto labels = ScenarioLabels(spec);
  const auto ents = ScenarioEntities(spec);
  const size_t n = ents.size();
  const auto cols = static_cast<size_t>(std::ceil(std::sqrt(static_cast<double>(std::max<size_t>(n, 1)))));
  std::vector<Point> home(n);
  for (size_t i = 0; i < n; ++i) {
    home[i] = {kGridSpacing / 2 + kGridSpacing * static_cast<double>(i % cols),
               kGridSpacing / 2 + kGridSpacing * static_cast<double>(i / cols)};
  }
  auto index_of = [&](const EntityId& e) {
    return static_cast<size_t>(e.track_id - 1);
  };

  std::mt19937_64 rng(spec.seed);
  const auto frames = static_cast<size_t>(spec.duration);
  // Per entity and frame: position override, absence flag.
  std::vector<Point> pos(n * frames);
  std::vector<char> missing(n * frames, 0);
  for (size_t e = 0; e < n; ++e) {
    std::fill(pos.begin() + static_cast<std::ptrdiff_t>(e * frames),
              pos.begin() + static_cast<std::ptrdiff_t>((e + 1) * frames), home[e]);
  }

  std::map<PairKey, std::set<size_t>> close;
  std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
  for (const PlantedInteraction& p : spec.planted) {
    const size_t s = index_of(p.subject);
    const size_t o = index_of(p.object);
    const double a = angle(rng);
    const Point contact{home[s].x + kContactOffset * std::cos(a),
                        home[s].y + kContactOffset * std::sin(a)};
    auto& frames_close = close[{p.subject, p.object}];
    for (int64_t f = p.start_frame; f <= p.end_frame; ++f) {
      const GapRun* gap = nullptr;
      for (const GapRun& g : p.gap_runs) {
        if (f >= g.frame && f < g.frame + g.length) gap = &g;
      }
      const size_t cell = o * frames + static_cast<size_t>(f);
      if (gap == nullptr) {
        pos[cell] = contact;
        frames_close.insert(static_cast<size_t>(f));
      } else if (gap->absent) {
        missing[cell] = 1;
      }
    }
  }

  SyntheticWorkload out;
  out.log.video = {"synthetic://seed/" + std::to_string(spec.seed), spec.fps,
                   static_cast<int64_t>(kGridSpacing * static_cast<double>(cols)),
                   static_cast<int64_t>(kGridSpacing * static_cast<double>((n + cols - 1) / std::max<size_t>(cols, 1)))};
  std::uniform_real_distribution<double> jitter(-spec.jitter, spec.jitter);
  std::vector<int64_t> frame_indices;
  std::vector<double> timestamps;
  out.log.frames.reserve(frames);
  for (size_t f = 0; f < frames; ++f) {
    FrameRecord rec;
    rec.frame = static_cast<int64_t>(f);
    rec.timestamp = static_cast<double>(f) / spec.fps;
    rec.detections.reserve(n);
    for (size_t e = 0; e < n; ++e) {
      const double jx = spec.jitter > 0 ? jitter(rng) : 0.0;
      const double jy = spec.jitter > 0 ? jitter(rng) : 0.0;
      if (missing[e * frames + f]) continue;
      const Point c{pos[e * frames + f].x + jx, pos[e * frames + f].y + jy};
      const Size sz = BoxSize(labels[e]);
      Detection det;
      det.track_id = ents[e].track_id;
      det.label = labels[e];
      det.bbox = {c.x - sz.w / 2, c.y - sz.h / 2, c.x + sz.w / 2, c.y + sz.h / 2};
      det.centroid = Centroid(det.bbox);
      rec.detections.push_back(std::move(det));
    }
    frame_indices.push_back(rec.frame);
    timestamps.push_back(rec.timestamp);
    out.log.frames.push_back(std::move(rec));
  }

  std::vector<PairCloseFrames> pairs;
  for (auto& [key, set] : close) {
    pairs.push_back({key.first, key.second, {set.begin(), set.end()}});
  }
  out.gold_events = IntervalOracle(pairs, frame_indices, timestamps, spec.beta);
  out.qa = DeriveQa(out.gold_events, spec.seed, spec.qa_pairs);
  return out;
}

std::vector<QaItem> DeriveQa(const std::vector<InteractionEvent>& gold,
                             uint64_t seed, int max_pairs) {
  std::vector<PairKey> order;
  std::map<PairKey, std::vector<InteractionEvent>> by_pair;
  for (const InteractionEvent& ev : gold) {
    auto& list = by_pair[{ev.subject, ev.object}];
    if (list.empty()) order.push_back({ev.subject, ev.object});
    list.push_back(ev);
  }
  std::vector<size_t> chosen(order.size());
  for (size_t i = 0; i < chosen.size(); ++i) chosen[i] = i;
  if (max_pairs > 0 && chosen.size() > static_cast<size_t>(max_pairs)) {
    std::mt19937_64 rng(seed ^ 0x5eedc0ffee11ULL);
    std::shuffle(chosen.begin(), chosen.end(), rng);
    chosen.resize(static_cast<size_t>(max_pairs));
    std::sort(chosen.begin(), chosen.end());
  }

  std::vector<QaItem> qa;
  for (size_t idx : chosen) {
    const auto& [s, o] = order[idx];
    const std::vector<InteractionEvent>& evs = by_pair[order[idx]];
    const std::string sid = s.Render();
    const std::string oid = o.Render();

    const InteractionEvent* first_end = nullptr;
    const InteractionEvent* last_end = nullptr;
    for (const InteractionEvent& ev : evs) {
      if (ev.kind == EventKind::kEnd) {
        if (first_end == nullptr) first_end = &ev;
        last_end = &ev;
      }
    }
    double total = 0;
    for (const Interval& iv : PairIntervals(evs)) total += iv.duration;

    std::string next = "nothing";
    if (first_end != nullptr) {
      for (const InteractionEvent& ev : gold) {
        if (!ChronologicalLess(*first_end, ev) || ev.kind != EventKind::kStart) continue;
        if (ev.subject == s) {
          next = ev.object.Render();
          break;
        }
        if (ev.object == s) {
          next = ev.subject.Render();
          break;
        }
      }
    }

    qa.push_back({"When did " + sid + " first start interacting with " + oid + "?",
                  FormatInstantAnswer(evs.front().timestamp),
                  QaCategory::kInteraction});
    if (last_end != nullptr) {
      qa.push_back({"When did " + sid + " last stop interacting with " + oid + "?",
                    FormatInstantAnswer(last_end->timestamp), QaCategory::kOrdering});
    }
    qa.push_back({"How long did " + sid + " interact with " + oid + " in total?",
                  FormatDurationAnswer(total), QaCategory::kDuration});
    if (first_end != nullptr) {
      qa.push_back({"What did " + sid +
                        " start interacting with next after first stopping "
                        "interacting with " +
                        oid + "?",
                    next, QaCategory::kCausal});
    }
  }
  return qa;
}

ScenarioSpec RandomScenario(uint64_t seed, const RandomScenarioLimits& limits) {
  std::mt19937_64 rng(seed);
  ScenarioSpec spec;
  spec.seed = seed;
  spec.n_entities = std::uniform_int_distribution<int>(2, std::max(2, limits.max_entities))(rng);
  spec.n_people = std::uniform_int_distribution<int>(
      1, std::max(1, spec.n_entities / 3))(rng);
  spec.duration = std::uniform_int_distribution<int64_t>(
      1, std::max<int64_t>(1, limits.max_frames))(rng);
  const double fps_choices[] = {5, 10, 15, 30};
  spec.fps = fps_choices[rng() % 4];
  spec.beta = std::uniform_int_distribution<int>(0, std::max(0, limits.max_beta))(rng);
  spec.jitter = std::uniform_real_distribution<double>(
      0, std::min(limits.max_jitter, kMaxJitter))(rng);
  const int target = std::uniform_int_distribution<int>(0, 60)(rng);
  PlantRandom(spec, rng, target, target * 8, 2, 200, 0.5, 0.15);
  return spec;
}

ScenarioSpec DefaultWorkloadSpec(uint64_t seed) {
  ScenarioSpec spec;
  spec.seed = seed;
  spec.n_entities = 48;
  spec.n_people = 16;
  spec.fps = 5;
  spec.duration = 3000;
  spec.jitter = 10;
  spec.beta = 5;
  spec.qa_pairs = 30;
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
  PlantRandom(spec, rng, 175, 20000, 10, 50, 0.3, 0.1);
  return spec;
}

ScenarioSpec ParseScenarioSpec(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw DataError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DataError("$: scenario must be an object");
  ScenarioSpec spec;
  try {
    spec.seed = doc.value("seed", spec.seed);
    spec.n_entities = doc.value("n_entities", spec.n_entities);
    spec.n_people = doc.value("n_people", spec.n_people);
    spec.duration = doc.value("duration", spec.duration);
    spec.fps = doc.value("fps", spec.fps);
    spec.jitter = doc.value("jitter", spec.jitter);
    spec.beta = doc.value("beta", spec.beta);
    spec.qa_pairs = doc.value("qa_pairs", spec.qa_pairs);
    for (const json& p : doc.value("planted", json::array())) {
      PlantedInteraction pi;
      pi.subject = EntityId::Parse(p.at("subject").get<std::string>());
      pi.object = EntityId::Parse(p.at("object").get<std::string>());
      pi.start_frame = p.at("start_frame").get<int64_t>();
      pi.end_frame = p.at("end_frame").get<int64_t>();
      for (const json& g : p.value("gap_runs", json::array())) {
        pi.gap_runs.push_back({g.at("frame").get<int64_t>(),
                               g.at("length").get<int64_t>(),
                               g.value("absent", false)});
      }
      spec.planted.push_back(std::move(pi));
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("scenario: ") + e.what());
  }
  return spec;
}

}  // namespace seg
