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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "seg/error.hpp"

namespace seg {
namespace {

struct Entity {
  EntityId id;
  bool focus = false;
};

struct PairState {
  int apart_count = 0;
  bool close_now = false;
};

uint64_t PairKey(uint32_t a, uint32_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<uint64_t>(a) << 32) | b;
}

struct Present {
  uint32_t entity;
  Point centroid;
};

}  // namespace

void ExtractionConfig::Validate() const {
  if (!std::isfinite(delta) || !(delta > 0)) {
    throw ArgumentError("delta must be finite and > 0");
  }
  if (beta < 0) throw ArgumentError("beta must be >= 0");
  if (focus_class.empty()) throw ArgumentError("focus class must be non-empty");
}

double PairDistance(const Detection& a, const Detection& b) {
  return std::hypot(a.centroid.x - b.centroid.x, a.centroid.y - b.centroid.y);
}

std::pair<EntityId, EntityId> CanonicalRoles(const EntityId& a,
                                             const EntityId& b,
                                             const ExtractionConfig& cfg) {
  const std::string focus = NormalizeLabel(cfg.focus_class);
  const bool a_focus = a.label == focus;
  const bool b_focus = b.label == focus;
  if (a_focus && b_focus) {
    return a.track_id <= b.track_id ? std::pair{a, b} : std::pair{b, a};
  }
  if (a_focus) return {a, b};
  if (b_focus) return {b, a};
  throw ArgumentError("neither " + a.Render() + " nor " + b.Render() +
                      " is of focus class '" + focus + "'");
}

std::vector<InteractionEvent> ExtractEvents(const DetectionLog& log,
                                            const ExtractionConfig& cfg) {
  cfg.Validate();
  const std::string focus = NormalizeLabel(cfg.focus_class);

  std::vector<Entity> entities;
  std::unordered_map<int64_t, uint32_t> by_track;
  std::unordered_map<uint64_t, PairState> active;
  std::vector<InteractionEvent> events;
  std::vector<InteractionEvent> pending;
  std::vector<Present> present;
  int64_t seq = 0;

  auto intern = [&](const Detection& det) {
    auto [it, inserted] =
        by_track.emplace(det.track_id, static_cast<uint32_t>(entities.size()));
    if (inserted) {
      EntityId id = MakeEntityId(det);
      const bool is_focus = id.label == focus;
      entities.push_back({std::move(id), is_focus});
    }
    return it->second;
  };

  auto emit = [&](uint64_t key, EventKind kind, const FrameRecord& rec) {
    const auto a = static_cast<uint32_t>(key >> 32);
    const auto b = static_cast<uint32_t>(key & 0xffffffffu);
    auto [subject, object] = CanonicalRoles(entities[a].id, entities[b].id, cfg);
    pending.push_back(
        {rec.timestamp, rec.frame, kind, std::move(subject), std::move(object), 0});
  };

  auto flush = [&] {
    std::sort(pending.begin(), pending.end(),
              [](const InteractionEvent& x, const InteractionEvent& y) {
                if (x.subject != y.subject) return x.subject < y.subject;
                if (x.object != y.object) return x.object < y.object;
                return x.kind == EventKind::kStart && y.kind == EventKind::kEnd;
              });
    for (InteractionEvent& ev : pending) {
      ev.seq = seq++;
      events.push_back(std::move(ev));
    }
    pending.clear();
  };

  for (const FrameRecord& rec : log.frames) {
    present.clear();
    for (const Detection& det : rec.detections) {
      present.push_back({intern(det), det.centroid});
    }

    for (size_t i = 0; i < present.size(); ++i) {
      const Entity& ei = entities[present[i].entity];
      for (size_t j = i + 1; j < present.size(); ++j) {
        const Entity& ej = entities[present[j].entity];
        if (!ei.focus && !ej.focus) continue;
        const double dist =
            std::hypot(present[i].centroid.x - present[j].centroid.x,
                       present[i].centroid.y - present[j].centroid.y);
        if (dist > cfg.delta) continue;
        const uint64_t key = PairKey(present[i].entity, present[j].entity);
        auto [it, inserted] = active.try_emplace(key);
        it->second.close_now = true;
        it->second.apart_count = 0;
        if (inserted) emit(key, EventKind::kStart, rec);
      }
    }

    for (auto it = active.begin(); it != active.end();) {
      PairState& state = it->second;
      if (state.close_now) {
        state.close_now = false;
        ++it;
        continue;
      }
      if (++state.apart_count > cfg.beta) {
        emit(it->first, EventKind::kEnd, rec);
        it = active.erase(it);
      } else {
        ++it;
      }
    }
    flush();
  }

  if (!log.frames.empty()) {
    for (const auto& [key, state] : active) {
      emit(key, EventKind::kEnd, log.frames.back());
    }
    flush();
  }
  return events;
}

}  // namespace seg
