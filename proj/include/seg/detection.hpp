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

// Detection logs: per-frame tracked detections with persistent identities, as
// produced by an upstream detector + tracker.

#ifndef SEG_DETECTION_HPP_
#define SEG_DETECTION_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace seg {

// Axis-aligned box in pixel coordinates; x1 <= x2 and y1 <= y2.
struct BBox {
  double x1 = 0, y1 = 0, x2 = 0, y2 = 0;

  bool operator==(const BBox&) const = default;
};

struct Point {
  double x = 0, y = 0;

  bool operator==(const Point&) const = default;
};

// Exact arithmetic midpoint of the box.
Point Centroid(const BBox& box);

// Lowercases ASCII and collapses whitespace runs into '_'. Throws a data error
// on an empty (or all-whitespace) label.
std::string NormalizeLabel(std::string_view label);

// Canonical entity identity `<label>-<track_id>`, e.g. `person-1`, `cup-3`,
// `tv_monitor-2`. Ordered by label, then numerically by track id.
struct EntityId {
  std::string label;  // normalized
  int64_t track_id = 0;

  std::string Render() const;
  // Inverse of Render(). Throws a data error on malformed text.
  static EntityId Parse(std::string_view text);

  auto operator<=>(const EntityId&) const = default;
  bool operator==(const EntityId&) const = default;
};

struct Detection {
  int64_t track_id = 0;
  std::string label;  // as it appeared in the log
  BBox bbox;
  Point centroid;     // derived

  bool operator==(const Detection&) const = default;
};

EntityId MakeEntityId(const Detection& det);

struct FrameRecord {
  int64_t frame = 0;
  double timestamp = 0;
  std::vector<Detection> detections;

  bool operator==(const FrameRecord&) const = default;
};

struct VideoMeta {
  std::string path;
  double fps = 30;
  int64_t width = 0;
  int64_t height = 0;

  bool operator==(const VideoMeta&) const = default;
};

// Immutable once parsed; safe to share across readers.
struct DetectionLog {
  VideoMeta video;
  std::vector<FrameRecord> frames;

  // Timestamp of the final frame, or 0 for an empty log.
  double EndTime() const;

  bool operator==(const DetectionLog&) const = default;
};

// Parses and validates the detection-log JSON. Centroids are filled in and
// missing timestamps are derived as frame / fps. Errors name the offending
// JSON path.
DetectionLog ParseDetectionLog(std::string_view json);

// Checks every log invariant (monotone frames, bbox ordering, per-frame
// uniqueness, identity consistency). Throws a data error on the first
// violation.
void ValidateDetectionLog(const DetectionLog& log);

// Serializes to the detection-log JSON; every frame carries its timestamp.
std::string RenderDetectionLog(const DetectionLog& log);

}  // namespace seg

#endif  // SEG_DETECTION_HPP_
