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

#include "seg/detection.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "seg/error.hpp"

namespace seg {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void Fail(const std::string& path, const std::string& msg) {
  throw DataError(path + ": " + msg);
}

const json& Require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) Fail(path, std::string("missing key '") + key + "'");
  return *it;
}

double RequireNumber(const json& obj, const char* key, const std::string& path) {
  const json& v = Require(obj, key, path);
  if (!v.is_number()) Fail(path + "." + key, "expected a number");
  return v.get<double>();
}

int64_t RequireInt(const json& obj, const char* key, const std::string& path) {
  const json& v = Require(obj, key, path);
  if (!v.is_number_integer()) Fail(path + "." + key, "expected an integer");
  return v.get<int64_t>();
}

void CheckBox(const BBox& b, const std::string& path) {
  if (!std::isfinite(b.x1) || !std::isfinite(b.y1) || !std::isfinite(b.x2) ||
      !std::isfinite(b.y2)) {
    Fail(path, "non-finite coordinate");
  }
  if (b.x1 > b.x2 || b.y1 > b.y2) Fail(path, "expected x1 <= x2 and y1 <= y2");
}

}  // namespace

Point Centroid(const BBox& box) {
  return {(box.x1 + box.x2) / 2.0, (box.y1 + box.y2) / 2.0};
}

std::string NormalizeLabel(std::string_view label) {
  std::string out;
  bool pending_space = false;
  for (char raw : label) {
    auto c = static_cast<unsigned char>(raw);
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back('_');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  if (out.empty()) throw DataError("empty object label");
  return out;
}

std::string EntityId::Render() const {
  return label + "-" + std::to_string(track_id);
}

EntityId EntityId::Parse(std::string_view text) {
  auto dash = text.rfind('-');
  if (dash == std::string_view::npos || dash == 0 || dash + 1 == text.size()) {
    throw DataError("malformed entity id '" + std::string(text) + "'");
  }
  std::string_view digits = text.substr(dash + 1);
  for (char c : digits) {
    if (c < '0' || c > '9') {
      throw DataError("malformed entity id '" + std::string(text) + "'");
    }
  }
  EntityId id;
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), id.track_id);
  if (ec != std::errc()) {
    throw DataError("entity id track out of range '" + std::string(text) + "'");
  }
  id.label = std::string(text.substr(0, dash));
  if (NormalizeLabel(id.label) != id.label) {
    throw DataError("entity id label not canonical '" + std::string(text) + "'");
  }
  return id;
}

EntityId MakeEntityId(const Detection& det) {
  return {NormalizeLabel(det.label), det.track_id};
}

double DetectionLog::EndTime() const {
  return frames.empty() ? 0.0 : frames.back().timestamp;
}

void ValidateDetectionLog(const DetectionLog& log) {
  if (!(log.video.fps > 0) || !std::isfinite(log.video.fps)) {
    Fail("video.fps", "expected a positive number");
  }
  std::unordered_map<int64_t, std::string> labels;
  for (size_t f = 0; f < log.frames.size(); ++f) {
    const FrameRecord& rec = log.frames[f];
    const std::string path = "frames[" + std::to_string(f) + "]";
    if (rec.frame < 0) Fail(path + ".frame", "negative frame index");
    if (!std::isfinite(rec.timestamp) || rec.timestamp < 0) {
      Fail(path + ".timestamp", "expected a finite number >= 0");
    }
    if (f > 0) {
      if (rec.frame <= log.frames[f - 1].frame) {
        Fail(path + ".frame", "frame indices must be strictly increasing");
      }
      if (rec.timestamp < log.frames[f - 1].timestamp) {
        Fail(path + ".timestamp", "timestamps must be non-decreasing");
      }
    }
    std::unordered_set<int64_t> seen;
    for (size_t d = 0; d < rec.detections.size(); ++d) {
      const Detection& det = rec.detections[d];
      const std::string dpath = path + ".detections[" + std::to_string(d) + "]";
      if (det.track_id < 0) Fail(dpath + ".id", "negative track id");
      CheckBox(det.bbox, dpath + ".bbox");
      std::string label;
      try {
        label = NormalizeLabel(det.label);
      } catch (const Error&) {
        Fail(dpath + ".label", "empty label");
      }
      if (!seen.insert(det.track_id).second) {
        Fail(dpath + ".id", "track " + std::to_string(det.track_id) +
                                " appears twice in one frame");
      }
      auto [it, inserted] = labels.emplace(det.track_id, label);
      if (!inserted && it->second != label) {
        Fail(dpath + ".label", "identity conflict: track " +
                                   std::to_string(det.track_id) + " labeled '" +
                                   it->second + "' and '" + label + "'");
      }
    }
  }
}

DetectionLog ParseDetectionLog(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw DataError(std::string("detection log is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) Fail("$", "expected an object");

  DetectionLog log;
  const json& video = Require(doc, "video", "$");
  if (!video.is_object()) Fail("video", "expected an object");
  const json& vpath = Require(video, "path", "video");
  if (!vpath.is_string()) Fail("video.path", "expected a string");
  log.video.path = vpath.get<std::string>();
  log.video.fps = RequireNumber(video, "fps", "video");
  if (!(log.video.fps > 0)) Fail("video.fps", "expected a positive number");
  log.video.width = RequireInt(video, "width", "video");
  log.video.height = RequireInt(video, "height", "video");

  const json& frames = Require(doc, "frames", "$");
  if (!frames.is_array()) Fail("frames", "expected an array");
  log.frames.reserve(frames.size());
  for (size_t f = 0; f < frames.size(); ++f) {
    const std::string path = "frames[" + std::to_string(f) + "]";
    const json& fj = frames[f];
    if (!fj.is_object()) Fail(path, "expected an object");
    FrameRecord rec;
    rec.frame = RequireInt(fj, "frame", path);
    if (fj.contains("timestamp")) {
      rec.timestamp = RequireNumber(fj, "timestamp", path);
    } else {
      rec.timestamp = static_cast<double>(rec.frame) / log.video.fps;
    }
    const json& dets = Require(fj, "detections", path);
    if (!dets.is_array()) Fail(path + ".detections", "expected an array");
    rec.detections.reserve(dets.size());
    for (size_t d = 0; d < dets.size(); ++d) {
      const std::string dpath = path + ".detections[" + std::to_string(d) + "]";
      const json& dj = dets[d];
      if (!dj.is_object()) Fail(dpath, "expected an object");
      Detection det;
      det.track_id = RequireInt(dj, "id", dpath);
      const json& label = Require(dj, "label", dpath);
      if (!label.is_string()) Fail(dpath + ".label", "expected a string");
      det.label = label.get<std::string>();
      const json& bbox = Require(dj, "bbox", dpath);
      if (!bbox.is_array() || bbox.size() != 4) {
        Fail(dpath + ".bbox", "expected an array of 4 numbers");
      }
      for (const json& v : bbox) {
        if (!v.is_number()) Fail(dpath + ".bbox", "expected an array of 4 numbers");
      }
      det.bbox = {bbox[0].get<double>(), bbox[1].get<double>(),
                  bbox[2].get<double>(), bbox[3].get<double>()};
      det.centroid = Centroid(det.bbox);
      rec.detections.push_back(std::move(det));
    }
    log.frames.push_back(std::move(rec));
  }
  ValidateDetectionLog(log);
  return log;
}

std::string RenderDetectionLog(const DetectionLog& log) {
  ordered_json doc;
  doc["video"] = {{"path", log.video.path},
                  {"fps", log.video.fps},
                  {"width", log.video.width},
                  {"height", log.video.height}};
  ordered_json frames = ordered_json::array();
  for (const FrameRecord& rec : log.frames) {
    ordered_json dets = ordered_json::array();
    for (const Detection& det : rec.detections) {
      dets.push_back({{"id", det.track_id},
                      {"label", det.label},
                      {"bbox", {det.bbox.x1, det.bbox.y1, det.bbox.x2, det.bbox.y2}}});
    }
    frames.push_back(
        {{"frame", rec.frame}, {"timestamp", rec.timestamp}, {"detections", dets}});
  }
  doc["frames"] = std::move(frames);
  return doc.dump();
}

}  // namespace seg
