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

#include "seg/events.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "json.hpp"
#include "seg/error.hpp"

namespace seg {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json EventJson(const InteractionEvent& ev) {
  ordered_json j;
  j["timestamp"] = ev.timestamp;
  j["frame"] = ev.frame;
  j["type"] = EventKindName(ev.kind);
  j["subject"] = ev.subject.Render();
  j["object"] = ev.object.Render();
  j["seq"] = ev.seq;
  return j;
}

}  // namespace

const char* EventKindName(EventKind kind) {
  return kind == EventKind::kStart ? "START" : "END";
}

std::string FormatNumber(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string RenderEvent(const InteractionEvent& ev) {
  return EventJson(ev).dump();
}

std::string RenderEventLog(const std::vector<InteractionEvent>& events) {
  if (events.empty()) return "[]\n";
  std::string out = "[\n";
  for (size_t i = 0; i < events.size(); ++i) {
    out += "  ";
    out += RenderEvent(events[i]);
    out += i + 1 < events.size() ? ",\n" : "\n";
  }
  out += "]\n";
  return out;
}

std::vector<InteractionEvent> ParseEventLog(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw DataError(std::string("event log is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw DataError("$: event log must be a JSON array");

  std::vector<InteractionEvent> events;
  events.reserve(doc.size());
  for (size_t i = 0; i < doc.size(); ++i) {
    const std::string path = "[" + std::to_string(i) + "]";
    const json& r = doc[i];
    auto field = [&](const char* key) -> const json& {
      if (!r.is_object() || !r.contains(key)) {
        throw DataError(path + ": missing key '" + key + "'");
      }
      return r.at(key);
    };
    InteractionEvent ev;
    const json& ts = field("timestamp");
    if (!ts.is_number() || !std::isfinite(ts.get<double>())) {
      throw DataError(path + ".timestamp: expected a number");
    }
    ev.timestamp = ts.get<double>();
    const json& frame = field("frame");
    if (!frame.is_number_integer()) {
      throw DataError(path + ".frame: expected an integer");
    }
    ev.frame = frame.get<int64_t>();
    const json& type = field("type");
    if (type == "START") {
      ev.kind = EventKind::kStart;
    } else if (type == "END") {
      ev.kind = EventKind::kEnd;
    } else {
      throw DataError(path + ".type: expected \"START\" or \"END\"");
    }
    const json& subject = field("subject");
    const json& object = field("object");
    if (!subject.is_string() || !object.is_string()) {
      throw DataError(path + ": subject and object must be strings");
    }
    ev.subject = EntityId::Parse(subject.get<std::string>());
    ev.object = EntityId::Parse(object.get<std::string>());
    if (ev.subject == ev.object) {
      throw DataError(path + ": subject equals object");
    }
    if (r.contains("seq")) {
      if (!r.at("seq").is_number_integer()) {
        throw DataError(path + ".seq: expected an integer");
      }
      ev.seq = r.at("seq").get<int64_t>();
    } else {
      ev.seq = static_cast<int64_t>(i);
    }
    events.push_back(std::move(ev));
  }
  std::stable_sort(events.begin(), events.end(), ChronologicalLess);
  return events;
}

}  // namespace seg
