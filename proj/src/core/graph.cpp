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

#include "seg/graph.hpp"

#include <algorithm>

#include "seg/error.hpp"

namespace seg {
namespace {

const std::vector<uint32_t>& Empty() {
  static const std::vector<uint32_t> kEmpty;
  return kEmpty;
}

std::string Quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

uint32_t TemporalSceneGraph::InternNode(const EntityId& id) {
  std::string rendered = id.Render();
  auto [it, inserted] =
      node_index_.emplace(rendered, static_cast<uint32_t>(nodes_.size()));
  if (inserted) {
    nodes_.push_back({id, std::move(rendered), 0});
    incident_.emplace_back();
    by_class_[id.label].push_back(it->second);
  }
  return it->second;
}

TemporalSceneGraph TemporalSceneGraph::Build(
    std::vector<InteractionEvent> events) {
  if (!std::is_sorted(events.begin(), events.end(), ChronologicalLess)) {
    std::stable_sort(events.begin(), events.end(), ChronologicalLess);
  }
  TemporalSceneGraph g;
  g.edges_.reserve(events.size());
  for (InteractionEvent& ev : events) {
    const uint32_t from = g.InternNode(ev.subject);
    const uint32_t to = g.InternNode(ev.object);
    const auto edge = static_cast<uint32_t>(g.edges_.size());
    std::string raw = RenderEvent(ev);
    g.edges_.push_back({std::move(ev.subject), std::move(ev.object), ev.kind,
                        ev.timestamp, ev.frame, ev.seq, std::move(raw), from, to});
    g.incident_[from].push_back(edge);
    ++g.nodes_[from].degree;
    if (to != from) g.incident_[to].push_back(edge);
    ++g.nodes_[to].degree;
  }
  for (auto& [cls, members] : g.by_class_) {
    std::sort(members.begin(), members.end(), [&g](uint32_t a, uint32_t b) {
      return g.nodes_[a].id < g.nodes_[b].id;
    });
  }
  return g;
}

int64_t TemporalSceneGraph::FindNode(std::string_view rendered_id) const {
  auto it = node_index_.find(std::string(rendered_id));
  return it == node_index_.end() ? -1 : static_cast<int64_t>(it->second);
}

const std::vector<uint32_t>& TemporalSceneGraph::IncidentEdgeIndices(
    std::string_view id) const {
  const int64_t node = FindNode(id);
  return node < 0 ? Empty() : incident_[static_cast<size_t>(node)];
}

std::vector<EventEdge> TemporalSceneGraph::IncidentEdges(
    const EntityId& id) const {
  std::vector<EventEdge> out;
  for (uint32_t e : IncidentEdgeIndices(id.Render())) out.push_back(edges_[e]);
  return out;
}

const std::vector<uint32_t>& TemporalSceneGraph::NodesOfClass(
    std::string_view cls) const {
  std::string key;
  try {
    key = NormalizeLabel(cls);
  } catch (const Error&) {
    return Empty();
  }
  auto it = by_class_.find(key);
  return it == by_class_.end() ? Empty() : it->second;
}

std::vector<EntityId> TemporalSceneGraph::EntitiesByClass(
    std::string_view cls) const {
  std::vector<EntityId> out;
  for (uint32_t n : NodesOfClass(cls)) out.push_back(nodes_[n].id);
  return out;
}

std::vector<InteractionEvent> TemporalSceneGraph::Events() const {
  std::vector<InteractionEvent> out;
  out.reserve(edges_.size());
  for (const EventEdge& e : edges_) out.push_back(e.ToEvent());
  return out;
}

std::string TemporalSceneGraph::ToDot() const {
  std::vector<const std::string*> names;
  names.reserve(nodes_.size());
  for (const EntityNode& n : nodes_) names.push_back(&n.rendered);
  std::sort(names.begin(), names.end(),
            [](const std::string* a, const std::string* b) { return *a < *b; });

  std::string out = "digraph tsg {\n";
  for (const std::string* name : names) {
    out += "  " + Quote(*name) + ";\n";
  }
  for (const EventEdge& e : edges_) {
    out += "  " + Quote(nodes_[e.from_node].rendered) + " -> " +
           Quote(nodes_[e.to_node].rendered) + " [label=" +
           Quote(std::string(EventKindName(e.kind)) + "@" +
                 FormatNumber(e.timestamp)) +
           "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace seg
