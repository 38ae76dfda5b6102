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

#ifndef SEG_GRAPH_HPP_
#define SEG_GRAPH_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "seg/events.hpp"

namespace seg {

struct EntityNode {
  EntityId id;
  std::string rendered;  // id.Render(), cached
  size_t degree = 0;     // incident edges in either direction

  const std::string& cls() const { return id.label; }
};

// One interaction event as a directed subject -> object edge.
struct EventEdge {
  EntityId from;
  EntityId to;
  EventKind kind = EventKind::kStart;
  double timestamp = 0;
  int64_t frame = 0;
  int64_t seq = 0;
  std::string raw;  // canonical event record, see RenderEvent()
  uint32_t from_node = 0;
  uint32_t to_node = 0;

  InteractionEvent ToEvent() const {
    return {timestamp, frame, kind, from, to, seq};
  }
};

// Directed multi-graph over entities; parallel edges are never merged.
// Immutable after Build() and safe for concurrent readers.
class TemporalSceneGraph {
 public:
  TemporalSceneGraph() = default;

  // Linear in nodes + events when the input is already chronological (as the
  // extractor emits it); otherwise the events are stable-sorted first.
  static TemporalSceneGraph Build(std::vector<InteractionEvent> events);

  // Nodes in first-appearance order.
  const std::vector<EntityNode>& nodes() const { return nodes_; }
  // Edges sorted by (frame, seq).
  const std::vector<EventEdge>& edges() const { return edges_; }

  // Index into nodes(), or -1 for an unknown id.
  int64_t FindNode(std::string_view rendered_id) const;

  // Indices into edges() of every edge touching `id`, chronological. Unknown
  // ids yield an empty list.
  const std::vector<uint32_t>& IncidentEdgeIndices(std::string_view id) const;
  std::vector<EventEdge> IncidentEdges(const EntityId& id) const;

  // Node indices whose class matches `cls` (case-insensitive), ordered by id.
  const std::vector<uint32_t>& NodesOfClass(std::string_view cls) const;
  std::vector<EntityId> EntitiesByClass(std::string_view cls) const;

  // All edges back as events, in (frame, seq) order.
  std::vector<InteractionEvent> Events() const;

  // Deterministic DOT digraph: nodes sorted by id, edges in (frame, seq)
  // order labeled KIND@timestamp.
  std::string ToDot() const;

 private:
  uint32_t InternNode(const EntityId& id);

  std::vector<EntityNode> nodes_;
  std::vector<EventEdge> edges_;
  std::unordered_map<std::string, uint32_t> node_index_;
  std::vector<std::vector<uint32_t>> incident_;
  std::unordered_map<std::string, std::vector<uint32_t>> by_class_;
};

}  // namespace seg

#endif  // SEG_GRAPH_HPP_
