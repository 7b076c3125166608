#pragma once

#include <string>

#include "graph.hpp"

namespace sgvq {

// Graph JSON: {"frame_index":int,"timestamp_s":float,
//   "nodes":[{"id":int,"kind":str,"label":str,"bbox":[x,y,w,h]?}],
//   "edges":[{"src":int,"dst":int,"t":[float,...]?}]}
// Unknown fields are rejected.
std::string graph_to_json(const SceneGraph& g);
SceneGraph graph_from_json(const std::string& text);

// Aggregate JSON: graph JSON plus
//   {"node_types":{id:label},"attr_vocab":[...],"rel_vocab":[...]}
std::string aggregate_to_json(const AggregatedGraph& g);
AggregatedGraph aggregate_from_json(const std::string& text);

} // namespace sgvq
