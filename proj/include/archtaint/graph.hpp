// Copyright (c) archtaint contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace archtaint {

using NodeId = std::string;

struct Edge {
    NodeId src;
    NodeId dst;

    friend bool operator==(const Edge& a, const Edge& b) {
        return a.src == b.src && a.dst == b.dst;
    }
    friend bool operator<(const Edge& a, const Edge& b) {
        if (a.src != b.src)
            return a.src < b.src;
        return a.dst < b.dst;
    }
};

// Directed graph over named components. Nodes and edges keep declaration
// order; duplicates are ignored. Edge endpoints must be declared nodes.
class Graph {
  public:
    // Returns false if the node was already present.
    bool add_node(const NodeId& v);

    // Returns false if the edge was already present.
    // Throws UnknownNodeError if either endpoint is not a node.
    bool add_edge(const NodeId& src, const NodeId& dst);
    bool add_edge(const Edge& e) { return add_edge(e.src, e.dst); }

    bool has_node(const NodeId& v) const;
    bool has_edge(const NodeId& src, const NodeId& dst) const;
    bool has_edge(const Edge& e) const { return has_edge(e.src, e.dst); }

    const std::vector<NodeId>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }

    // Every edge endpoint is a declared node. Holds by construction; exposed
    // so callers assembling graphs through other paths can assert it.
    bool well_formed() const;

    // Nodes reachable from v by a path of length >= 1, in declaration order.
    // v itself is included only if it lies on a cycle.
    // Throws UnknownNodeError if v is not a node.
    std::vector<NodeId> reachable_from(const NodeId& v) const;

    // Copy of this graph with the given edges removed. Nodes are kept.
    Graph remove_edges(const std::vector<Edge>& victims) const;

    std::vector<Edge> self_loops() const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
    }

  private:
    std::vector<NodeId> nodes_;
    std::vector<Edge> edges_;
};

} // namespace archtaint
