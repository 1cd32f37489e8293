// Copyright (c) archtaint contributors
// SPDX-License-Identifier: Apache-2.0

#include "archtaint/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "archtaint/errors.hpp"

namespace archtaint {

bool Graph::add_node(const NodeId& v) {
    if (has_node(v))
        return false;
    nodes_.push_back(v);
    return true;
}

bool Graph::add_edge(const NodeId& src, const NodeId& dst) {
    if (!has_node(src))
        throw UnknownNodeError(src);
    if (!has_node(dst))
        throw UnknownNodeError(dst);
    if (has_edge(src, dst))
        return false;
    edges_.push_back(Edge{src, dst});
    return true;
}

bool Graph::has_node(const NodeId& v) const {
    return std::find(nodes_.begin(), nodes_.end(), v) != nodes_.end();
}

bool Graph::has_edge(const NodeId& src, const NodeId& dst) const {
    return std::find(edges_.begin(), edges_.end(), Edge{src, dst}) != edges_.end();
}

bool Graph::well_formed() const {
    for (const Edge& e : edges_) {
        if (!has_node(e.src) || !has_node(e.dst))
            return false;
    }
    return true;
}

std::vector<NodeId> Graph::reachable_from(const NodeId& v) const {
    if (!has_node(v))
        throw UnknownNodeError(v);
    std::set<NodeId> seen;
    std::deque<NodeId> frontier;
    for (const Edge& e : edges_) {
        if (e.src == v && seen.insert(e.dst).second)
            frontier.push_back(e.dst);
    }
    while (!frontier.empty()) {
        NodeId cur = frontier.front();
        frontier.pop_front();
        for (const Edge& e : edges_) {
            if (e.src == cur && seen.insert(e.dst).second)
                frontier.push_back(e.dst);
        }
    }
    std::vector<NodeId> out;
    for (const NodeId& n : nodes_) {
        if (seen.count(n))
            out.push_back(n);
    }
    return out;
}

Graph Graph::remove_edges(const std::vector<Edge>& victims) const {
    Graph g;
    g.nodes_ = nodes_;
    for (const Edge& e : edges_) {
        if (std::find(victims.begin(), victims.end(), e) == victims.end())
            g.edges_.push_back(e);
    }
    return g;
}

std::vector<Edge> Graph::self_loops() const {
    std::vector<Edge> out;
    for (const Edge& e : edges_) {
        if (e.src == e.dst)
            out.push_back(e);
    }
    return out;
}

} // namespace archtaint
