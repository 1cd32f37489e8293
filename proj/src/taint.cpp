// Copyright (c) archtaint contributors
// SPDX-License-Identifier: Apache-2.0

#include "archtaint/taint.hpp"

#include <algorithm>

#include "archtaint/boundaries.hpp"
#include "archtaint/errors.hpp"

namespace archtaint {

namespace {

bool subset_of(const LabelSet& sub, const LabelSet& sup) {
    return std::includes(sup.begin(), sup.end(), sub.begin(), sub.end());
}

LabelSet set_minus(const LabelSet& a, const LabelSet& b) {
    LabelSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.end()));
    return out;
}

} // namespace

TaintSpec TaintSpec::normalize(const LabelSet& x, const LabelSet& y) {
    TaintSpec s;
    s.taints_ = x;
    s.taints_.insert(y.begin(), y.end());
    s.untaints_ = y;
    return s;
}

LabelSet effective_taints(const TaintSpec& s) {
    return set_minus(s.taints(), s.untaints());
}

std::string label_set_text(const LabelSet& ls) {
    std::string out = "{";
    bool first = true;
    for (const Label& a : ls) {
        if (!first)
            out += ",";
        out += a;
        first = false;
    }
    out += "}";
    return out;
}

void LabelAssignment::assign(const NodeId& v, const TaintSpec& s) {
    entries_[v] = s;
}

bool LabelAssignment::contains(const NodeId& v) const {
    return entries_.count(v) != 0;
}

const TaintSpec& LabelAssignment::at(const NodeId& v) const {
    auto it = entries_.find(v);
    if (it == entries_.end())
        throw UnknownNodeError(v);
    return it->second;
}

LabelAssignment totalize(const LabelAssignment& partial, const Graph& g) {
    for (const auto& [v, s] : partial.entries()) {
        if (!g.has_node(v))
            throw UnknownNodeError(v);
    }
    LabelAssignment out = partial;
    for (const NodeId& v : g.nodes()) {
        if (!out.contains(v))
            out.assign(v, TaintSpec{});
    }
    out.total_ = true;
    return out;
}

LabelSet label_universe(const LabelAssignment& t) {
    LabelSet out;
    for (const auto& [v, s] : t.entries())
        out.insert(s.taints().begin(), s.taints().end());
    return out;
}

bool check_tainting_closure(const Graph& g, const LabelAssignment& t) {
    for (const NodeId& v : g.nodes()) {
        const LabelSet& tv = t.at(v).taints();
        for (const NodeId& r : g.reachable_from(v)) {
            if (!subset_of(tv, t.at(r).taints()))
                return false;
        }
    }
    return true;
}

bool check_tainting_local(const Graph& g, const LabelAssignment& t) {
    for (const Edge& e : g.edges()) {
        if (!subset_of(t.at(e.src).taints(), t.at(e.dst).taints()))
            return false;
    }
    return true;
}

bool check_tainting_full(const Graph& g, const LabelAssignment& t) {
    for (const Edge& e : g.edges()) {
        if (!subset_of(effective_taints(t.at(e.src)), t.at(e.dst).taints()))
            return false;
    }
    return true;
}

std::vector<TaintViolation> taint_violations(const Graph& g, const LabelAssignment& t) {
    std::vector<TaintViolation> out;
    for (const Edge& e : g.edges()) {
        LabelSet witness = set_minus(effective_taints(t.at(e.src)), t.at(e.dst).taints());
        if (!witness.empty())
            out.push_back(TaintViolation{e, std::move(witness)});
    }
    return out;
}

std::vector<Edge> offending_flows(const Graph& g, const LabelAssignment& t) {
    std::vector<Edge> out;
    for (const TaintViolation& v : taint_violations(g, t))
        out.push_back(v.edge);
    return out;
}

Graph repair(const Graph& g, const LabelAssignment& t) {
    return g.remove_edges(offending_flows(g, t));
}

Graph synthesize_max_policy(const std::vector<NodeId>& nodes, const LabelAssignment& t,
                            const SystemLayout* systems) {
    Graph g;
    for (const NodeId& v : nodes)
        g.add_node(v);
    for (const NodeId& u : nodes) {
        LabelSet eff = effective_taints(t.at(u));
        for (const NodeId& v : nodes) {
            if (u == v)
                continue;
            if (!subset_of(eff, t.at(v).taints()))
                continue;
            if (systems != nullptr && !boundary_edge_permitted(u, v, *systems))
                continue;
            g.add_edge(u, v);
        }
    }
    return g;
}

} // namespace archtaint
