// Copyright (c) archtaint contributors
// SPDX-License-Identifier: Apache-2.0

#include "archtaint/blp.hpp"

#include "archtaint/errors.hpp"

namespace archtaint {

std::string clearance_name(Clearance c) {
    switch (c) {
    case 0:
        return "unclassified";
    case 1:
        return "confidential";
    case 2:
        return "secret";
    default:
        return "level-" + std::to_string(c);
    }
}

namespace {

template <typename Map>
const typename Map::mapped_type& lookup(const Map& m, const NodeId& v) {
    auto it = m.find(v);
    if (it == m.end())
        throw UnknownNodeError(v);
    return it->second;
}

} // namespace

bool check_blp(const Graph& g, const std::map<NodeId, Clearance>& sc) {
    for (const Edge& e : g.edges()) {
        if (lookup(sc, e.src) > lookup(sc, e.dst))
            return false;
    }
    return true;
}

bool check_blp_trusted(const Graph& g, const std::map<NodeId, BlpAttr>& attrs) {
    for (const Edge& e : g.edges()) {
        const BlpAttr& a1 = lookup(attrs, e.src);
        const BlpAttr& a2 = lookup(attrs, e.dst);
        if (!a2.trusted && a1.clearance > a2.clearance)
            return false;
    }
    return true;
}

BlpAttr project_label(const Label& a, const TaintSpec& s) {
    BlpAttr out;
    out.trusted = s.untaints().count(a) != 0;
    bool effectively_tainted = s.taints().count(a) != 0 && !out.trusted;
    out.clearance = effectively_tainted ? 1 : 0;
    return out;
}

Clearance project_label_set(const LabelSet& a_set, const LabelSet& ts) {
    Clearance n = 0;
    for (const Label& a : a_set) {
        if (ts.count(a))
            ++n;
    }
    return n;
}

std::map<NodeId, BlpAttr> project_assignment(const Label& a, const LabelAssignment& t) {
    std::map<NodeId, BlpAttr> out;
    for (const auto& [v, s] : t.entries())
        out[v] = project_label(a, s);
    return out;
}

bool verify_equivalence(const Graph& g, const LabelAssignment& t) {
    bool tainting = check_tainting_full(g, t);
    bool blp_side = true;
    for (const Label& a : label_universe(t)) {
        if (!check_blp_trusted(g, project_assignment(a, t))) {
            blp_side = false;
            break;
        }
    }
    if (tainting != blp_side)
        throw InternalInconsistencyError("tainting and per-label BLP checks disagree");
    return tainting;
}

} // namespace archtaint
