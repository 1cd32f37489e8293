// Copyright (c) archtaint contributors
// SPDX-License-Identifier: Apache-2.0

#include "archtaint/boundaries.hpp"

#include "archtaint/errors.hpp"

namespace archtaint {

std::string role_name(BoundaryRole r) {
    switch (r) {
    case BoundaryRole::Internal:
        return "internal";
    case BoundaryRole::Passive:
        return "passive";
    case BoundaryRole::Active:
        return "active";
    case BoundaryRole::Both:
        return "both";
    }
    return "internal";
}

std::optional<BoundaryRole> role_from_name(const std::string& name) {
    if (name == "internal")
        return BoundaryRole::Internal;
    if (name == "passive")
        return BoundaryRole::Passive;
    if (name == "active")
        return BoundaryRole::Active;
    if (name == "both")
        return BoundaryRole::Both;
    return std::nullopt;
}

void SystemLayout::add_system(SystemDef s) {
    for (const SystemDef& existing : systems_) {
        if (existing.name == s.name)
            throw Error("duplicate system: " + s.name);
    }
    for (const auto& [member, role] : s.members) {
        (void)role;
        if (system_of(member).has_value())
            throw Error("node in more than one system: " + member);
    }
    for (std::size_t i = 0; i < s.members.size(); ++i) {
        for (std::size_t j = i + 1; j < s.members.size(); ++j) {
            if (s.members[i].first == s.members[j].first)
                throw Error("node in more than one system: " + s.members[i].first);
        }
    }
    systems_.push_back(std::move(s));
}

std::optional<std::string> SystemLayout::system_of(const NodeId& v) const {
    for (const SystemDef& s : systems_) {
        for (const auto& [member, role] : s.members) {
            (void)role;
            if (member == v)
                return s.name;
        }
    }
    return std::nullopt;
}

std::optional<BoundaryRole> SystemLayout::role_of(const NodeId& v) const {
    for (const SystemDef& s : systems_) {
        for (const auto& [member, role] : s.members) {
            if (member == v)
                return role;
        }
    }
    return std::nullopt;
}

void SystemLayout::validate_against(const Graph& g) const {
    for (const SystemDef& s : systems_) {
        for (const auto& [member, role] : s.members) {
            (void)role;
            if (!g.has_node(member))
                throw UnknownNodeError(member);
        }
    }
}

namespace {

bool may_receive(BoundaryRole r) {
    return r == BoundaryRole::Passive || r == BoundaryRole::Both;
}

bool may_send(BoundaryRole r) {
    return r == BoundaryRole::Active || r == BoundaryRole::Both;
}

bool cross_system(const SystemLayout& layout, const NodeId& u, const NodeId& v) {
    auto su = layout.system_of(u);
    auto sv = layout.system_of(v);
    return su != sv; // world counts as its own side
}

} // namespace

bool boundary_edge_permitted(const NodeId& u, const NodeId& v, const SystemLayout& layout) {
    if (!cross_system(layout, u, v))
        return true;
    auto ru = layout.role_of(u);
    auto rv = layout.role_of(v);
    if (rv.has_value() && !may_receive(*rv))
        return false;
    if (ru.has_value() && !may_send(*ru))
        return false;
    return true;
}

std::vector<BoundaryViolation> check_boundaries(const Graph& g, const SystemLayout& layout) {
    layout.validate_against(g);
    std::vector<BoundaryViolation> out;
    for (const Edge& e : g.edges()) {
        if (!cross_system(layout, e.src, e.dst))
            continue;
        auto ru = layout.role_of(e.src);
        auto rv = layout.role_of(e.dst);
        if (rv.has_value() && !may_receive(*rv))
            out.push_back(BoundaryViolation{BoundaryViolationKind::Access, e, *rv});
        if (ru.has_value() && !may_send(*ru))
            out.push_back(BoundaryViolation{BoundaryViolationKind::Flow, e, *ru});
    }
    return out;
}

} // namespace archtaint
