// Copyright (c) archtaint contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "archtaint/graph.hpp"

namespace archtaint {

// Role of a component at its system's boundary. Internal components neither
// accept incoming nor establish outgoing cross-system connections; passive
// boundaries accept incoming, active boundaries establish outgoing.
enum class BoundaryRole { Internal, Passive, Active, Both };

std::string role_name(BoundaryRole r);
std::optional<BoundaryRole> role_from_name(const std::string& name);

struct SystemDef {
    std::string name;
    std::vector<std::pair<NodeId, BoundaryRole>> members; // declaration order

    friend bool operator==(const SystemDef& a, const SystemDef& b) = default;
};

// Grouping of nodes into named systems. Member sets are disjoint; nodes in
// no system are world nodes and carry no boundary constraints.
class SystemLayout {
  public:
    // Throws Error if the system name repeats or a member already belongs
    // to some system.
    void add_system(SystemDef s);

    const std::vector<SystemDef>& systems() const { return systems_; }
    bool empty() const { return systems_.empty(); }

    std::optional<std::string> system_of(const NodeId& v) const;
    std::optional<BoundaryRole> role_of(const NodeId& v) const;

    // Throws UnknownNodeError if a member is not a node of g.
    void validate_against(const Graph& g) const;

    friend bool operator==(const SystemLayout& a, const SystemLayout& b) {
        return a.systems_ == b.systems_;
    }

  private:
    std::vector<SystemDef> systems_;
};

enum class BoundaryViolationKind {
    Access, // cross-system edge reaches a non-passive member from outside
    Flow,   // cross-system edge leaves a non-active member
};

struct BoundaryViolation {
    BoundaryViolationKind kind;
    Edge edge;
    BoundaryRole role; // role of the offending endpoint

    friend bool operator==(const BoundaryViolation& a, const BoundaryViolation& b) = default;
};

// True iff a (hypothetical) edge u -> v would pass both boundary
// invariants under the layout.
bool boundary_edge_permitted(const NodeId& u, const NodeId& v, const SystemLayout& layout);

// All boundary violations, in edge declaration order; per edge the access
// violation precedes the flow violation. Validates the layout against g.
std::vector<BoundaryViolation> check_boundaries(const Graph& g, const SystemLayout& layout);

} // namespace archtaint
