// Copyright (c) archtaint contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>

#include "archtaint/graph.hpp"
#include "archtaint/taint.hpp"

namespace archtaint {

// Security clearance level: 0 = unclassified, 1 = confidential, 2 = secret,
// higher levels permitted. Totally ordered by integer comparison.
using Clearance = unsigned int;

std::string clearance_name(Clearance c);

struct BlpAttr {
    Clearance clearance = 0;
    bool trusted = false;

    friend bool operator==(const BlpAttr& a, const BlpAttr& b) = default;
};

// Classical check: information may only flow to equal-or-higher clearance.
// Throws UnknownNodeError if an edge endpoint has no clearance.
bool check_blp(const Graph& g, const std::map<NodeId, Clearance>& sc);

// Variant with trusted entities: a trusted receiver may accept information
// of any clearance (it redistributes at its own level). Edge condition:
// trusted(v2) or clearance(v1) <= clearance(v2).
// Throws UnknownNodeError if an edge endpoint has no attribute.
bool check_blp_trusted(const Graph& g, const std::map<NodeId, BlpAttr>& attrs);

// Per-label projection of a taint spec to a BLP attribute:
// clearance 1 iff the label is effectively tainted, trusted iff untainted.
BlpAttr project_label(const Label& a, const TaintSpec& s);

// Generalized clearance: cardinality of the intersection of a subject's
// label set with a node's taint set.
Clearance project_label_set(const LabelSet& a_set, const LabelSet& ts);

// project_label applied pointwise to a total assignment.
std::map<NodeId, BlpAttr> project_assignment(const Label& a, const LabelAssignment& t);

// Returns check_tainting_full(g, t) and cross-checks it against the
// per-label BLP view: for every label of the universe, project and run
// check_blp_trusted. The two must agree on every input; a mismatch throws
// InternalInconsistencyError.
bool verify_equivalence(const Graph& g, const LabelAssignment& t);

} // namespace archtaint
