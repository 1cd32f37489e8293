// Copyright (c) archtaint contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "archtaint/arch_spec.hpp"
#include "archtaint/blp.hpp"

namespace archtaint {

enum class FindingKind {
    TaintViolation,  // tainting condition broken on an edge
    AccessViolation, // cross-system edge into a non-passive member
    FlowViolation,   // cross-system edge out of a non-active member
    Lint,            // style-level issue, does not fail a check
};

// "taint-violation" | "ac-violation" | "ifs-violation" | "lint"
std::string finding_kind_name(FindingKind k);

struct Finding {
    FindingKind kind = FindingKind::TaintViolation;
    NodeId src;
    NodeId dst;
    LabelSet witness; // taint violations: effective(src) \ taints(dst)
    std::string note; // boundary violations: "role=..."; lints: text

    friend bool operator==(const Finding& a, const Finding& b) = default;
};

// Compact payload: "{location}", "role=internal", "self-loop".
std::string finding_witness_text(const Finding& f);

// One-line text: "taint-violation: A -> B, witness {location}".
std::string format_finding(const Finding& f);

// Tab-separated record: kind, src, dst, witness.
std::string format_finding_tsv(const Finding& f);

struct CheckReport {
    std::vector<Finding> findings; // taint, boundary, lints; edge order each
    std::size_t violations = 0;    // findings excluding lints

    bool passed() const { return violations == 0; }
};

// Expands crypto pairs, totalizes labels, runs the tainting check (with its
// per-label BLP cross-check), the boundary check, and the self-loop lint.
CheckReport run_checks(const ArchitectureSpec& spec);

// Subgraph of the components holding data of one label, with the per-label
// clearance/trusted annotation. Nodes qualify by tainting the label; edges
// qualify when the source effectively taints it.
struct UserView {
    bool label_known = false;
    Graph graph;
    std::map<NodeId, BlpAttr> attrs;
};

UserView user_view(const ArchitectureSpec& spec, const Label& a);

struct NodeMetrics {
    std::size_t taint_count = 0;
    bool pet = false; // privacy-enhancing component: nonempty untaints

    friend bool operator==(const NodeMetrics& a, const NodeMetrics& b) = default;
};

struct Metrics {
    std::map<NodeId, NodeMetrics> per_node;
    std::map<Label, std::size_t> exposure; // nodes tainting the label
    std::vector<NodeId> hotspots;          // >= 2 effective taints, sorted

    friend bool operator==(const Metrics& a, const Metrics& b) = default;
};

// Whether a PET actually anonymizes well is outside static reach; the pet
// flag only marks declared untainting.
Metrics criticality_metrics(const ArchitectureSpec& spec);

// DOT digraph: systems as clusters, node labels "name\n{X}-{Y}", edges
// named in findings drawn red with the witness as edge label.
std::string export_dot(const ArchitectureSpec& spec, const std::vector<Finding>& findings = {});

} // namespace archtaint
