// Copyright (c) archtaint contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "archtaint/graph.hpp"

namespace archtaint {

using Label = std::string;
using LabelSet = std::set<Label>;

class SystemLayout;

// Pair of label sets (taints X, untaints Y). Stored values always satisfy
// Y subset-of X: construction goes through normalize, which widens a user
// supplied X-Y to (X union Y)-Y.
class TaintSpec {
  public:
    TaintSpec() = default;

    static TaintSpec normalize(const LabelSet& x, const LabelSet& y);

    const LabelSet& taints() const { return taints_; }
    const LabelSet& untaints() const { return untaints_; }

    friend bool operator==(const TaintSpec& a, const TaintSpec& b) = default;

  private:
    LabelSet taints_;
    LabelSet untaints_;
};

// taints \ untaints: the labels carried by the node's outgoing data.
LabelSet effective_taints(const TaintSpec& s);

// "{a,b,c}" in lexicographic order; "{}" when empty.
std::string label_set_text(const LabelSet& ls);

// Mapping node -> TaintSpec. Partial until totalize has run.
class LabelAssignment {
  public:
    void assign(const NodeId& v, const TaintSpec& s);

    bool contains(const NodeId& v) const;

    // Throws UnknownNodeError if v has no entry.
    const TaintSpec& at(const NodeId& v) const;

    const std::map<NodeId, TaintSpec>& entries() const { return entries_; }
    bool total() const { return total_; }

    friend bool operator==(const LabelAssignment& a, const LabelAssignment& b) {
        return a.entries_ == b.entries_;
    }

  private:
    friend LabelAssignment totalize(const LabelAssignment& partial, const Graph& g);
    std::map<NodeId, TaintSpec> entries_;
    bool total_ = false;
};

// Fills every unmapped node of g with the empty default {}-{}. The empty
// default is what lets the analysis uncover flows into unlabeled nodes.
// Throws UnknownNodeError if partial mentions a node not in g.
LabelAssignment totalize(const LabelAssignment& partial, const Graph& g);

// Union of all taints sets (untaints are covered via normalization).
LabelSet label_universe(const LabelAssignment& t);

// Simple model, closure form: every node reachable from v carries all of
// v's taints. Ignores untaint sets.
bool check_tainting_closure(const Graph& g, const LabelAssignment& t);

// Simple model, localized form: per edge (v1,v2), taints(v1) subset-of
// taints(v2). Equivalent to the closure form on every well-formed input.
bool check_tainting_local(const Graph& g, const LabelAssignment& t);

// Full model with untainting: per edge (v1,v2),
// effective_taints(v1) subset-of taints(v2).
bool check_tainting_full(const Graph& g, const LabelAssignment& t);

struct TaintViolation {
    Edge edge;
    LabelSet witness; // effective_taints(src) \ taints(dst), never empty

    friend bool operator==(const TaintViolation& a, const TaintViolation& b) = default;
};

// Violations of the full model in edge declaration order.
std::vector<TaintViolation> taint_violations(const Graph& g, const LabelAssignment& t);

// The edges responsible for the violation; empty iff check_tainting_full holds.
std::vector<Edge> offending_flows(const Graph& g, const LabelAssignment& t);

// Removes exactly the offending flows. The result satisfies
// check_tainting_full and is the unique maximal edge subset doing so.
Graph repair(const Graph& g, const LabelAssignment& t);

// All permitted flows: every ordered pair (u,v), u != v, that satisfies the
// full tainting condition and, when a layout is given, both boundary
// invariants. Self-loops are excluded.
Graph synthesize_max_policy(const std::vector<NodeId>& nodes, const LabelAssignment& t,
                            const SystemLayout* systems = nullptr);

} // namespace archtaint
