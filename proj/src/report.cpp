// Copyright (c) archtaint contributors
// SPDX-License-Identifier: Apache-2.0

#include "archtaint/report.hpp"

#include <algorithm>

#include "archtaint/errors.hpp"

namespace archtaint {

std::string finding_kind_name(FindingKind k) {
    switch (k) {
    case FindingKind::TaintViolation:
        return "taint-violation";
    case FindingKind::AccessViolation:
        return "ac-violation";
    case FindingKind::FlowViolation:
        return "ifs-violation";
    case FindingKind::Lint:
        return "lint";
    }
    return "lint";
}

std::string finding_witness_text(const Finding& f) {
    if (f.kind == FindingKind::TaintViolation)
        return label_set_text(f.witness);
    return f.note;
}

std::string format_finding(const Finding& f) {
    std::string detail = f.kind == FindingKind::TaintViolation
                             ? "witness " + finding_witness_text(f)
                             : finding_witness_text(f);
    return finding_kind_name(f.kind) + ": " + f.src + " -> " + f.dst + ", " + detail;
}

std::string format_finding_tsv(const Finding& f) {
    return finding_kind_name(f.kind) + "\t" + f.src + "\t" + f.dst + "\t" +
           finding_witness_text(f);
}

CheckReport run_checks(const ArchitectureSpec& spec) {
    ArchitectureSpec ex = expand_crypto_pairs(spec);
    LabelAssignment total = totalize(ex.labels, ex.graph);
    verify_equivalence(ex.graph, total);

    CheckReport rep;
    for (const TaintViolation& v : taint_violations(ex.graph, total))
        rep.findings.push_back(
            Finding{FindingKind::TaintViolation, v.edge.src, v.edge.dst, v.witness, ""});
    for (const BoundaryViolation& b : check_boundaries(ex.graph, ex.layout)) {
        FindingKind kind = b.kind == BoundaryViolationKind::Access ? FindingKind::AccessViolation
                                                                   : FindingKind::FlowViolation;
        rep.findings.push_back(
            Finding{kind, b.edge.src, b.edge.dst, {}, "role=" + role_name(b.role)});
    }
    rep.violations = rep.findings.size();
    for (const Edge& e : ex.graph.self_loops())
        rep.findings.push_back(Finding{FindingKind::Lint, e.src, e.dst, {}, "self-loop"});
    return rep;
}

UserView user_view(const ArchitectureSpec& spec, const Label& a) {
    ArchitectureSpec ex = expand_crypto_pairs(spec);
    LabelAssignment total = totalize(ex.labels, ex.graph);

    UserView view;
    view.label_known = label_universe(total).count(a) != 0;
    if (!view.label_known)
        return view;
    for (const NodeId& v : ex.graph.nodes()) {
        const TaintSpec& s = total.at(v);
        if (s.taints().count(a)) {
            view.graph.add_node(v);
            view.attrs[v] = project_label(a, s);
        }
    }
    for (const Edge& e : ex.graph.edges()) {
        if (!view.graph.has_node(e.src) || !view.graph.has_node(e.dst))
            continue;
        if (effective_taints(total.at(e.src)).count(a))
            view.graph.add_edge(e);
    }
    return view;
}

Metrics criticality_metrics(const ArchitectureSpec& spec) {
    ArchitectureSpec ex = expand_crypto_pairs(spec);
    LabelAssignment total = totalize(ex.labels, ex.graph);

    Metrics m;
    for (const NodeId& v : ex.graph.nodes()) {
        const TaintSpec& s = total.at(v);
        m.per_node[v] = NodeMetrics{s.taints().size(), !s.untaints().empty()};
        for (const Label& a : s.taints())
            ++m.exposure[a];
        if (effective_taints(s).size() >= 2)
            m.hotspots.push_back(v);
    }
    std::sort(m.hotspots.begin(), m.hotspots.end());
    return m;
}

namespace {

std::string quoted(const std::string& s) {
    return "\"" + s + "\"";
}

std::string dot_node_line(const NodeId& v, const LabelAssignment& total) {
    const TaintSpec& s = total.at(v);
    return quoted(v) + " [label=\"" + v + "\\n" + label_set_text(s.taints()) + "-" +
           label_set_text(s.untaints()) + "\"];";
}

} // namespace

std::string export_dot(const ArchitectureSpec& spec, const std::vector<Finding>& findings) {
    ArchitectureSpec ex = expand_crypto_pairs(spec);
    LabelAssignment total = totalize(ex.labels, ex.graph);

    std::string out = "digraph architecture {\n";
    out += "  rankdir=LR;\n";
    std::size_t cluster = 0;
    for (const SystemDef& s : ex.layout.systems()) {
        out += "  subgraph cluster_" + std::to_string(cluster++) + " {\n";
        out += "    label=" + quoted(s.name) + ";\n";
        for (const auto& [member, role] : s.members) {
            (void)role;
            out += "    " + dot_node_line(member, total) + "\n";
        }
        out += "  }\n";
    }
    for (const NodeId& v : ex.graph.nodes()) {
        if (!ex.layout.system_of(v))
            out += "  " + dot_node_line(v, total) + "\n";
    }
    for (const Edge& e : ex.graph.edges()) {
        const Finding* hit = nullptr;
        for (const Finding& f : findings) {
            if (f.src == e.src && f.dst == e.dst) {
                hit = &f;
                break;
            }
        }
        out += "  " + quoted(e.src) + " -> " + quoted(e.dst);
        if (hit != nullptr)
            out += " [color=red, label=\"" + finding_witness_text(*hit) + "\"]";
        out += ";\n";
    }
    out += "}\n";
    return out;
}

} // namespace archtaint
