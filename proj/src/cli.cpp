// Copyright (c) archtaint contributors
// SPDX-License-Identifier: Apache-2.0

#include "archtaint/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "archtaint/arch_spec.hpp"
#include "archtaint/blp.hpp"
#include "archtaint/errors.hpp"
#include "archtaint/firewall.hpp"
#include "archtaint/report.hpp"

namespace archtaint {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ArchitectureSpec load_spec(const std::string& path, std::ostream& err) {
    std::vector<Diagnostic> warnings;
    ArchitectureSpec spec = parse_spec(read_file(path), &warnings);
    for (const Diagnostic& w : warnings)
        err << "warning: " << path << ":" << w.line << ": " << w.message << "\n";
    return spec;
}

int cmd_check(const std::string& file, const std::string& format, bool paranoid,
              std::ostream& out, std::ostream& err) {
    ArchitectureSpec spec = load_spec(file, err);
    CheckReport rep = run_checks(spec);
    if (paranoid) {
        ArchitectureSpec ex = expand_crypto_pairs(spec);
        LabelAssignment total = totalize(ex.labels, ex.graph);
        if (check_tainting_closure(ex.graph, total) != check_tainting_local(ex.graph, total))
            throw InternalInconsistencyError("closure and localized checks disagree");
    }
    if (format == "tsv") {
        for (const Finding& f : rep.findings)
            out << format_finding_tsv(f) << "\n";
    } else {
        for (const Finding& f : rep.findings)
            out << format_finding(f) << "\n";
        out << rep.violations << (rep.violations == 1 ? " violation" : " violations") << "\n";
    }
    return rep.passed() ? 0 : 1;
}

int cmd_flows(const std::string& file, std::ostream& out, std::ostream& err) {
    ArchitectureSpec spec = load_spec(file, err);
    ArchitectureSpec ex = expand_crypto_pairs(spec);
    LabelAssignment total = totalize(ex.labels, ex.graph);
    Graph g = synthesize_max_policy(ex.graph.nodes(), total, &ex.layout);
    for (const Edge& e : g.edges())
        out << e.src << " -> " << e.dst << "\n";
    return 0;
}

int cmd_repair(const std::string& file, const std::string& out_path, std::ostream& out,
               std::ostream& err) {
    ArchitectureSpec spec = load_spec(file, err);
    ArchitectureSpec ex = expand_crypto_pairs(spec);
    LabelAssignment total = totalize(ex.labels, ex.graph);

    std::vector<Edge> victims;
    auto remove = [&victims](const Edge& e) {
        for (const Edge& v : victims) {
            if (v == e)
                return;
        }
        victims.push_back(e);
    };
    for (const TaintViolation& v : taint_violations(ex.graph, total)) {
        err << "removing: "
            << format_finding(Finding{FindingKind::TaintViolation, v.edge.src, v.edge.dst,
                                      v.witness, ""})
            << "\n";
        remove(v.edge);
    }
    for (const BoundaryViolation& b : check_boundaries(ex.graph, ex.layout)) {
        FindingKind kind = b.kind == BoundaryViolationKind::Access ? FindingKind::AccessViolation
                                                                   : FindingKind::FlowViolation;
        err << "removing: "
            << format_finding(Finding{kind, b.edge.src, b.edge.dst, {}, "role=" + role_name(b.role)})
            << "\n";
        remove(b.edge);
    }

    ArchitectureSpec repaired = spec;
    repaired.graph = spec.graph.remove_edges(victims);
    std::string doc = serialize_spec(repaired);
    if (out_path.empty()) {
        out << doc;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f)
            throw Error("cannot write file: " + out_path);
        f << doc;
    }
    return 0;
}

int cmd_view(const std::string& file, const std::string& label, std::ostream& out,
             std::ostream& err) {
    ArchitectureSpec spec = load_spec(file, err);
    UserView view = user_view(spec, label);
    if (!view.label_known) {
        err << "warning: unknown label: " << label << "\n";
        return 0;
    }
    for (const NodeId& v : view.graph.nodes()) {
        const BlpAttr& a = view.attrs.at(v);
        out << "node " << v << " clearance=" << clearance_name(a.clearance);
        if (a.trusted)
            out << " trusted";
        out << "\n";
    }
    for (const Edge& e : view.graph.edges())
        out << "edge " << e.src << " -> " << e.dst << "\n";
    return 0;
}

int cmd_metrics(const std::string& file, std::ostream& out, std::ostream& err) {
    ArchitectureSpec spec = load_spec(file, err);
    Metrics m = criticality_metrics(spec);
    for (const NodeId& v : spec.graph.nodes()) {
        const NodeMetrics& nm = m.per_node.at(v);
        out << "node " << v << " taint-count=" << nm.taint_count;
        if (nm.pet)
            out << " pet";
        out << "\n";
    }
    for (const auto& [a, n] : m.exposure)
        out << "label " << a << " exposure=" << n << "\n";
    for (const NodeId& h : m.hotspots)
        out << "hotspot " << h << "\n";
    return 0;
}

int cmd_dot(const std::string& file, bool with_findings, std::ostream& out, std::ostream& err) {
    ArchitectureSpec spec = load_spec(file, err);
    std::vector<Finding> findings;
    if (with_findings)
        findings = run_checks(spec).findings;
    out << export_dot(spec, findings);
    return 0;
}

int cmd_fw_gen(const std::string& file, const std::string& host, std::ostream& out,
               std::ostream& err) {
    ArchitectureSpec spec = load_spec(file, err);
    CheckReport rep = run_checks(spec);
    if (!rep.passed()) {
        for (const Finding& f : rep.findings)
            err << format_finding(f) << "\n";
        err << "refusing to generate a ruleset for a violating model\n";
        return 1;
    }
    Ruleset rs = generate_ruleset(spec, host);
    out << serialize_ruleset(rs);
    return 0;
}

int cmd_fw_audit(const std::string& rules_path, const std::string& on_addr,
                 const std::string& assert_path, std::ostream& out, std::ostream& err) {
    (void)err;
    Ruleset rs = parse_ruleset(read_file(rules_path));
    rs.installed_on = HostAddr::parse(on_addr);
    std::vector<Assertion> assertions = parse_assertions(read_file(assert_path));
    AuditReport rep = audit(rs, assertions);
    for (const AuditEntry& entry : rep.entries) {
        const Assertion& a = entry.assertion;
        std::string desc = a.src.str() + " -> " + a.dst.str() + " " +
                           (a.proto ? proto_name(*a.proto) : "-") + " " +
                           (a.dport ? std::to_string(*a.dport) : "-") + " " +
                           (a.expect_allowed ? "allowed" : "denied");
        if (entry.passed) {
            out << "PASS " << desc << "\n";
            continue;
        }
        out << "FAIL " << desc;
        if (!entry.error.empty())
            out << " (error: " << entry.error << ")";
        else
            out << " (got " << (entry.decision.allowed ? "allowed" : "denied") << ")";
        out << "\n";
        for (const std::string& t : entry.decision.trace)
            out << "    " << t << "\n";
    }
    out << rep.entries.size() << (rep.entries.size() == 1 ? " assertion, " : " assertions, ")
        << rep.failures << (rep.failures == 1 ? " failure" : " failures") << "\n";
    return rep.passed() ? 0 : 1;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Static privacy analyzer for software architectures", "archtaint"};
    app.require_subcommand(1);

    std::string file;
    std::string format = "text";
    std::string label;
    std::string host;
    std::string on_addr;
    std::string assert_path;
    std::string out_path;
    bool paranoid = false;
    bool with_findings = false;

    CLI::App* check = app.add_subcommand("check", "Run tainting and boundary checks");
    check->add_option("file", file, "architecture document")->required();
    check->add_option("--format", format, "output format: text or tsv")
        ->check(CLI::IsMember({"text", "tsv"}));
    check->add_flag("--paranoid", paranoid,
                    "cross-check the localized invariant against the closure form");

    CLI::App* flows = app.add_subcommand("flows", "Print all permitted flows");
    flows->add_option("file", file, "architecture document")->required();

    CLI::App* repair = app.add_subcommand("repair", "Remove violating flows and emit the result");
    repair->add_option("file", file, "architecture document")->required();
    repair->add_option("--out", out_path, "write the repaired document to this path");

    CLI::App* view = app.add_subcommand("view", "Per-label view of the architecture");
    view->add_option("file", file, "architecture document")->required();
    view->add_option("--label", label, "taint label")->required();

    CLI::App* metrics = app.add_subcommand("metrics", "Print criticality metrics");
    metrics->add_option("file", file, "architecture document")->required();

    CLI::App* dot = app.add_subcommand("dot", "Emit the architecture as DOT");
    dot->add_option("file", file, "architecture document")->required();
    dot->add_flag("--findings", with_findings, "color violating edges");

    CLI::App* fw_gen = app.add_subcommand("fw-gen", "Generate a host-local firewall ruleset");
    fw_gen->add_option("file", file, "architecture document")->required();
    fw_gen->add_option("--host", host, "node name or address of the target host")->required();

    CLI::App* fw_audit = app.add_subcommand("fw-audit", "Audit a ruleset against assertions");
    fw_audit->add_option("rules", file, "ruleset file")->required();
    fw_audit->add_option("--on", on_addr, "address the ruleset is installed on")->required();
    fw_audit->add_option("--assert", assert_path, "assertion file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (check->parsed())
            return cmd_check(file, format, paranoid, out, err);
        if (flows->parsed())
            return cmd_flows(file, out, err);
        if (repair->parsed())
            return cmd_repair(file, out_path, out, err);
        if (view->parsed())
            return cmd_view(file, label, out, err);
        if (metrics->parsed())
            return cmd_metrics(file, out, err);
        if (dot->parsed())
            return cmd_dot(file, with_findings, out, err);
        if (fw_gen->parsed())
            return cmd_fw_gen(file, host, out, err);
        if (fw_audit->parsed())
            return cmd_fw_audit(file, on_addr, assert_path, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace archtaint
