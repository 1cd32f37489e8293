// Copyright (c) archtaint contributors
// SPDX-License-Identifier: Apache-2.0

#include "archtaint/firewall.hpp"

#include <sstream>

#include "archtaint/errors.hpp"

namespace archtaint {

std::string chain_name(Chain c) {
    switch (c) {
    case Chain::Input:
        return "INPUT";
    case Chain::Forward:
        return "FORWARD";
    case Chain::Output:
        return "OUTPUT";
    }
    return "INPUT";
}

std::string target_name(RuleTarget t) {
    switch (t) {
    case RuleTarget::Accept:
        return "ACCEPT";
    case RuleTarget::Drop:
        return "DROP";
    case RuleTarget::Log:
        return "LOG";
    }
    return "ACCEPT";
}

std::string proto_name(Proto p) {
    switch (p) {
    case Proto::Tcp:
        return "tcp";
    case Proto::Udp:
        return "udp";
    case Proto::Icmp:
        return "icmp";
    }
    return "tcp";
}

std::optional<Proto> proto_from_name(const std::string& name) {
    if (name == "tcp")
        return Proto::Tcp;
    if (name == "udp")
        return Proto::Udp;
    if (name == "icmp")
        return Proto::Icmp;
    return std::nullopt;
}

std::string PortRange::str() const {
    if (lo == hi)
        return std::to_string(lo);
    return std::to_string(lo) + ":" + std::to_string(hi);
}

namespace {

std::optional<Chain> chain_from_name(const std::string& name) {
    if (name == "INPUT")
        return Chain::Input;
    if (name == "FORWARD")
        return Chain::Forward;
    if (name == "OUTPUT")
        return Chain::Output;
    return std::nullopt;
}

} // namespace

Ruleset generate_ruleset(const ArchitectureSpec& spec, const std::string& host) {
    std::optional<HostAddr> target;
    if (spec.graph.has_node(host)) {
        auto it = spec.hosts.find(host);
        if (it == spec.hosts.end())
            throw Error("node has no host address: " + host);
        target = it->second;
    } else {
        target = HostAddr::try_parse(host);
        if (!target)
            throw Error("unknown host: " + host);
    }

    Ruleset rs;
    rs.installed_on = *target;
    for (const Edge& e : spec.graph.edges()) {
        auto su = spec.hosts.find(e.src);
        auto sv = spec.hosts.find(e.dst);
        if (su == spec.hosts.end() || sv == spec.hosts.end())
            continue;
        const HostAddr& au = su->second;
        const HostAddr& av = sv->second;
        if (au == av)
            continue;
        if (au == *target) {
            FwRule out;
            out.chain = Chain::Output;
            out.src = au;
            out.dst = av;
            rs.rules.push_back(out);
            FwRule reply;
            reply.chain = Chain::Input;
            reply.established = true;
            reply.src = av;
            reply.dst = au;
            rs.rules.push_back(reply);
        } else if (av == *target) {
            FwRule in;
            in.chain = Chain::Input;
            in.src = au;
            in.dst = av;
            rs.rules.push_back(in);
            FwRule reply;
            reply.chain = Chain::Output;
            reply.established = true;
            reply.src = av;
            reply.dst = au;
            rs.rules.push_back(reply);
        }
    }
    return rs;
}

std::string serialize_ruleset(const Ruleset& rs) {
    std::string out = "*filter\n";
    for (Chain c : {Chain::Input, Chain::Forward, Chain::Output})
        out += ":" + chain_name(c) + " " + target_name(rs.policies.at(c)) + " [0:0]\n";
    for (const FwRule& r : rs.rules) {
        out += "-A " + chain_name(r.chain);
        if (r.established)
            out += std::string(" -m state --state ESTABLISHED") +
                   (r.match_related ? ",RELATED" : "");
        if (r.src)
            out += " -s " + r.src->str();
        if (r.dst)
            out += " -d " + r.dst->str();
        if (r.proto)
            out += " -p " + proto_name(*r.proto);
        if (r.dport)
            out += " --dport " + r.dport->str();
        if (r.sport)
            out += " --sport " + r.sport->str();
        if (r.in_iface)
            out += " -i " + *r.in_iface;
        if (r.out_iface)
            out += " -o " + *r.out_iface;
        out += " -j " + target_name(r.target) + "\n";
    }
    out += "COMMIT\n";
    return out;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

PortRange parse_port_range(const std::string& text, int lineno) {
    auto parse_one = [&](const std::string& part) -> std::uint16_t {
        if (part.empty() || part.size() > 5)
            throw ParseError(lineno, 1, "invalid port: " + text);
        unsigned value = 0;
        for (char c : part) {
            if (c < '0' || c > '9')
                throw ParseError(lineno, 1, "invalid port: " + text);
            value = value * 10 + static_cast<unsigned>(c - '0');
        }
        if (value > 65535)
            throw ParseError(lineno, 1, "invalid port: " + text);
        return static_cast<std::uint16_t>(value);
    };
    PortRange r;
    auto colon = text.find(':');
    if (colon == std::string::npos) {
        r.lo = r.hi = parse_one(text);
    } else {
        r.lo = parse_one(text.substr(0, colon));
        r.hi = parse_one(text.substr(colon + 1));
    }
    if (r.lo > r.hi)
        throw ParseError(lineno, 1, "invalid port range: " + text);
    return r;
}

HostAddr parse_rule_addr(const std::string& text, int lineno) {
    auto addr = HostAddr::try_parse(text);
    if (!addr)
        throw ParseError(lineno, 1, "invalid address: " + text);
    return *addr;
}

FwRule parse_append(const std::vector<std::string>& toks, int lineno) {
    auto arg = [&](std::size_t i, const std::string& flag) -> const std::string& {
        if (i >= toks.size())
            throw ParseError(lineno, 1, "missing argument for " + flag);
        return toks[i];
    };

    FwRule r;
    auto chain = chain_from_name(arg(1, "-A"));
    if (!chain)
        throw UnsupportedFeatureError("chain " + toks[1]);
    r.chain = *chain;
    bool have_target = false;

    std::size_t i = 2;
    while (i < toks.size()) {
        const std::string& t = toks[i];
        if (t == "-s") {
            r.src = parse_rule_addr(arg(i + 1, t), lineno);
            i += 2;
        } else if (t == "-d") {
            r.dst = parse_rule_addr(arg(i + 1, t), lineno);
            i += 2;
        } else if (t == "-p") {
            auto p = proto_from_name(arg(i + 1, t));
            if (!p)
                throw UnsupportedFeatureError("-p " + toks[i + 1]);
            r.proto = *p;
            i += 2;
        } else if (t == "-m") {
            const std::string& ext = arg(i + 1, t);
            if (ext == "state") {
                if (arg(i + 2, "-m state") != "--state")
                    throw UnsupportedFeatureError("-m state " + toks[i + 2]);
                std::string value = arg(i + 3, "--state");
                i += 4;
                // tolerate the two-token spelling "ESTABLISHED, RELATED"
                if (value == "ESTABLISHED," && i < toks.size() && toks[i] == "RELATED") {
                    value = "ESTABLISHED,RELATED";
                    ++i;
                }
                if (value == "ESTABLISHED") {
                    r.established = true;
                } else if (value == "ESTABLISHED,RELATED") {
                    r.established = true;
                    r.match_related = true;
                } else {
                    throw UnsupportedFeatureError("--state " + value);
                }
            } else if (ext == "tcp" || ext == "udp") {
                // port-match extension; ports are handled via --dport/--sport
                i += 2;
            } else {
                throw UnsupportedFeatureError("-m " + ext);
            }
        } else if (t == "--dport") {
            r.dport = parse_port_range(arg(i + 1, t), lineno);
            i += 2;
        } else if (t == "--sport") {
            r.sport = parse_port_range(arg(i + 1, t), lineno);
            i += 2;
        } else if (t == "-i") {
            r.in_iface = arg(i + 1, t);
            i += 2;
        } else if (t == "-o") {
            r.out_iface = arg(i + 1, t);
            i += 2;
        } else if (t == "-j") {
            const std::string& name = arg(i + 1, t);
            if (name == "ACCEPT")
                r.target = RuleTarget::Accept;
            else if (name == "DROP")
                r.target = RuleTarget::Drop;
            else if (name == "LOG")
                r.target = RuleTarget::Log;
            else
                throw UnsupportedFeatureError("-j " + name);
            have_target = true;
            i += 2;
        } else {
            throw UnsupportedFeatureError(t);
        }
    }
    if (!have_target)
        throw ParseError(lineno, 1, "rule has no -j target");
    return r;
}

} // namespace

Ruleset parse_ruleset(const std::string& text) {
    Ruleset rs;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool in_filter = false;
    bool committed = false;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r')
            raw.pop_back();
        std::vector<std::string> toks = split_ws(raw);
        if (toks.empty() || toks[0][0] == '#')
            continue;
        const std::string& head = toks[0];
        if (head[0] == '*') {
            std::string table = head.substr(1);
            if (table != "filter")
                throw UnsupportedFeatureError("table *" + table);
            in_filter = true;
            committed = false;
            continue;
        }
        if (head == "COMMIT") {
            if (!in_filter)
                throw ParseError(lineno, 1, "COMMIT outside a table");
            committed = true;
            continue;
        }
        if (!in_filter)
            throw ParseError(lineno, 1, "statement outside a table (missing *filter)");
        if (committed)
            throw ParseError(lineno, 1, "statement after COMMIT");
        if (head[0] == ':') {
            auto chain = chain_from_name(head.substr(1));
            if (!chain)
                throw UnsupportedFeatureError("chain " + head.substr(1));
            if (toks.size() < 2)
                throw ParseError(lineno, 1, "policy line needs a target");
            if (toks[1] == "ACCEPT")
                rs.policies[*chain] = RuleTarget::Accept;
            else if (toks[1] == "DROP")
                rs.policies[*chain] = RuleTarget::Drop;
            else
                throw UnsupportedFeatureError("policy " + toks[1]);
            continue;
        }
        if (head == "-A") {
            rs.rules.push_back(parse_append(toks, lineno));
            continue;
        }
        throw ParseError(lineno, 1, "unrecognized line: " + head);
    }
    if (in_filter && !committed)
        throw ParseError(lineno, 1, "missing COMMIT");
    return rs;
}

namespace {

struct Packet {
    HostAddr src;
    HostAddr dst;
    std::optional<Proto> proto;
    std::optional<std::uint16_t> dport;
    std::optional<std::uint16_t> sport;
    bool established = false;
    std::optional<std::string> in_iface;
    std::optional<std::string> out_iface;
};

bool rule_matches(const FwRule& r, Chain chain, const Packet& p) {
    if (r.chain != chain)
        return false;
    if (r.established && !p.established)
        return false;
    if (r.src && !r.src->contains(p.src))
        return false;
    if (r.dst && !r.dst->contains(p.dst))
        return false;
    if (r.proto && (!p.proto || *p.proto != *r.proto))
        return false;
    if (r.dport && (!p.dport || !r.dport->contains(*p.dport)))
        return false;
    if (r.sport && (!p.sport || !r.sport->contains(*p.sport)))
        return false;
    if (r.in_iface && (!p.in_iface || *p.in_iface != *r.in_iface))
        return false;
    if (r.out_iface && (!p.out_iface || *p.out_iface != *r.out_iface))
        return false;
    return true;
}

RuleTarget eval_chain(const Ruleset& rs, Chain chain, const Packet& p, const std::string& phase,
                      std::vector<std::string>& trace) {
    for (std::size_t i = 0; i < rs.rules.size(); ++i) {
        const FwRule& r = rs.rules[i];
        if (!rule_matches(r, chain, p))
            continue;
        if (r.target == RuleTarget::Log) {
            trace.push_back(phase + " " + chain_name(chain) + ": rule " + std::to_string(i + 1) +
                            " LOG (continuing)");
            continue;
        }
        trace.push_back(phase + " " + chain_name(chain) + ": rule " + std::to_string(i + 1) + " " +
                        target_name(r.target));
        return r.target;
    }
    RuleTarget policy = rs.policies.at(chain);
    trace.push_back(phase + " " + chain_name(chain) + ": policy " + target_name(policy));
    return policy;
}

} // namespace

Decision can_initiate(const Ruleset& rs, const HostAddr& src, const HostAddr& dst,
                      std::optional<Proto> proto, std::optional<std::uint16_t> dport) {
    if (!rs.installed_on)
        throw Error("ruleset has no installed-on host");
    const HostAddr& host = *rs.installed_on;
    bool from_host = src == host;
    bool to_host = dst == host;
    if (!from_host && !to_host)
        throw Error("neither endpoint is the installed-on host: " + src.str() + " -> " +
                    dst.str());
    bool loopback = from_host && to_host;

    Decision d;

    Packet first;
    first.src = src;
    first.dst = dst;
    first.proto = proto;
    first.dport = dport;
    if (loopback) {
        first.out_iface = "lo";
        first.in_iface = "lo";
    }

    bool first_ok;
    if (loopback) {
        first_ok = eval_chain(rs, Chain::Output, first, "new", d.trace) == RuleTarget::Accept &&
                   eval_chain(rs, Chain::Input, first, "new", d.trace) == RuleTarget::Accept;
    } else if (from_host) {
        first_ok = eval_chain(rs, Chain::Output, first, "new", d.trace) == RuleTarget::Accept;
    } else {
        first_ok = eval_chain(rs, Chain::Input, first, "new", d.trace) == RuleTarget::Accept;
    }
    if (!first_ok)
        return d;

    Packet reply;
    reply.src = dst;
    reply.dst = src;
    reply.proto = proto;
    reply.sport = dport;
    reply.established = true;
    if (loopback) {
        reply.out_iface = "lo";
        reply.in_iface = "lo";
        d.allowed =
            eval_chain(rs, Chain::Output, reply, "reply", d.trace) == RuleTarget::Accept &&
            eval_chain(rs, Chain::Input, reply, "reply", d.trace) == RuleTarget::Accept;
    } else if (from_host) {
        d.allowed = eval_chain(rs, Chain::Input, reply, "reply", d.trace) == RuleTarget::Accept;
    } else {
        d.allowed = eval_chain(rs, Chain::Output, reply, "reply", d.trace) == RuleTarget::Accept;
    }
    return d;
}

std::vector<Assertion> parse_assertions(const std::string& text) {
    std::vector<Assertion> out;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw = raw.substr(0, hash);
        std::vector<std::string> toks = split_ws(raw);
        if (toks.empty())
            continue;
        if (toks.size() != 5)
            throw ParseError(lineno, 1,
                             "expected: SRC DST PROTO|- DPORT|- allowed|denied");
        Assertion a;
        a.line = lineno;
        a.src = parse_rule_addr(toks[0], lineno);
        a.dst = parse_rule_addr(toks[1], lineno);
        if (toks[2] != "-") {
            auto p = proto_from_name(toks[2]);
            if (!p)
                throw ParseError(lineno, 1, "unknown protocol: " + toks[2]);
            a.proto = *p;
        }
        if (toks[3] != "-") {
            PortRange r = parse_port_range(toks[3], lineno);
            if (r.lo != r.hi)
                throw ParseError(lineno, 1, "assertion port must be a single port");
            a.dport = r.lo;
        }
        if (toks[4] == "allowed")
            a.expect_allowed = true;
        else if (toks[4] == "denied")
            a.expect_allowed = false;
        else
            throw ParseError(lineno, 1, "expected allowed|denied, got " + toks[4]);
        out.push_back(a);
    }
    return out;
}

AuditReport audit(const Ruleset& rs, const std::vector<Assertion>& assertions) {
    AuditReport report;
    for (const Assertion& a : assertions) {
        AuditEntry entry;
        entry.assertion = a;
        try {
            entry.decision = can_initiate(rs, a.src, a.dst, a.proto, a.dport);
            entry.passed = entry.decision.allowed == a.expect_allowed;
        } catch (const Error& e) {
            entry.passed = false;
            entry.error = e.what();
        }
        if (!entry.passed)
            ++report.failures;
        report.entries.push_back(std::move(entry));
    }
    return report;
}

} // namespace archtaint
