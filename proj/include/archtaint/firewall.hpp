// Copyright (c) archtaint contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "archtaint/arch_spec.hpp"
#include "archtaint/host_addr.hpp"

namespace archtaint {

enum class Chain { Input, Forward, Output };
enum class RuleTarget { Accept, Drop, Log };
enum class Proto { Tcp, Udp, Icmp };

std::string chain_name(Chain c);
std::string target_name(RuleTarget t);
std::string proto_name(Proto p);
std::optional<Proto> proto_from_name(const std::string& name);

struct PortRange {
    std::uint16_t lo = 0;
    std::uint16_t hi = 0;

    bool contains(std::uint16_t p) const { return lo <= p && p <= hi; }
    std::string str() const;

    friend bool operator==(const PortRange& a, const PortRange& b) = default;
};

// One rule of the restricted iptables-save dialect. LOG is non-terminating;
// ACCEPT and DROP terminate evaluation. A rule without a state match
// applies to packets in any state; established-only rules never match a
// connection's first packet.
struct FwRule {
    Chain chain = Chain::Input;
    bool established = false;
    bool match_related = false; // ESTABLISHED,RELATED instead of ESTABLISHED
    std::optional<HostAddr> src;
    std::optional<HostAddr> dst;
    std::optional<Proto> proto;
    std::optional<PortRange> dport;
    std::optional<PortRange> sport;
    std::optional<std::string> in_iface;
    std::optional<std::string> out_iface;
    RuleTarget target = RuleTarget::Accept;

    friend bool operator==(const FwRule& a, const FwRule& b) = default;
};

// First-match semantics per chain; unmatched packets fall to the chain
// policy. installed_on is deployment metadata and excluded from equality.
struct Ruleset {
    std::map<Chain, RuleTarget> policies = {
        {Chain::Input, RuleTarget::Drop},
        {Chain::Forward, RuleTarget::Drop},
        {Chain::Output, RuleTarget::Drop},
    };
    std::vector<FwRule> rules;
    std::optional<HostAddr> installed_on;

    friend bool operator==(const Ruleset& a, const Ruleset& b) {
        return a.policies == b.policies && a.rules == b.rules;
    }
};

// Host-local stateful ruleset for one machine of the architecture: all
// chain policies DROP; per inter-host edge touching the host, an ACCEPT
// for the initiating direction plus an ESTABLISHED ACCEPT for the replies.
// host names a node or is an address literal. Throws Error when the host
// cannot be resolved to an address.
Ruleset generate_ruleset(const ArchitectureSpec& spec, const std::string& host);

// Canonical iptables-save text; byte-stable for generated rulesets.
std::string serialize_ruleset(const Ruleset& rs);

// Parses the restricted dialect. Constructs outside it (other tables,
// unknown flags, match extensions, targets) raise UnsupportedFeatureError
// naming the token; rules are never silently skipped.
Ruleset parse_ruleset(const std::string& text);

struct Decision {
    bool allowed = false;
    std::vector<std::string> trace;
};

// Simulates one connection attempt against the ruleset installed on
// rs.installed_on: the first packet runs through OUTPUT (of the source
// host) or INPUT (destination host), and the connection counts as allowed
// only if the ESTABLISHED reply passes the reverse chain too. src = dst =
// host is treated as loopback traffic on interface "lo" through both
// chains. Unspecified protocol/port never matches a rule constraining that
// field. Throws Error when neither endpoint is the installed-on host.
Decision can_initiate(const Ruleset& rs, const HostAddr& src, const HostAddr& dst,
                      std::optional<Proto> proto, std::optional<std::uint16_t> dport);

struct Assertion {
    HostAddr src;
    HostAddr dst;
    std::optional<Proto> proto;
    std::optional<std::uint16_t> dport;
    bool expect_allowed = false;
    int line = 0;
};

// One assertion per line: SRC DST PROTO|- DPORT|- allowed|denied.
// '#' starts a comment.
std::vector<Assertion> parse_assertions(const std::string& text);

struct AuditEntry {
    Assertion assertion;
    bool passed = false;
    Decision decision;
    std::string error; // nonempty when can_initiate raised
};

struct AuditReport {
    std::vector<AuditEntry> entries;
    std::size_t failures = 0;

    bool passed() const { return failures == 0; }
};

// Evaluates every assertion; per-assertion errors are recorded as failures
// without aborting the batch.
AuditReport audit(const Ruleset& rs, const std::vector<Assertion>& assertions);

} // namespace archtaint
