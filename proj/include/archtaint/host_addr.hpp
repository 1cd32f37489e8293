// Copyright (c) archtaint contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace archtaint {

// IPv4 or IPv6 address with an optional CIDR prefix length. Equality is by
// address family, bytes and prefix; the original text is kept for output.
struct HostAddr {
    std::string text; // address part as written, without the /prefix
    bool ipv6 = false;
    std::array<std::uint8_t, 16> bytes{}; // IPv4 occupies the first 4 bytes
    std::optional<int> prefix;

    // Accepts "A.B.C.D", "A.B.C.D/N", IPv6 literals and "addr/N".
    // Throws Error on malformed input.
    static HostAddr parse(const std::string& s);
    static std::optional<HostAddr> try_parse(const std::string& s);

    std::string str() const;

    // Prefix match: with a prefix, true iff the leading prefix bits agree
    // (host bits of this address are ignored); without one, exact equality.
    bool contains(const HostAddr& other) const;

    friend bool operator==(const HostAddr& a, const HostAddr& b) {
        return a.ipv6 == b.ipv6 && a.bytes == b.bytes && a.prefix == b.prefix;
    }
};

} // namespace archtaint
