// Copyright (c) archtaint contributors
// SPDX-License-Identifier: Apache-2.0

#include "archtaint/host_addr.hpp"

#include <arpa/inet.h>

#include <cstring>

#include "archtaint/errors.hpp"

namespace archtaint {

HostAddr HostAddr::parse(const std::string& s) {
    auto parsed = try_parse(s);
    if (!parsed)
        throw Error("invalid address: " + s);
    return *parsed;
}

std::optional<HostAddr> HostAddr::try_parse(const std::string& s) {
    HostAddr out;
    std::string addr_part = s;
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        addr_part = s.substr(0, slash);
        std::string prefix_part = s.substr(slash + 1);
        if (prefix_part.empty() || prefix_part.size() > 3)
            return std::nullopt;
        int value = 0;
        for (char c : prefix_part) {
            if (c < '0' || c > '9')
                return std::nullopt;
            value = value * 10 + (c - '0');
        }
        out.prefix = value;
    }

    unsigned char buf[16];
    if (inet_pton(AF_INET, addr_part.c_str(), buf) == 1) {
        out.ipv6 = false;
        std::memcpy(out.bytes.data(), buf, 4);
        if (out.prefix && (*out.prefix < 0 || *out.prefix > 32))
            return std::nullopt;
    } else if (inet_pton(AF_INET6, addr_part.c_str(), buf) == 1) {
        out.ipv6 = true;
        std::memcpy(out.bytes.data(), buf, 16);
        if (out.prefix && (*out.prefix < 0 || *out.prefix > 128))
            return std::nullopt;
    } else {
        return std::nullopt;
    }
    out.text = addr_part;
    return out;
}

std::string HostAddr::str() const {
    if (prefix)
        return text + "/" + std::to_string(*prefix);
    return text;
}

bool HostAddr::contains(const HostAddr& other) const {
    if (ipv6 != other.ipv6)
        return false;
    if (!prefix)
        return bytes == other.bytes;
    int bits = *prefix;
    int full = bits / 8;
    for (int i = 0; i < full; ++i) {
        if (bytes[static_cast<std::size_t>(i)] != other.bytes[static_cast<std::size_t>(i)])
            return false;
    }
    int rest = bits % 8;
    if (rest != 0) {
        std::uint8_t mask = static_cast<std::uint8_t>(0xff << (8 - rest));
        if ((bytes[static_cast<std::size_t>(full)] & mask) !=
            (other.bytes[static_cast<std::size_t>(full)] & mask))
            return false;
    }
    return true;
}

} // namespace archtaint
