// Copyright (c) archtaint contributors
// SPDX-License-Identifier: Apache-2.0

#include "archtaint/arch_spec.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <utility>

#include "archtaint/errors.hpp"

namespace archtaint {

namespace {

struct Token {
    enum class Kind { Name, LBrace, RBrace, Comma, Colon, Equals, Arrow, End };
    Kind kind = Kind::End;
    std::string text;
    int col = 0;
};

bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
}

class LineScanner {
  public:
    LineScanner(std::string line, int lineno) : line_(std::move(line)), lineno_(lineno) {}

    int lineno() const { return lineno_; }

    const Token& peek() {
        if (!peeked_)
            peeked_ = scan();
        return *peeked_;
    }

    Token next() {
        Token t = peek();
        peeked_.reset();
        return t;
    }

    // Raw run of characters up to whitespace or '#'; used for host
    // addresses, which may contain ':' and '/'.
    std::pair<std::string, int> next_word() {
        peeked_.reset();
        skip_ws();
        int col = static_cast<int>(pos_) + 1;
        std::string word;
        while (pos_ < line_.size() && !std::isspace(static_cast<unsigned char>(line_[pos_])) &&
               line_[pos_] != '#') {
            word += line_[pos_];
            ++pos_;
        }
        if (word.empty())
            throw ParseError(lineno_, col, "expected a value");
        return {word, col};
    }

  private:
    void skip_ws() {
        while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_])))
            ++pos_;
    }

    Token scan() {
        skip_ws();
        Token t;
        t.col = static_cast<int>(pos_) + 1;
        if (pos_ >= line_.size() || line_[pos_] == '#') {
            t.kind = Token::Kind::End;
            return t;
        }
        char c = line_[pos_];
        switch (c) {
        case '{':
            ++pos_;
            t.kind = Token::Kind::LBrace;
            return t;
        case '}':
            ++pos_;
            t.kind = Token::Kind::RBrace;
            return t;
        case ',':
            ++pos_;
            t.kind = Token::Kind::Comma;
            return t;
        case ':':
            ++pos_;
            t.kind = Token::Kind::Colon;
            return t;
        case '=':
            ++pos_;
            t.kind = Token::Kind::Equals;
            return t;
        default:
            break;
        }
        if (c == '-' && pos_ + 1 < line_.size() && line_[pos_ + 1] == '>') {
            pos_ += 2;
            t.kind = Token::Kind::Arrow;
            return t;
        }
        if (name_char(c)) {
            t.kind = Token::Kind::Name;
            while (pos_ < line_.size() && name_char(line_[pos_])) {
                if (line_[pos_] == '-' && pos_ + 1 < line_.size() && line_[pos_ + 1] == '>')
                    break;
                t.text += line_[pos_];
                ++pos_;
            }
            return t;
        }
        throw ParseError(lineno_, t.col, std::string("unexpected character '") + c + "'");
    }

    std::string line_;
    int lineno_;
    std::size_t pos_ = 0;
    std::optional<Token> peeked_;
};

[[noreturn]] void fail(const LineScanner& sc, const Token& t, const std::string& what) {
    std::string got = t.kind == Token::Kind::End ? "end of line" : "'" + t.text + "'";
    if (t.kind != Token::Kind::Name && t.kind != Token::Kind::End)
        got = "punctuation";
    throw ParseError(sc.lineno(), t.col, "expected " + what + ", got " + got);
}

Token expect(LineScanner& sc, Token::Kind k, const std::string& what) {
    Token t = sc.next();
    if (t.kind != k)
        fail(sc, t, what);
    return t;
}

Token expect_name(LineScanner& sc, const std::string& what) {
    return expect(sc, Token::Kind::Name, what);
}

void expect_keyword(LineScanner& sc, const std::string& kw) {
    Token t = expect_name(sc, "'" + kw + "'");
    if (t.text != kw)
        throw ParseError(sc.lineno(), t.col, "expected '" + kw + "', got '" + t.text + "'");
}

void expect_end(LineScanner& sc) {
    const Token& t = sc.peek();
    if (t.kind != Token::Kind::End)
        throw ParseError(sc.lineno(), t.col, "trailing input");
}

LabelSet parse_labelset(LineScanner& sc) {
    expect(sc, Token::Kind::LBrace, "'{'");
    LabelSet out;
    if (sc.peek().kind == Token::Kind::RBrace) {
        sc.next();
        return out;
    }
    while (true) {
        Token name = expect_name(sc, "label name");
        out.insert(name.text);
        Token t = sc.next();
        if (t.kind == Token::Kind::RBrace)
            return out;
        if (t.kind != Token::Kind::Comma)
            fail(sc, t, "',' or '}'");
    }
}

struct NodeDecl {
    int line = 0;
    int col = 0;
    NodeId name;
    std::optional<LabelSet> taints;
    std::optional<LabelSet> untaints;
    std::optional<std::string> host;
    int host_col = 0;
};

struct EdgeDecl {
    int line = 0;
    int src_col = 0;
    int dst_col = 0;
    NodeId src;
    NodeId dst;
};

struct SystemDecl {
    int line = 0;
    SystemDef def;
    std::vector<int> member_cols;
};

struct PairDecl {
    int line = 0;
    int enc_col = 0;
    int dec_col = 0;
    CryptoPair pair;
};

NodeDecl parse_node(LineScanner& sc) {
    NodeDecl nd;
    nd.line = sc.lineno();
    Token name = expect_name(sc, "node name");
    nd.name = name.text;
    nd.col = name.col;
    while (sc.peek().kind != Token::Kind::End) {
        Token key = expect_name(sc, "attribute name");
        expect(sc, Token::Kind::Equals, "'='");
        if (key.text == "taints") {
            if (nd.taints)
                throw ParseError(sc.lineno(), key.col, "duplicate attribute: taints");
            nd.taints = parse_labelset(sc);
        } else if (key.text == "untaints") {
            if (nd.untaints)
                throw ParseError(sc.lineno(), key.col, "duplicate attribute: untaints");
            nd.untaints = parse_labelset(sc);
        } else if (key.text == "host") {
            if (nd.host)
                throw ParseError(sc.lineno(), key.col, "duplicate attribute: host");
            auto [word, col] = sc.next_word();
            nd.host = word;
            nd.host_col = col;
        } else {
            throw ParseError(sc.lineno(), key.col, "unknown attribute: " + key.text);
        }
    }
    return nd;
}

EdgeDecl parse_edge(LineScanner& sc) {
    EdgeDecl ed;
    ed.line = sc.lineno();
    Token src = expect_name(sc, "source node");
    expect(sc, Token::Kind::Arrow, "'->'");
    Token dst = expect_name(sc, "destination node");
    ed.src = src.text;
    ed.src_col = src.col;
    ed.dst = dst.text;
    ed.dst_col = dst.col;
    expect_end(sc);
    return ed;
}

SystemDecl parse_system(LineScanner& sc) {
    SystemDecl sd;
    sd.line = sc.lineno();
    Token name = expect_name(sc, "system name");
    sd.def.name = name.text;
    expect(sc, Token::Kind::LBrace, "'{'");
    while (true) {
        Token member = expect_name(sc, "member node");
        expect(sc, Token::Kind::Colon, "':'");
        Token role = expect_name(sc, "boundary role");
        auto r = role_from_name(role.text);
        if (!r)
            throw ParseError(sc.lineno(), role.col, "unknown boundary role: " + role.text);
        sd.def.members.emplace_back(member.text, *r);
        sd.member_cols.push_back(member.col);
        Token t = sc.next();
        if (t.kind == Token::Kind::RBrace)
            break;
        if (t.kind != Token::Kind::Comma)
            fail(sc, t, "',' or '}'");
    }
    expect_end(sc);
    return sd;
}

PairDecl parse_pair(LineScanner& sc) {
    PairDecl pd;
    pd.line = sc.lineno();
    expect_keyword(sc, "enc");
    expect(sc, Token::Kind::Equals, "'='");
    Token enc = expect_name(sc, "encryption node");
    expect_keyword(sc, "dec");
    expect(sc, Token::Kind::Equals, "'='");
    Token dec = expect_name(sc, "decryption node");
    expect_keyword(sc, "labels");
    expect(sc, Token::Kind::Equals, "'='");
    pd.pair.labels = parse_labelset(sc);
    pd.pair.enc = enc.text;
    pd.enc_col = enc.col;
    pd.pair.dec = dec.text;
    pd.dec_col = dec.col;
    expect_end(sc);
    return pd;
}

} // namespace

ArchitectureSpec parse_spec(const std::string& text, std::vector<Diagnostic>* warnings) {
    std::vector<NodeDecl> nodes;
    std::vector<EdgeDecl> edges;
    std::vector<SystemDecl> systems;
    std::vector<PairDecl> pairs;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        LineScanner sc(raw, lineno);
        const Token& first = sc.peek();
        if (first.kind == Token::Kind::End)
            continue;
        if (first.kind != Token::Kind::Name)
            fail(sc, first, "statement keyword");
        Token kw = sc.next();
        if (kw.text == "node") {
            nodes.push_back(parse_node(sc));
        } else if (kw.text == "edge") {
            edges.push_back(parse_edge(sc));
        } else if (kw.text == "system") {
            systems.push_back(parse_system(sc));
        } else if (kw.text == "cryptopair") {
            pairs.push_back(parse_pair(sc));
        } else {
            throw ParseError(lineno, kw.col, "unknown statement: " + kw.text);
        }
    }

    ArchitectureSpec spec;
    for (const NodeDecl& nd : nodes) {
        if (!spec.graph.add_node(nd.name))
            throw ParseError(nd.line, nd.col, "duplicate node: " + nd.name);
        if (nd.taints || nd.untaints)
            spec.labels.assign(nd.name, TaintSpec::normalize(nd.taints.value_or(LabelSet{}),
                                                             nd.untaints.value_or(LabelSet{})));
        if (nd.host) {
            auto addr = HostAddr::try_parse(*nd.host);
            if (!addr)
                throw ParseError(nd.line, nd.host_col, "invalid address: " + *nd.host);
            spec.hosts.emplace(nd.name, *addr);
        }
    }
    for (const EdgeDecl& ed : edges) {
        if (!spec.graph.has_node(ed.src))
            throw ParseError(ed.line, ed.src_col, "unknown node: " + ed.src);
        if (!spec.graph.has_node(ed.dst))
            throw ParseError(ed.line, ed.dst_col, "unknown node: " + ed.dst);
        if (!spec.graph.add_edge(ed.src, ed.dst) && warnings != nullptr)
            warnings->push_back(
                Diagnostic{ed.line, "duplicate edge collapsed: " + ed.src + " -> " + ed.dst});
    }
    for (const SystemDecl& sd : systems) {
        for (std::size_t i = 0; i < sd.def.members.size(); ++i) {
            if (!spec.graph.has_node(sd.def.members[i].first))
                throw ParseError(sd.line, sd.member_cols[i],
                                 "unknown node: " + sd.def.members[i].first);
        }
        try {
            spec.layout.add_system(sd.def);
        } catch (const Error& e) {
            throw ParseError(sd.line, 1, e.what());
        }
    }
    for (const PairDecl& pd : pairs) {
        if (pd.pair.enc == pd.pair.dec)
            throw ParseError(pd.line, pd.dec_col, "cryptopair enc and dec must differ");
        if (!spec.graph.has_node(pd.pair.enc))
            throw ParseError(pd.line, pd.enc_col, "unknown node: " + pd.pair.enc);
        if (!spec.graph.has_node(pd.pair.dec))
            throw ParseError(pd.line, pd.dec_col, "unknown node: " + pd.pair.dec);
        spec.pairs.push_back(pd.pair);
    }
    return spec;
}

std::string serialize_spec(const ArchitectureSpec& spec) {
    std::string out;
    for (const NodeId& v : spec.graph.nodes()) {
        out += "node " + v;
        if (spec.labels.contains(v)) {
            const TaintSpec& s = spec.labels.at(v);
            out += " taints=" + label_set_text(s.taints());
            if (!s.untaints().empty())
                out += " untaints=" + label_set_text(s.untaints());
        }
        auto host = spec.hosts.find(v);
        if (host != spec.hosts.end())
            out += " host=" + host->second.str();
        out += "\n";
    }
    for (const Edge& e : spec.graph.edges())
        out += "edge " + e.src + " -> " + e.dst + "\n";
    for (const SystemDef& s : spec.layout.systems()) {
        out += "system " + s.name + " {";
        bool first = true;
        for (const auto& [member, role] : s.members) {
            out += first ? " " : ", ";
            out += member + ": " + role_name(role);
            first = false;
        }
        out += " }\n";
    }
    for (const CryptoPair& p : spec.pairs)
        out += "cryptopair enc=" + p.enc + " dec=" + p.dec +
               " labels=" + label_set_text(p.labels) + "\n";
    return out;
}

ArchitectureSpec expand_crypto_pairs(const ArchitectureSpec& spec) {
    ArchitectureSpec out = spec;
    out.pairs.clear();
    for (const CryptoPair& p : spec.pairs) {
        TaintSpec enc_spec = TaintSpec::normalize(p.labels, p.labels);
        TaintSpec dec_spec = TaintSpec::normalize(p.labels, LabelSet{});
        for (const auto& [node, wanted] :
             {std::pair<NodeId, TaintSpec>{p.enc, enc_spec}, {p.dec, dec_spec}}) {
            if (out.labels.contains(node) && !(out.labels.at(node) == wanted))
                throw Error("conflicting label declaration for cryptopair node: " + node);
            out.labels.assign(node, wanted);
        }
    }
    return out;
}

} // namespace archtaint
