// Copyright (c) archtaint contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace archtaint {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// An operation referenced a node that is not part of the graph.
class UnknownNodeError : public Error {
  public:
    explicit UnknownNodeError(const std::string& node)
        : Error("unknown node: " + node), node_(node) {}
    const std::string& node() const { return node_; }

  private:
    std::string node_;
};

// Input text could not be parsed. Positions are 1-based.
class ParseError : public Error {
  public:
    ParseError(int line, int column, const std::string& msg)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                msg),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_;
    int column_;
};

// Input used a construct outside the supported dialect.
class UnsupportedFeatureError : public Error {
  public:
    explicit UnsupportedFeatureError(const std::string& feature)
        : Error("unsupported feature: " + feature), feature_(feature) {}
    const std::string& feature() const { return feature_; }

  private:
    std::string feature_;
};

// A cross-check that must hold by construction failed; indicates a bug in
// this library rather than in the analyzed input.
class InternalInconsistencyError : public Error {
  public:
    explicit InternalInconsistencyError(const std::string& msg)
        : Error("internal inconsistency: " + msg) {}
};

} // namespace archtaint
