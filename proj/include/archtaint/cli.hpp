// Copyright (c) archtaint contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace archtaint {

// Entry point behind main(). args excludes the program name. Returns the
// process exit status: 0 all checks pass, 1 violations or failed
// assertions, 2 usage or input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace archtaint
