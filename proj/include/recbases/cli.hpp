#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace recbases::cli {

// Exit codes: 0 ok, 1 usage or invalid input, 2 precision failure,
// 3 computation gave up (pattern not found, infeasible schedule, limits).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace recbases::cli
