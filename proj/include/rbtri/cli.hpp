#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rbtri
{
    /// Exit codes: 0 verified / computed, 1 error or counterexample,
    /// 2 inconclusive (budget exhausted).
    inline constexpr int exit_ok = 0;
    inline constexpr int exit_error = 1;
    inline constexpr int exit_inconclusive = 2;

    /// Runs the command line `args` (without the program name).
    auto run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;
}
