// Command-line driver.  Exit codes: 0 all checks pass, 1 a check failed,
// 2 usage or domain error.
#pragma once

#include <cstdint>
#include <iosfwd>

namespace ltavg {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ltavg
