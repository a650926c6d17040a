#pragma once

#include <cstdint>
#include <iosfwd>

namespace ivmd {

/// Quick oracle-equivalence and property checks of the math core. Prints one
/// PASS/FAIL line per check and returns the number of failures.
int run_selftest(std::ostream& out, std::uint64_t seed = 1, int trials = 200);

}  // namespace ivmd
