#pragma once

// Small-size oracle suite runnable from the command line: every check pits a
// fast path against an independent construction of the same quantity.

#include <iosfwd>
#include <string>
#include <vector>

namespace symqudit::selftest {

struct CheckResult {
    std::string name;
    double deviation = 0.0;
    double tolerance = 0.0;

    bool passed() const { return deviation <= tolerance; }
};

std::vector<CheckResult> run_all();
/// Prints one line per check; returns true when all passed.
bool report(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace symqudit::selftest
