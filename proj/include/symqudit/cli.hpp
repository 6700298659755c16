#pragma once

// Command-line front end: `sweep`, `phase`, `state`, `surface`, `selftest`.
//
// Exit codes: 0 success, 2 configuration error (bad flags, config file,
// grid or output path), 3 numerical integrity failure (invariant violated,
// solver did not converge, selftest failed), 1 anything else.

#include <complex>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace symqudit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIntegrity = 3;

/// Flat `key = value` file; blank lines and lines starting with # or ; are
/// ignored. Keys are long flag names without the leading dashes. Throws
/// sweep::ConfigError.
std::vector<std::pair<std::string, std::string>> read_flat_config(const std::string& path);

/// Parses "a", "a+bi", "a-bi", "bi" (also with j).
std::complex<double> parse_complex(const std::string& text);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace symqudit::cli
