#pragma once
// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 usage/config error, 3 internal numerical assertion.

#include "cyclewalk/core.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace cyclewalk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

inline constexpr const char* kToolVersion = "1.0.0";

struct CoinParse {
    Vec2 state;
    // Norm before renormalization; raw quadruples only.
    double input_norm = 1.0;
};

// `up`, `down`, `balanced`, or `re,im,re,im` (normalized). Throws DomainError.
CoinParse parse_initial_coin(const std::string& text);

// Flat `key=value` lines; `#` starts a comment. Throws DomainError on malformed lines.
std::map<std::string, std::string> read_config_file(const std::string& path);

// Parses args (args[0] is the program name) and runs the subcommand. Normal
// output goes to `out` unless redirected with --output; diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cyclewalk::cli
