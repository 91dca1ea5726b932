#pragma once
// Deterministic text output: CSV time series and JSON documents with every
// floating-point value written as %.16e (17 significant digits).

#include "cyclewalk/evolution.hpp"

#include "json.hpp"

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cyclewalk {

using Json = nlohmann::ordered_json;

std::string format_double(double v);

// Serializes `doc` with keys in insertion order; non-finite numbers become null.
std::string to_json_text(const Json& doc);

// Header `t,x,p,method`, one row per (t, x).
void write_distribution_header(std::ostream& os);
void write_distribution_rows(std::ostream& os, const PositionDistribution& dist, std::string_view method);

}  // namespace cyclewalk
