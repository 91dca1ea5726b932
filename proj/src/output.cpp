#include "cyclewalk/output.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace cyclewalk {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

namespace {

void write_string(std::ostream& os, const std::string& s) {
    // nlohmann's serializer already implements JSON string escaping.
    os << Json(s).dump();
}

void write_value(std::ostream& os, const Json& v, int depth) {
    const std::string pad(2 * (depth + 1), ' ');
    const std::string close_pad(2 * depth, ' ');
    switch (v.type()) {
        case Json::value_t::object: {
            if (v.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) os << ",\n";
                first = false;
                os << pad;
                write_string(os, it.key());
                os << ": ";
                write_value(os, it.value(), depth + 1);
            }
            os << "\n" << close_pad << "}";
            return;
        }
        case Json::value_t::array: {
            if (v.empty()) {
                os << "[]";
                return;
            }
            // Arrays of scalars stay on one line (tv_trace pairs, eigenvalues).
            bool scalars = true;
            for (const auto& e : v) scalars = scalars && !e.is_structured();
            if (scalars) {
                os << "[";
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i) os << ", ";
                    write_value(os, v[i], depth + 1);
                }
                os << "]";
                return;
            }
            os << "[\n";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) os << ",\n";
                os << pad;
                write_value(os, v[i], depth + 1);
            }
            os << "\n" << close_pad << "]";
            return;
        }
        case Json::value_t::number_float: {
            const double d = v.get<double>();
            if (std::isfinite(d)) {
                os << format_double(d);
            } else {
                os << "null";
            }
            return;
        }
        case Json::value_t::string:
            write_string(os, v.get<std::string>());
            return;
        default:
            os << v.dump();
            return;
    }
}

}  // namespace

std::string to_json_text(const Json& doc) {
    std::ostringstream os;
    write_value(os, doc, 0);
    os << "\n";
    return os.str();
}

void write_distribution_header(std::ostream& os) { os << "t,x,p,method\n"; }

void write_distribution_rows(std::ostream& os, const PositionDistribution& dist, std::string_view method) {
    for (int x = 0; x < dist.size(); ++x) {
        os << dist.time << ',' << x << ',' << format_double(dist[x]) << ',' << method << '\n';
    }
}

}  // namespace cyclewalk
