// SPDX-License-Identifier: MIT
#include "tsvar/report.hpp"

#include <cstdio>
#include <ctime>

namespace tsvar {

std::string format_double(double x) {
    if (x == 0.0) return "0";  // fold negative zero
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

void append_escaped(const std::string& s, std::string& out) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void dump(const Json& v, int depth, std::string& out) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    const std::string pad_in(static_cast<std::size_t>(depth + 1) * 2, ' ');
    switch (v.type()) {
        case Json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                append_escaped(it.key(), out);
                out += ": ";
                dump(it.value(), depth + 1, out);
            }
            out += '\n';
            out += pad;
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            // Flat arrays of scalars stay on one line.
            bool scalars_only = true;
            for (const auto& e : v) {
                if (e.is_structured()) {
                    scalars_only = false;
                    break;
                }
            }
            if (scalars_only) {
                out += '[';
                bool first = true;
                for (const auto& e : v) {
                    if (!first) out += ", ";
                    first = false;
                    dump(e, depth, out);
                }
                out += ']';
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& e : v) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                dump(e, depth + 1, out);
            }
            out += '\n';
            out += pad;
            out += ']';
            return;
        }
        case Json::value_t::string:
            append_escaped(v.get_ref<const std::string&>(), out);
            return;
        case Json::value_t::boolean:
            out += v.get<bool>() ? "true" : "false";
            return;
        case Json::value_t::number_integer:
            out += std::to_string(v.get<long long>());
            return;
        case Json::value_t::number_unsigned:
            out += std::to_string(v.get<unsigned long long>());
            return;
        case Json::value_t::number_float:
            out += format_double(v.get<double>());
            return;
        default:
            out += "null";
            return;
    }
}

}  // namespace

std::string dump_json(const Json& value) {
    std::string out;
    dump(value, 0, out);
    out += '\n';
    return out;
}

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

}  // namespace tsvar
