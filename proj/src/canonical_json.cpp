#include "focksim/canonical_json.hpp"

#include <cmath>
#include <cstdio>

#include "focksim/errors.hpp"

namespace focksim {

namespace {

using nlohmann::json;

void dump_value(const json& j, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<size_t>(indent) * depth, ' ');
    const std::string pad_in(static_cast<size_t>(indent) * (depth + 1), ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            size_t k = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++k) {  // nlohmann objects are key-sorted
                out += pad_in;
                out += json(it.key()).dump();
                out += ": ";
                dump_value(it.value(), out, indent, depth + 1);
                if (k + 1 < j.size()) out += ',';
                out += '\n';
            }
            out += pad + "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (size_t k = 0; k < j.size(); ++k) {
                out += pad_in;
                dump_value(j[k], out, indent, depth + 1);
                if (k + 1 < j.size()) out += ',';
                out += '\n';
            }
            out += pad + "]";
            return;
        }
        case json::value_t::number_float:
            out += canonical_double(j.get<double>());
            return;
        default:
            out += j.dump();  // strings, ints, bools, null
            return;
    }
}

}  // namespace

std::string canonical_double(double value) {
    if (!std::isfinite(value))
        throw InvalidArgumentError("canonical JSON cannot represent a non-finite number");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", value);
    for (char* c = buf; *c; ++c)
        if (*c == ',') *c = '.';  // immune to LC_NUMERIC
    return buf;
}

std::string canonical_dump(const nlohmann::json& j, int indent) {
    std::string out;
    dump_value(j, out, indent, 0);
    out += '\n';
    return out;
}

}  // namespace focksim
