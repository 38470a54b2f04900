#include "robinlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace robinlab {

namespace {

std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out + '"';
}

std::string json_value(const Value& v) {
    if (std::holds_alternative<std::monostate>(v)) return "null";
    if (const auto* s = std::get_if<std::string>(&v)) return json_string(*s);
    if (const auto* d = std::get_if<double>(&v); d && !std::isfinite(*d)) return "null";
    return format_value(v);
}

}  // namespace

std::string format_real(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_value(const Value& v) {
    struct Visitor {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(std::uint64_t x) const { return std::to_string(x); }
        std::string operator()(std::int64_t x) const { return std::to_string(x); }
        std::string operator()(double x) const { return format_real(x); }
        std::string operator()(bool x) const { return x ? "true" : "false"; }
        std::string operator()(const std::string& x) const { return x; }
    };
    return std::visit(Visitor{}, v);
}

Section& Report::add_section(std::string name, std::vector<std::string> columns) {
    sections.push_back({std::move(name), std::move(columns), {}});
    return sections.back();
}

void Report::note(std::string key, Value value) { summary.emplace_back(std::move(key), std::move(value)); }

void write_csv(std::ostream& out, const Report& report) {
    bool first = true;
    for (const auto& section : report.sections) {
        if (!first) out << "\n# section: " << section.name << '\n';
        first = false;
        for (std::size_t i = 0; i < section.columns.size(); ++i) out << (i ? "," : "") << section.columns[i];
        out << '\n';
        for (const auto& row : section.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_value(row[i]);
            out << '\n';
        }
    }
    for (const auto& [key, value] : report.summary) out << "# " << key << '=' << format_value(value) << '\n';
}

void write_json(std::ostream& out, const Report& report) {
    out << "{\n";
    for (const auto& section : report.sections) {
        out << "  " << json_string(section.name) << ": [";
        for (std::size_t r = 0; r < section.rows.size(); ++r) {
            out << (r ? ",\n    {" : "\n    {");
            const auto& row = section.rows[r];
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? ", " : "") << json_string(section.columns[i]) << ": " << json_value(row[i]);
            out << '}';
        }
        out << (section.rows.empty() ? "],\n" : "\n  ],\n");
    }
    out << "  \"summary\": {";
    for (std::size_t i = 0; i < report.summary.size(); ++i)
        out << (i ? ",\n    " : "\n    ") << json_string(report.summary[i].first) << ": "
            << json_value(report.summary[i].second);
    out << (report.summary.empty() ? "}\n}\n" : "\n  }\n}\n");
}

}  // namespace robinlab
