#pragma once

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace robinlab {

// A cell; monostate renders as an empty CSV field and JSON null.
using Value = std::variant<std::monostate, std::uint64_t, std::int64_t, double, bool, std::string>;

// %.17g, with nan/inf spelled out.
std::string format_real(double x);
std::string format_value(const Value& v);

struct Section {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;
};

// Tabular output shared by every subcommand. CSV: each section is a header
// line plus rows, sections after the first are introduced by a blank line and
// "# section: <name>", and the summary follows as "# key=value" lines. JSON:
// one object mapping each section name to an array of row objects, plus
// "summary".
struct Report {
    std::deque<Section> sections;  // add_section hands out references that must survive later adds
    std::vector<std::pair<std::string, Value>> summary;

    Section& add_section(std::string name, std::vector<std::string> columns);
    void note(std::string key, Value value);
};

void write_csv(std::ostream& out, const Report& report);
void write_json(std::ostream& out, const Report& report);

}  // namespace robinlab
