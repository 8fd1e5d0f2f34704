#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace pointline::cli {

// monostate is an empty cell (CSV) / null (JSON).
using Value = std::variant<std::monostate, double, long long, bool, std::string>;

struct Field {
    std::string name;
    Value value;
};
using Row = std::vector<Field>;

enum class Format { csv, jsonl };

// %.17g; non-finite values as inf / -inf / nan.
std::string format_double(double x);

// Writes rows with a fixed column set. CSV gets a header line; all lines end in LF.
class TableWriter {
public:
    TableWriter(std::ostream& out, Format format) : out_(out), format_(format) {}
    void write(const Row& row);

private:
    std::ostream& out_;
    Format format_;
    std::vector<std::string> columns_;
};

}  // namespace pointline::cli
