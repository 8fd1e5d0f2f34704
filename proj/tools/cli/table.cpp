#include "table.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace pointline::cli {

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_cell(const Value& v) {
    if (std::holds_alternative<std::monostate>(v)) return "";
    if (const auto* d = std::get_if<double>(&v)) return format_double(*d);
    if (const auto* i = std::get_if<long long>(&v)) return std::to_string(*i);
    if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
    return csv_escape(std::get<std::string>(v));
}

std::string json_cell(const Value& v) {
    if (std::holds_alternative<std::monostate>(v)) return "null";
    if (const auto* d = std::get_if<double>(&v)) {
        const std::string s = format_double(*d);
        return std::isfinite(*d) ? s : "\"" + s + "\"";
    }
    if (const auto* i = std::get_if<long long>(&v)) return std::to_string(*i);
    if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
    return nlohmann::json(std::get<std::string>(v)).dump();
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void TableWriter::write(const Row& row) {
    if (columns_.empty()) {
        for (const auto& f : row) columns_.push_back(f.name);
        if (format_ == Format::csv) {
            for (std::size_t j = 0; j < columns_.size(); ++j)
                out_ << (j ? "," : "") << csv_escape(columns_[j]);
            out_ << '\n';
        }
    } else {
        bool same = row.size() == columns_.size();
        for (std::size_t j = 0; same && j < row.size(); ++j) same = row[j].name == columns_[j];
        if (!same) throw std::logic_error("table rows must share one column layout");
    }

    if (format_ == Format::csv) {
        for (std::size_t j = 0; j < row.size(); ++j) out_ << (j ? "," : "") << csv_cell(row[j].value);
    } else {
        out_ << '{';
        for (std::size_t j = 0; j < row.size(); ++j)
            out_ << (j ? "," : "") << nlohmann::json(row[j].name).dump() << ':'
                 << json_cell(row[j].value);
        out_ << '}';
    }
    out_ << '\n';
}

}  // namespace pointline::cli
