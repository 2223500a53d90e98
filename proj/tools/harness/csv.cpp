#include "harness/csv.hpp"

#include <charconv>
#include <sstream>

#include <fmt/format.h>

#include "lfi/error.hpp"

namespace lfi::harness {

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns)
    : out_(path, std::ios::binary), columns_(columns.size()) {
    if (!out_) throw Error("cannot open " + path.string() + " for writing");
    out_ << kSchemaLine << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
}

void CsvWriter::separator() {
    if (in_row_++ > 0) out_ << ',';
}

CsvWriter& CsvWriter::cell(double value) {
    separator();
    out_ << fmt::format("{}", value);
    return *this;
}

CsvWriter& CsvWriter::cell(long long value) {
    separator();
    out_ << value;
    return *this;
}

CsvWriter& CsvWriter::cell(unsigned long long value) {
    separator();
    out_ << value;
    return *this;
}

CsvWriter& CsvWriter::cell(const std::string& value) {
    separator();
    out_ << value;
    return *this;
}

void CsvWriter::end_row() {
    if (in_row_ != columns_) throw Error("csv row has the wrong number of cells");
    out_ << '\n';
    in_row_ = 0;
    if (!out_) throw Error("csv write failed");
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return i;
    }
    throw Error("csv has no column '" + name + "'");
}

double CsvTable::number(std::size_t row, const std::string& name) const {
    const std::string& text = rows.at(row).at(column(name));
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size()) {
        throw Error("csv cell '" + text + "' in column '" + name + "' is not a number");
    }
    return value;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    CsvTable table;
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!s.empty() && s.back() == ',') cells.emplace_back();
        return cells;
    };
    while (std::getline(in, line)) {
        if (line.starts_with('#')) {
            table.comments.push_back(line);
        } else if (table.columns.empty()) {
            table.columns = split(line);
        } else {
            auto cells = split(line);
            if (cells.size() != table.columns.size()) throw Error("csv row width does not match the header");
            table.rows.push_back(std::move(cells));
        }
    }
    if (table.comments.empty() || table.comments.front() != kSchemaLine) {
        throw Error(path.string() + " lacks the schema line");
    }
    if (table.columns.empty()) throw Error(path.string() + " has no header");
    return table;
}

}  // namespace lfi::harness
