#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace lfi::harness {

inline constexpr const char* kSchemaLine = "# schema=lfi-kit/v1";

/// Writes `# schema=lfi-kit/v1`, a header row, then rows. Doubles use the
/// shortest representation that round-trips.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns);

    CsvWriter& cell(double value);
    CsvWriter& cell(long long value);
    CsvWriter& cell(unsigned long long value);
    CsvWriter& cell(unsigned long value) { return cell(static_cast<unsigned long long>(value)); }
    CsvWriter& cell(int value) { return cell(static_cast<long long>(value)); }
    CsvWriter& cell(const std::string& value);
    void end_row();

private:
    void separator();

    std::ofstream out_;
    std::size_t columns_;
    std::size_t in_row_ = 0;
};

struct CsvTable {
    std::vector<std::string> comments;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::size_t column(const std::string& name) const;
    [[nodiscard]] double number(std::size_t row, const std::string& name) const;
};

/// Parses files produced by CsvWriter; throws lfi::Error on malformed input.
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace lfi::harness
