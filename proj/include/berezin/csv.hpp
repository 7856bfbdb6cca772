#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace bq {

/// Shortest round-trip decimal representation, independent of locale.
std::string fmt(double v);
std::string fmt(long long v);
inline std::string fmt(int v) { return fmt(static_cast<long long>(v)); }
inline std::string fmt(unsigned v) { return fmt(static_cast<long long>(v)); }
inline std::string fmt(std::size_t v) { return fmt(static_cast<long long>(v)); }

/// Header plus rows; cells are written verbatim, comma separated, LF terminated.
class CsvTable {
  public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add(std::vector<std::string> row);
    std::size_t rows() const { return rows_.size(); }
    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<std::string>>& data() const { return rows_; }

    void write(std::ostream& os) const;
    void save(const std::filesystem::path& path) const;

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Splits one CSV line on commas (no quoting).
std::vector<std::string> split_csv_line(const std::string& line);

/// Parses a double written by fmt().
double parse_double(const std::string& s);

}  // namespace bq
