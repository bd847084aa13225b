#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace otcnet::csv {

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

/// In-memory CSV table with header lookup. Cells are kept as text;
/// conversion errors report the file, line and column name.
class Table {
  public:
    static Table read(const std::filesystem::path& path);
    static Table parse(std::string_view text, std::string source_name);

    const std::vector<std::string>& header() const { return header_; }
    std::size_t rows() const { return cells_.size(); }

    std::optional<std::size_t> find_column(std::string_view name) const;
    /// Column index; throws SchemaError naming the missing column.
    std::size_t column(std::string_view name) const;

    const std::string& cell(std::size_t row, std::size_t col) const { return cells_[row][col]; }
    /// 1-based line number in the source file of data row `row`.
    std::size_t line_of(std::size_t row) const { return lines_[row]; }

    double get_double(std::size_t row, std::size_t col) const;
    long long get_int(std::size_t row, std::size_t col) const;

    const std::string& source() const { return source_; }

  private:
    std::string source_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> cells_;
    std::vector<std::size_t> lines_;
};

/// Row-oriented writer; doubles are written with format_double.
class Writer {
  public:
    explicit Writer(std::ostream& out) : out_(out) {}
    Writer& field(std::string_view s);
    Writer& field(double x);
    Writer& field(long long x);
    Writer& field(int x) { return field(static_cast<long long>(x)); }
    Writer& field(std::size_t x) { return field(static_cast<long long>(x)); }
    void end_row();
    void row(const std::vector<std::string>& cells);

  private:
    std::ostream& out_;
    bool first_ = true;
};

}  // namespace otcnet::csv
