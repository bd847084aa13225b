#include "otcnet/core/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "otcnet/core/error.hpp"

namespace otcnet::csv {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

namespace {

std::vector<std::string> split_line(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(',', start);
        auto piece = line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
        while (!piece.empty() && (piece.front() == ' ' || piece.front() == '\t')) piece.remove_prefix(1);
        while (!piece.empty() && (piece.back() == ' ' || piece.back() == '\t' || piece.back() == '\r'))
            piece.remove_suffix(1);
        out.emplace_back(piece);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

Table Table::read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.filename().string());
}

Table Table::parse(std::string_view text, std::string source_name) {
    Table t;
    t.source_ = std::move(source_name);
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool have_header = false;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++line_no;
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;
        auto cells = split_line(line);
        if (!have_header) {
            t.header_ = std::move(cells);
            have_header = true;
            continue;
        }
        if (cells.size() != t.header_.size()) {
            throw ParseError(t.source_, line_no, "<row>",
                             "expected " + std::to_string(t.header_.size()) + " fields, found " +
                                 std::to_string(cells.size()));
        }
        t.cells_.push_back(std::move(cells));
        t.lines_.push_back(line_no);
    }
    if (!have_header) throw SchemaError(t.source_ + ": empty file, no header");
    return t;
}

std::optional<std::size_t> Table::find_column(std::string_view name) const {
    for (std::size_t i = 0; i < header_.size(); ++i)
        if (header_[i] == name) return i;
    return std::nullopt;
}

std::size_t Table::column(std::string_view name) const {
    if (auto c = find_column(name)) return *c;
    throw SchemaError(source_ + ": missing column '" + std::string(name) + "'");
}

double Table::get_double(std::size_t row, std::size_t col) const {
    const std::string& s = cells_[row][col];
    if (s == "nan") return std::nan("");
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError(source_, lines_[row], header_[col], "not a number: '" + s + "'");
    return v;
}

long long Table::get_int(std::size_t row, std::size_t col) const {
    const std::string& s = cells_[row][col];
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError(source_, lines_[row], header_[col], "not an integer: '" + s + "'");
    return v;
}

Writer& Writer::field(std::string_view s) {
    if (!first_) out_ << ',';
    out_ << s;
    first_ = false;
    return *this;
}

Writer& Writer::field(double x) { return field(std::string_view(format_double(x))); }

Writer& Writer::field(long long x) { return field(std::string_view(std::to_string(x))); }

void Writer::end_row() {
    out_ << '\n';
    first_ = true;
}

void Writer::row(const std::vector<std::string>& cells) {
    for (const auto& c : cells) field(std::string_view(c));
    end_row();
}

}  // namespace otcnet::csv
