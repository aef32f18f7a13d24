#include "spectral_lab/table_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "spectral_lab/core.hpp"

namespace slab {

void write_file_atomic(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.parent_path() / ("." + target.filename().string() + ".tmp" + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::io, "cannot write " + tmp.string());
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) throw Error(Errc::io, "short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error(Errc::io, "rename to " + path + " failed: " + ec.message());
    }
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw Error(Errc::precondition, "row width does not match header of " + name);
    rows.push_back(std::move(row));
}

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
    out += "\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) out += ",";
            if (auto p = std::get_if<double>(&r[i]))
                out += format_double(*p);
            else if (auto q = std::get_if<long long>(&r[i]))
                out += std::to_string(*q);
            else
                out += std::get<std::string>(r[i]);
        }
        out += "\n";
    }
    return out;
}

namespace {
std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}
}  // namespace

CsvData parse_csv(const std::string& text) {
    CsvData d;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.empty()) throw Error(Errc::io, "empty CSV");
    d.columns = split_line(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto r = split_line(line);
        if (r.size() != d.columns.size()) throw Error(Errc::io, "ragged CSV row");
        d.rows.push_back(std::move(r));
    }
    return d;
}

std::vector<double> CsvData::column(const std::string& name) const {
    std::size_t idx = columns.size();
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) idx = i;
    if (idx == columns.size()) throw Error(Errc::io, "missing CSV column " + name);
    std::vector<double> out;
    for (const auto& r : rows) {
        double v = 0.0;
        const auto& s = r[idx];
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc()) {
            if (s == "nan") v = std::nan("");
            else if (s == "inf") v = INFINITY;
            else if (s == "-inf") v = -INFINITY;
            else throw Error(Errc::io, "non-numeric CSV cell " + s);
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace slab
