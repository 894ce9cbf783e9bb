#include "tqet/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "tqet/types.hpp"

namespace tqet {

std::string format_sci(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 16);
    return std::string(buf, res.ptr);
}

Cell num_cell(double v) { return {Cell::Kind::Number, format_sci(v)}; }

Cell int_cell(long long v) { return {Cell::Kind::Integer, std::to_string(v)}; }

Cell text_cell(std::string s) { return {Cell::Kind::Text, std::move(s)}; }

namespace {

std::string csv_field(const Cell& cell) {
    if (cell.kind != Cell::Kind::Text) return cell.text;
    if (cell.text.find_first_of(",\"\n") == std::string::npos) return cell.text;
    std::string quoted = "\"";
    for (const char c : cell.text) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string json_value(const Cell& cell) {
    switch (cell.kind) {
        case Cell::Kind::Integer:
            return cell.text;
        case Cell::Kind::Number:
            if (cell.text == "nan" || cell.text == "inf" || cell.text == "-inf") {
                return "null";
            }
            return cell.text;
        case Cell::Kind::Text:
            break;
    }
    std::string quoted = "\"";
    for (const char c : cell.text) {
        switch (c) {
            case '"': quoted += "\\\""; break;
            case '\\': quoted += "\\\\"; break;
            case '\n': quoted += "\\n"; break;
            case '\r': quoted += "\\r"; break;
            case '\t': quoted += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char esc[8];
                    std::snprintf(esc, sizeof(esc), "\\u%04x", c);
                    quoted += esc;
                } else {
                    quoted += c;
                }
        }
    }
    quoted += '"';
    return quoted;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw io_error("write failed for " + path.string());
}

void check_row_width(const Table& table) {
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) {
            throw io_error("table row width does not match its header");
        }
    }
}

}  // namespace

void write_csv(const std::filesystem::path& path, const Table& table) {
    check_row_width(table);
    std::ofstream out = open_for_write(path);
    for (const auto& comment : table.comments) out << comment << '\n';
    for (size_t i = 0; i < table.header.size(); ++i) {
        if (i > 0) out << ',';
        out << table.header[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out << ',';
            out << csv_field(row[i]);
        }
        out << '\n';
    }
    finish(out, path);
}

void write_jsonl(const std::filesystem::path& path, const Table& table) {
    check_row_width(table);
    std::ofstream out = open_for_write(path);
    for (const auto& comment : table.comments) out << comment << '\n';
    for (const auto& row : table.rows) {
        out << '{';
        for (size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out << ',';
            out << json_value({Cell::Kind::Text, table.header[i]}) << ':'
                << json_value(row[i]);
        }
        out << "}\n";
    }
    finish(out, path);
}

}  // namespace tqet
