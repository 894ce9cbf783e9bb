#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace tqet {

inline constexpr char kVersionString[] = "0.1.0";

/// Locale-free scientific notation with 17 significant digits, the
/// round-trip-exact interchange format for every emitted number.
/// Non-finite values become "nan" / "inf" / "-inf".
std::string format_sci(double v);

/// One value of an output table. Numbers and integers are emitted bare;
/// text is CSV-quoted and JSON-escaped as needed.
struct Cell {
    enum class Kind { Number, Integer, Text };
    Kind kind = Kind::Text;
    std::string text;
};

Cell num_cell(double v);
Cell int_cell(long long v);
Cell text_cell(std::string s);

/// Column-oriented payload shared by the CSV and JSON Lines writers.
/// `comments` are emitted verbatim before any data; the first one is the
/// provenance line.
struct Table {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

/// Writes `\n`-terminated CSV in binary mode; byte-exact across reruns.
void write_csv(const std::filesystem::path& path, const Table& table);

/// Same content as the CSV, one JSON object per row after the comment
/// lines. Non-finite numbers become null.
void write_jsonl(const std::filesystem::path& path, const Table& table);

}  // namespace tqet
