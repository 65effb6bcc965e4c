#ifndef CASECRIT_IO_HPP_
#define CASECRIT_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace casecrit::io {

// Whole file as bytes. Throws DataError naming the path if unreadable.
std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temp file and renames it over the target.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view contents);

// Splits on '\n'. A single trailing newline does not produce an empty line.
std::vector<std::string_view> split_lines(std::string_view text);

// Shortest decimal that parses back to exactly the same double.
std::string format_double(double value);

// Strict parse of a full token; throws DataError on junk or non-finite.
double parse_double(std::string_view token);

// Lower-case hex SHA-256 of the given bytes.
std::string sha256_hex(std::string_view bytes);

}  // namespace casecrit::io

#endif  // CASECRIT_IO_HPP_
