#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tabsel {

// RFC 4180 CSV: comma separated, double-quoted fields may contain commas,
// newlines and doubled quotes. CRLF and LF line endings are accepted.
// Throws InvalidArgument on an unterminated quoted field.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path);

}  // namespace tabsel
