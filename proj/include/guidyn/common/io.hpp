#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace guidyn {

namespace fs = std::filesystem;

// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view bytes);
std::string sha256_hex(std::span<const std::uint8_t> bytes);
std::string sha256_file(const fs::path& path);

std::string base64_encode(std::span<const std::uint8_t> bytes);

std::string read_file(const fs::path& path);
// Writes via a sibling temp file and rename, so readers never see partial content.
void write_file(const fs::path& path, std::string_view content);

std::vector<std::string> read_lines(const fs::path& path);
void write_lines(const fs::path& path, const std::vector<std::string>& lines);

std::string join_lines(const std::vector<std::string>& lines);
std::vector<std::string> split_lines(std::string_view content);

}  // namespace guidyn
