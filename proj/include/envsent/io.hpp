#ifndef ENVSENT_IO_HPP_
#define ENVSENT_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace envsent {

std::string read_file(const std::filesystem::path& path);

// Writes via a temp file in the same directory plus rename, so readers
// never observe a half-written file.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

// Shortest decimal form that parses back to the same double. Used wherever
// outputs must be byte-stable across runs.
std::string format_double(double value);

// Fixed two decimals, round half away from zero (percentage rendering).
std::string format_fixed2(double value);

std::uint64_t fnv1a64(std::string_view data);

}  // namespace envsent

#endif  // ENVSENT_IO_HPP_
