#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rpng/marks.hpp"

namespace rpng {

// Binary mark-log container:
//   magic "RPNG" | format version u16 | lambda f64 | lambda0 f64 |
//   half_width i64 | seed u64 | horizon f64 | mark count u64 |
//   records (time f64, edge i32, kind u8) | CRC-32 u32
// All fields little-endian; the CRC covers every byte before it.
inline constexpr std::uint16_t kMarkLogFormatVersion = 1;

struct MarkLogFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MarkLogVersionError : MarkLogFormatError {
    using MarkLogFormatError::MarkLogFormatError;
};
struct MarkLogTruncatedError : MarkLogFormatError {
    using MarkLogFormatError::MarkLogFormatError;
};
struct MarkLogChecksumError : MarkLogFormatError {
    using MarkLogFormatError::MarkLogFormatError;
};

std::vector<std::uint8_t> serialize_log(const MarkLog& log);
MarkLog deserialize_log(std::span<const std::uint8_t> bytes);

void save_log(const MarkLog& log, const std::string& path);
MarkLog load_log(const std::string& path);

// Line-oriented debug export: "time edge kind" per mark, after a
// one-line parameter header.
void write_log_text(const MarkLog& log, std::ostream& out);

// CRC-32 (IEEE 802.3 polynomial, reflected), as used by the container.
std::uint32_t crc32(std::span<const std::uint8_t> bytes, std::uint32_t seed = 0);

} // namespace rpng
