#include "rpng/mark_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <ostream>

namespace rpng {

namespace {

static_assert(std::endian::native == std::endian::little,
              "serialization assumes a little-endian host");

constexpr std::array<char, 4> kMagic = {'R', 'P', 'N', 'G'};
constexpr std::size_t kRecordSize = 8 + 4 + 1;
constexpr std::size_t kHeaderSize = 4 + 2 + 8 + 8 + 8 + 8 + 8 + 8;

struct Crc32Table {
    std::uint32_t t[256];
    constexpr Crc32Table() : t{} {
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int k = 0; k < 8; ++k)
                c = (c & 1u) ? 0xedb88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
    }
};
constexpr Crc32Table kCrcTable{};

template <class T>
void put(std::vector<std::uint8_t>& out, T v) {
    std::uint8_t raw[sizeof(T)];
    std::memcpy(raw, &v, sizeof(T));
    out.insert(out.end(), raw, raw + sizeof(T));
}

template <class T>
T get(std::span<const std::uint8_t> bytes, std::size_t& pos) {
    T v;
    std::memcpy(&v, bytes.data() + pos, sizeof(T));
    pos += sizeof(T);
    return v;
}

} // namespace

std::uint32_t crc32(std::span<const std::uint8_t> bytes, std::uint32_t seed) {
    std::uint32_t c = seed ^ 0xffffffffu;
    for (std::uint8_t b : bytes) c = kCrcTable.t[(c ^ b) & 0xffu] ^ (c >> 8);
    return c ^ 0xffffffffu;
}

std::vector<std::uint8_t> serialize_log(const MarkLog& log) {
    std::vector<std::uint8_t> out;
    out.reserve(kHeaderSize + log.marks.size() * kRecordSize + 4);
    out.insert(out.end(), kMagic.begin(), kMagic.end());
    put<std::uint16_t>(out, kMarkLogFormatVersion);
    put<double>(out, log.params.lambda);
    put<double>(out, log.params.lambda0);
    put<std::int64_t>(out, log.params.half_width);
    put<std::uint64_t>(out, log.params.seed);
    put<double>(out, log.params.horizon);
    put<std::uint64_t>(out, log.marks.size());
    for (const Mark& m : log.marks) {
        put<double>(out, m.time);
        put<std::int32_t>(out, m.edge);
        put<std::uint8_t>(out, static_cast<std::uint8_t>(m.kind));
    }
    put<std::uint32_t>(out, crc32(out));
    return out;
}

MarkLog deserialize_log(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kHeaderSize + 4)
        throw MarkLogTruncatedError("mark log shorter than header");
    if (std::memcmp(bytes.data(), kMagic.data(), 4) != 0)
        throw MarkLogFormatError("bad magic, not a mark log");

    std::size_t pos = 4;
    const auto version = get<std::uint16_t>(bytes, pos);
    if (version != kMarkLogFormatVersion)
        throw MarkLogVersionError("unsupported mark log format version " +
                                  std::to_string(version));

    MarkLog log;
    log.params.lambda = get<double>(bytes, pos);
    log.params.lambda0 = get<double>(bytes, pos);
    log.params.half_width = static_cast<std::int32_t>(get<std::int64_t>(bytes, pos));
    log.params.seed = get<std::uint64_t>(bytes, pos);
    log.params.horizon = get<double>(bytes, pos);
    const auto count = get<std::uint64_t>(bytes, pos);

    const std::size_t expected = kHeaderSize + count * kRecordSize + 4;
    if (bytes.size() < expected)
        throw MarkLogTruncatedError("mark log truncated: expected " +
                                    std::to_string(expected) + " bytes, have " +
                                    std::to_string(bytes.size()));

    const std::uint32_t stored_crc = [&] {
        std::size_t p = expected - 4;
        return get<std::uint32_t>(bytes, p);
    }();
    if (crc32(bytes.subspan(0, expected - 4)) != stored_crc)
        throw MarkLogChecksumError("mark log checksum mismatch");

    log.marks.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        Mark m;
        m.time = get<double>(bytes, pos);
        m.edge = get<std::int32_t>(bytes, pos);
        const auto kind = get<std::uint8_t>(bytes, pos);
        if (kind >= kMarkKindCount)
            throw MarkLogFormatError("unknown mark kind " + std::to_string(kind));
        m.kind = static_cast<MarkKind>(kind);
        log.marks.push_back(m);
    }
    return log;
}

void save_log(const MarkLog& log, const std::string& path) {
    const auto bytes = serialize_log(log);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    if (!f) throw std::runtime_error("short write to " + path);
}

MarkLog load_log(const std::string& path) {
    std::ifstream f(path, std::ios::binary | std::ios::ate);
    if (!f) throw std::runtime_error("cannot open " + path);
    const auto size = static_cast<std::size_t>(f.tellg());
    f.seekg(0);
    std::vector<std::uint8_t> bytes(size);
    f.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(size));
    if (!f) throw std::runtime_error("short read from " + path);
    return deserialize_log(bytes);
}

void write_log_text(const MarkLog& log, std::ostream& out) {
    out << "# lambda=" << log.params.lambda << " lambda0=" << log.params.lambda0
        << " L=" << log.params.half_width << " T=" << log.params.horizon
        << " seed=" << log.params.seed << " marks=" << log.marks.size() << '\n';
    const auto flags = out.flags();
    out.precision(17);
    for (const Mark& m : log.marks)
        out << m.time << ' ' << m.edge << ' ' << mark_kind_name(m.kind) << '\n';
    out.flags(flags);
}

} // namespace rpng
