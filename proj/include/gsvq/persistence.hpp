// On-disk formats, bit-exact across platforms.
//
// Codebook (.cbk.csv): text, '\n' line endings, '.' decimal separator.
//   line 1:      vqc,1,<M>,4
//   lines 2..M+1: <c0>,<c1>,<c2>,<c3> with each real in shortest
//                 round-trip decimal form.
//
// Index file (.vqi): binary, multi-byte integers big-endian unsigned.
//   magic "VQI1" | u32 orig_width | u32 orig_height | u8 block_w=2 |
//   u8 block_h=2 | u32 codebook_size | u16 indices, row-major.
#pragma once

#include <charconv>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "gsvq/codec.hpp"
#include "gsvq/quantizer.hpp"

namespace gsvq {

namespace detail {

inline std::string format_real(double v) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, result.ptr);
}

inline double parse_real(std::string_view field) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        fail("codebook: non-numeric field '" + std::string(field) + "'");
    return value;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = s.find(sep, start);
        if (end == std::string_view::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, end - start));
        start = end + 1;
    }
}

inline void put_u16_be(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

inline void put_u32_be(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

inline std::uint16_t get_u16_be(const std::uint8_t* p) {
    return static_cast<std::uint16_t>((std::uint32_t{p[0]} << 8) | p[1]);
}

inline std::uint32_t get_u32_be(const std::uint8_t* p) {
    return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) |
           (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
}

inline void check_codebook(const Codebook& cb) {
    if (cb.size() == 0) fail("codebook: empty codebook");
    for (const BlockVec& c : cb.centroids)
        for (int k = 0; k < 4; ++k)
            if (!(c[k] >= 0.0 && c[k] <= 255.0)) fail("codebook: component out of range");
}

}  // namespace detail

inline std::string save_codebook(const Codebook& cb) {
    detail::check_codebook(cb);
    std::string out = "vqc,1," + std::to_string(cb.size()) + ",4\n";
    for (const BlockVec& c : cb.centroids) {
        out += detail::format_real(c[0]);
        for (int k = 1; k < 4; ++k) {
            out += ',';
            out += detail::format_real(c[k]);
        }
        out += '\n';
    }
    return out;
}

inline Codebook load_codebook(std::string_view text) {
    std::vector<std::string_view> lines = detail::split(text, '\n');
    if (!lines.empty() && lines.back().empty()) lines.pop_back();  // trailing newline
    if (lines.empty()) detail::fail("codebook: empty file");

    const std::vector<std::string_view> header = detail::split(lines[0], ',');
    if (header.size() != 4) detail::fail("codebook: malformed header");
    if (header[0] != "vqc")
        detail::fail("codebook: bad format tag '" + std::string(header[0]) + "'");
    if (header[1] != "1")
        detail::fail("codebook: unsupported version '" + std::string(header[1]) + "'");

    std::uint64_t declared = 0;
    {
        const std::string_view f = header[2];
        const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), declared);
        if (ec != std::errc{} || ptr != f.data() + f.size() || declared < 1)
            detail::fail("codebook: invalid size field '" + std::string(f) + "'");
    }
    if (header[3] != "4")
        detail::fail("codebook: unsupported dimension '" + std::string(header[3]) + "'");

    if (lines.size() - 1 != declared)
        detail::fail("codebook: declared size " + std::to_string(declared) + " but found " +
                     std::to_string(lines.size() - 1) + " rows");

    Codebook cb;
    cb.centroids.reserve(declared);
    for (std::size_t row = 1; row < lines.size(); ++row) {
        const std::vector<std::string_view> fields = detail::split(lines[row], ',');
        if (fields.size() != 4)
            detail::fail("codebook: row " + std::to_string(row) + " has " +
                         std::to_string(fields.size()) + " fields, expected 4");
        BlockVec c;
        for (int k = 0; k < 4; ++k) {
            c[k] = detail::parse_real(fields[k]);
            if (!(c[k] >= 0.0 && c[k] <= 255.0)) detail::fail("codebook: component out of range");
        }
        cb.centroids.push_back(c);
    }
    return cb;
}

inline Codebook load_codebook(std::span<const std::uint8_t> bytes) {
    return load_codebook(
        std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

inline std::vector<std::uint8_t> save_index_file(const IndexMap& map) {
    detail::check_index_map(map);
    std::vector<std::uint8_t> out;
    out.reserve(18 + map.indices.size() * 2);
    for (const char c : {'V', 'Q', 'I', '1'}) out.push_back(static_cast<std::uint8_t>(c));
    detail::put_u32_be(out, static_cast<std::uint32_t>(map.orig_width));
    detail::put_u32_be(out, static_cast<std::uint32_t>(map.orig_height));
    out.push_back(2);  // block_w
    out.push_back(2);  // block_h
    detail::put_u32_be(out, map.codebook_size);
    for (const std::uint16_t idx : map.indices) detail::put_u16_be(out, idx);
    return out;
}

inline IndexMap load_index_file(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 4 || bytes[0] != 'V' || bytes[1] != 'Q' || bytes[2] != 'I' ||
        bytes[3] != '1')
        detail::fail("index file: bad magic");
    if (bytes.size() < 18) detail::fail("index file: truncated header");

    IndexMap map;
    const std::uint32_t width = detail::get_u32_be(&bytes[4]);
    const std::uint32_t height = detail::get_u32_be(&bytes[8]);
    if (width < 1 || height < 1) detail::fail("index file: image dimensions must be positive");
    if (width > static_cast<std::uint32_t>(std::numeric_limits<int>::max()) ||
        height > static_cast<std::uint32_t>(std::numeric_limits<int>::max()))
        detail::fail("index file: image dimensions too large");
    if (bytes[12] != 2 || bytes[13] != 2)
        detail::fail("index file: unsupported block size " + std::to_string(bytes[12]) + "x" +
                     std::to_string(bytes[13]));
    const std::uint32_t codebook_size = detail::get_u32_be(&bytes[14]);
    if (codebook_size < 1 || codebook_size > kMaxCodebookSize)
        detail::fail("index file: codebook size out of range");

    map.orig_width = static_cast<int>(width);
    map.orig_height = static_cast<int>(height);
    map.blocks_w = static_cast<int>(blocks_wide(map.orig_width));
    map.blocks_h = static_cast<int>(blocks_high(map.orig_height));
    map.codebook_size = codebook_size;

    const std::uint64_t count =
        static_cast<std::uint64_t>(map.blocks_w) * static_cast<std::uint64_t>(map.blocks_h);
    const std::uint64_t payload = bytes.size() - 18;
    if (payload < count * 2) detail::fail("index file: truncated index payload");
    if (payload > count * 2) detail::fail("index file: trailing data");

    map.indices.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint16_t idx = detail::get_u16_be(&bytes[18 + i * 2]);
        if (idx >= codebook_size) detail::fail("index file: index out of range");
        map.indices.push_back(idx);
    }
    return map;
}

}  // namespace gsvq
