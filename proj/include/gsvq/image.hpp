// 8-bit grayscale images: Netpbm PGM load/save (P2 and P5 read, P5 write)
// and conversion between pixel grids and 2x2 block vectors.
#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gsvq {

struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // row-major, width * height
    bool operator==(const GrayImage&) const = default;
};

// One 2x2 pixel block as {top-left, top-right, bottom-left, bottom-right}.
using BlockVec = std::array<double, 4>;

namespace detail {

[[noreturn]] inline void fail(const std::string& msg) { throw std::runtime_error(msg); }

inline void check_image(const GrayImage& img) {
    if (img.width < 1 || img.height < 1) fail("pgm: image dimensions must be positive");
    if (img.pixels.size() != static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height))
        fail("pgm: pixel buffer size does not match dimensions");
}

// Whitespace-delimited header tokens; '#' comments run to end of line.
struct PgmReader {
    std::span<const std::uint8_t> data;
    std::size_t pos = 0;

    static bool is_space(std::uint8_t c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
    }

    void skip_space_and_comments() {
        while (pos < data.size()) {
            if (is_space(data[pos])) {
                ++pos;
            } else if (data[pos] == '#') {
                while (pos < data.size() && data[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    // Empty return means end of input.
    std::string next_token() {
        skip_space_and_comments();
        std::string tok;
        while (pos < data.size() && !is_space(data[pos]) && data[pos] != '#')
            tok.push_back(static_cast<char>(data[pos++]));
        return tok;
    }

    int next_header_int(const char* field) {
        const std::string tok = next_token();
        if (tok.empty()) fail(std::string("pgm: missing ") + field + " in header");
        int value = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc{} || ptr != tok.data() + tok.size())
            fail(std::string("pgm: invalid ") + field + " '" + tok + "'");
        return value;
    }
};

}  // namespace detail

inline GrayImage load_pgm(std::span<const std::uint8_t> bytes) {
    detail::PgmReader in{bytes};

    const std::string magic = in.next_token();
    if (magic.empty()) detail::fail("pgm: missing magic");
    if (magic != "P5" && magic != "P2") detail::fail("pgm: unsupported magic '" + magic + "'");

    const int width = in.next_header_int("width");
    if (width < 1) detail::fail("pgm: width must be positive");
    const int height = in.next_header_int("height");
    if (height < 1) detail::fail("pgm: height must be positive");
    const int maxval = in.next_header_int("maxval");
    if (maxval < 1) detail::fail("pgm: maxval must be positive");
    if (maxval > 255) detail::fail("pgm: maxval " + std::to_string(maxval) + " exceeds 255");

    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    GrayImage img{width, height, {}};
    img.pixels.reserve(count);

    if (magic == "P5") {
        if (in.pos >= bytes.size() || !detail::PgmReader::is_space(bytes[in.pos]))
            detail::fail("pgm: expected single whitespace after maxval");
        ++in.pos;  // exactly one separator byte before the raster
        if (bytes.size() - in.pos < count) detail::fail("pgm: truncated pixel data");
        img.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(in.pos),
                          bytes.begin() + static_cast<std::ptrdiff_t>(in.pos + count));
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const std::string tok = in.next_token();
            if (tok.empty()) detail::fail("pgm: truncated pixel data");
            int value = 0;
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
            if (ec != std::errc{} || ptr != tok.data() + tok.size())
                detail::fail("pgm: invalid pixel value '" + tok + "'");
            if (value < 0 || value > 255)
                detail::fail("pgm: pixel value " + tok + " out of range");
            img.pixels.push_back(static_cast<std::uint8_t>(value));
        }
    }
    return img;
}

inline GrayImage load_pgm(std::string_view text) {
    return load_pgm(std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

inline std::vector<std::uint8_t> save_pgm(const GrayImage& img) {
    detail::check_image(img);
    const std::string header =
        "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    std::vector<std::uint8_t> out;
    out.reserve(header.size() + img.pixels.size());
    out.insert(out.end(), header.begin(), header.end());
    out.insert(out.end(), img.pixels.begin(), img.pixels.end());
    return out;
}

inline std::size_t blocks_wide(int width) { return (static_cast<std::size_t>(width) + 1) / 2; }
inline std::size_t blocks_high(int height) { return (static_cast<std::size_t>(height) + 1) / 2; }

// Blocks are emitted row-major over the block grid. Odd image dimensions are
// padded on the right/bottom by edge replication; callers keep the true
// dimensions so blocks_to_image can crop the padding away.
inline std::vector<BlockVec> image_to_blocks(const GrayImage& img) {
    detail::check_image(img);
    const std::size_t bw = blocks_wide(img.width);
    const std::size_t bh = blocks_high(img.height);

    const auto sample = [&](std::size_t r, std::size_t c) -> double {
        r = std::min(r, static_cast<std::size_t>(img.height) - 1);
        c = std::min(c, static_cast<std::size_t>(img.width) - 1);
        return static_cast<double>(img.pixels[r * static_cast<std::size_t>(img.width) + c]);
    };

    std::vector<BlockVec> blocks;
    blocks.reserve(bw * bh);
    for (std::size_t br = 0; br < bh; ++br) {
        for (std::size_t bc = 0; bc < bw; ++bc) {
            blocks.push_back({sample(2 * br, 2 * bc), sample(2 * br, 2 * bc + 1),
                              sample(2 * br + 1, 2 * bc), sample(2 * br + 1, 2 * bc + 1)});
        }
    }
    return blocks;
}

// Inverse of image_to_blocks on the unpadded region. Components are rounded
// to the nearest integer (ties away from zero) and clamped to [0, 255].
inline GrayImage blocks_to_image(std::span<const BlockVec> blocks, int width, int height) {
    if (width < 1 || height < 1) detail::fail("blocks: image dimensions must be positive");
    const std::size_t bw = blocks_wide(width);
    const std::size_t bh = blocks_high(height);
    if (blocks.size() != bw * bh)
        detail::fail("blocks: expected " + std::to_string(bw * bh) + " blocks for " +
                     std::to_string(width) + "x" + std::to_string(height) + ", got " +
                     std::to_string(blocks.size()));

    GrayImage img{width, height,
                  std::vector<std::uint8_t>(static_cast<std::size_t>(width) *
                                            static_cast<std::size_t>(height))};
    for (std::size_t br = 0; br < bh; ++br) {
        for (std::size_t bc = 0; bc < bw; ++bc) {
            const BlockVec& b = blocks[br * bw + bc];
            for (int k = 0; k < 4; ++k) {
                const std::size_t r = 2 * br + static_cast<std::size_t>(k / 2);
                const std::size_t c = 2 * bc + static_cast<std::size_t>(k % 2);
                if (r >= static_cast<std::size_t>(height) || c >= static_cast<std::size_t>(width))
                    continue;  // padding, discarded
                const double rounded = std::round(b[k]);
                img.pixels[r * static_cast<std::size_t>(width) + c] =
                    static_cast<std::uint8_t>(std::clamp(rounded, 0.0, 255.0));
            }
        }
    }
    return img;
}

}  // namespace gsvq
