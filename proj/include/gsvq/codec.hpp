// Image <-> index-map codec: replace each 2x2 block with the index of its
// nearest codeword, and reconstruct by codeword lookup.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gsvq/image.hpp"
#include "gsvq/quantizer.hpp"

namespace gsvq {

inline constexpr std::uint32_t kMaxCodebookSize = 65536;  // indices are stored as 16-bit values

struct IndexMap {
    int orig_width = 0;
    int orig_height = 0;
    int blocks_w = 0;
    int blocks_h = 0;
    std::uint32_t codebook_size = 0;
    std::vector<std::uint16_t> indices;  // row-major over the block grid

    bool operator==(const IndexMap&) const = default;
};

namespace detail {

inline void check_index_map(const IndexMap& map) {
    if (map.orig_width < 1 || map.orig_height < 1)
        fail("codec: index map dimensions must be positive");
    if (static_cast<std::size_t>(map.blocks_w) != blocks_wide(map.orig_width) ||
        static_cast<std::size_t>(map.blocks_h) != blocks_high(map.orig_height))
        fail("codec: block grid does not match image dimensions");
    if (map.codebook_size < 1 || map.codebook_size > kMaxCodebookSize)
        fail("codec: codebook size out of range");
    if (map.indices.size() !=
        static_cast<std::size_t>(map.blocks_w) * static_cast<std::size_t>(map.blocks_h))
        fail("codec: index count does not match block grid");
    for (const std::uint16_t idx : map.indices)
        if (idx >= map.codebook_size) fail("codec: index out of range");
}

}  // namespace detail

inline IndexMap compress_image(const GrayImage& image, const Codebook& codebook) {
    if (codebook.size() == 0) detail::fail("codec: empty codebook");
    if (codebook.size() > kMaxCodebookSize)
        detail::fail("codec: codebook size " + std::to_string(codebook.size()) + " exceeds " +
                     std::to_string(kMaxCodebookSize));

    const std::vector<BlockVec> blocks = image_to_blocks(image);
    IndexMap map;
    map.orig_width = image.width;
    map.orig_height = image.height;
    map.blocks_w = static_cast<int>(blocks_wide(image.width));
    map.blocks_h = static_cast<int>(blocks_high(image.height));
    map.codebook_size = static_cast<std::uint32_t>(codebook.size());
    map.indices.reserve(blocks.size());
    for (const BlockVec& b : blocks)
        map.indices.push_back(static_cast<std::uint16_t>(find_match(b, codebook)));
    return map;
}

inline GrayImage decompress_image(const IndexMap& map, const Codebook& codebook) {
    detail::check_index_map(map);
    if (map.codebook_size != codebook.size())
        detail::fail("codec: codebook size mismatch (index map declares " +
                     std::to_string(map.codebook_size) + ", codebook has " +
                     std::to_string(codebook.size()) + ")");

    std::vector<BlockVec> blocks;
    blocks.reserve(map.indices.size());
    for (const std::uint16_t idx : map.indices) blocks.push_back(codebook.centroids[idx]);
    return blocks_to_image(blocks, map.orig_width, map.orig_height);
}

}  // namespace gsvq
