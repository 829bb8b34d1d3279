// Rate-distortion metrics for a compression run: MSE, PSNR, index-stream
// Shannon entropy, bitrates, and compression ratio.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "gsvq/codec.hpp"
#include "gsvq/image.hpp"

namespace gsvq {

struct QualityReport {
    double mse = 0.0;
    double psnr_db = 0.0;        // +infinity when mse is 0
    double entropy_bits = 0.0;   // bits per codeword index
    double raw_index_bpp = 0.0;  // ceil(log2 M) / 4
    double entropy_bpp = 0.0;    // entropy_bits / 4
    double original_bpp = 8.0;
    double compression_ratio = 0.0;  // original_bpp / raw_index_bpp
};

inline double mse(const GrayImage& a, const GrayImage& b) {
    detail::check_image(a);
    detail::check_image(b);
    if (a.width != b.width || a.height != b.height)
        detail::fail("metrics: dimension mismatch (" + std::to_string(a.width) + "x" +
                     std::to_string(a.height) + " vs " + std::to_string(b.width) + "x" +
                     std::to_string(b.height) + ")");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        const double d = static_cast<double>(a.pixels[i]) - static_cast<double>(b.pixels[i]);
        sum += d * d;
    }
    return sum / (static_cast<double>(a.width) * static_cast<double>(a.height));
}

// 8-bit peak formula: 10 log10(255^2 / mse).
inline double psnr(double mse_value) {
    if (mse_value < 0.0) detail::fail("metrics: negative mse");
    if (mse_value == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse_value);
}

// Entropy of the empirical index distribution, in bits per index.
inline double shannon_entropy(std::span<const std::uint16_t> indices, std::uint32_t symbol_count) {
    if (indices.empty()) detail::fail("metrics: empty index sequence");
    if (symbol_count < 1) detail::fail("metrics: symbol count must be positive");
    std::vector<std::uint64_t> counts(symbol_count, 0);
    for (const std::uint16_t idx : indices) {
        if (idx >= symbol_count) detail::fail("metrics: index out of range");
        ++counts[idx];
    }
    const double n = static_cast<double>(indices.size());
    double entropy = 0.0;
    for (const std::uint64_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / n;
        entropy -= p * std::log2(p);
    }
    return entropy;
}

// Smallest b with 2^b >= m: the fixed-width bits needed per stored index.
inline std::uint32_t index_bits(std::uint32_t m) {
    std::uint32_t bits = 0;
    while ((std::uint64_t{1} << bits) < m) ++bits;
    return bits;
}

struct RateSummary {
    double raw_index_bpp = 0.0;
    double entropy_bpp = 0.0;
    double original_bpp = 8.0;
    double compression_ratio = 0.0;
};

// Rates per pixel over 2x2 blocks; codebook side-channel storage excluded.
inline RateSummary rate_report(const IndexMap& map, double entropy_bits) {
    detail::check_index_map(map);
    RateSummary rates;
    rates.raw_index_bpp = static_cast<double>(index_bits(map.codebook_size)) / 4.0;
    rates.entropy_bpp = entropy_bits / 4.0;
    rates.compression_ratio = rates.original_bpp / rates.raw_index_bpp;
    return rates;
}

inline QualityReport quality_report(const GrayImage& original, const GrayImage& reconstructed,
                                    const IndexMap& map) {
    QualityReport report;
    report.mse = mse(original, reconstructed);
    report.psnr_db = psnr(report.mse);
    report.entropy_bits = shannon_entropy(map.indices, map.codebook_size);
    const RateSummary rates = rate_report(map, report.entropy_bits);
    report.raw_index_bpp = rates.raw_index_bpp;
    report.entropy_bpp = rates.entropy_bpp;
    report.original_bpp = rates.original_bpp;
    report.compression_ratio = rates.compression_ratio;
    return report;
}

}  // namespace gsvq
