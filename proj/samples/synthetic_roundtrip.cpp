// Library walkthrough: build a synthetic image, train a codebook, compress,
// reconstruct, and print the quality numbers.
#include <cmath>
#include <iostream>

#include "gsvq/gsvq.hpp"

namespace {

gsvq::GrayImage make_test_image(int width, int height) {
    gsvq::GrayImage img{width, height, {}};
    img.pixels.reserve(static_cast<std::size_t>(width) * height);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            const double ramp = 120.0 * c / width;
            const double wave = 80.0 * std::sin(r * 0.21) * std::cos(c * 0.13);
            const double v = 96.0 + ramp + wave;
            img.pixels.push_back(static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0)));
        }
    }
    return img;
}

}  // namespace

int main() {
    const gsvq::GrayImage image = make_test_image(128, 128);

    gsvq::TrainerConfig config;
    config.target_size = 16;
    config.refine_iters = 2;

    const auto vectors = gsvq::image_to_blocks(image);
    const auto [codebook, report] = gsvq::train_codebook(vectors, config);
    std::cout << "trained " << codebook.size() << "-word codebook in "
              << report.elapsed_seconds << " s, distortion " << report.final_distortion()
              << "\n";

    const gsvq::IndexMap map = gsvq::compress_image(image, codebook);
    const gsvq::GrayImage reconstructed = gsvq::decompress_image(map, codebook);

    const gsvq::QualityReport quality = gsvq::quality_report(image, reconstructed, map);
    std::cout << "mse " << quality.mse << ", psnr " << quality.psnr_db << " dB, entropy "
              << quality.entropy_bits << " bits/index, " << quality.raw_index_bpp
              << " bpp raw (" << quality.compression_ratio << ":1)\n";
    return 0;
}
