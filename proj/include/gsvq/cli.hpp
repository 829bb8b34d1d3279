// Command-line front end: train / compress / decompress / roundtrip / metrics.
#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gsvq/codec.hpp"
#include "gsvq/image.hpp"
#include "gsvq/metrics.hpp"
#include "gsvq/persistence.hpp"
#include "gsvq/quantizer.hpp"

namespace gsvq::cli {

inline std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) detail::fail("cannot open file '" + path + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) detail::fail("cannot read file '" + path + "'");
    return bytes;
}

inline void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) detail::fail("cannot write file '" + path + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) detail::fail("cannot write file '" + path + "'");
}

inline void write_file(const std::string& path, const std::string& text) {
    write_file(path, std::span<const std::uint8_t>(
                         reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

// Shortest round-trip decimal; infinities print as "inf".
inline std::string fmt_value(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return detail::format_real(v);
}

namespace detail_cli {

struct TrainerFlags {
    std::uint32_t size = 64;
    std::uint64_t seed = 0;
    double delta = 1.0;
    int inner_iters = 1;
    int refine_iters = 0;
};

inline void add_trainer_flags(CLI::App* cmd, TrainerFlags& flags) {
    cmd->add_option("--size", flags.size, "Codebook size (power of two in [2, 65536])")
        ->required();
    cmd->add_option("--seed", flags.seed, "PRNG seed (default 0, reproducible by default)");
    cmd->add_option("--delta", flags.delta, "Mutation half-width in intensity units");
    cmd->add_option("--inner-iters", flags.inner_iters, "Lloyd passes per doubling");
    cmd->add_option("--refine-iters", flags.refine_iters, "Extra Lloyd passes at final size");
}

inline TrainerConfig to_config(const TrainerFlags& flags) {
    if (flags.size < 2 || flags.size > kMaxCodebookSize || !is_power_of_two(flags.size))
        detail::fail("--size must be a power of two in [2, 65536] (got " +
                     std::to_string(flags.size) + ")");
    return TrainerConfig{flags.size, flags.delta, flags.seed, flags.inner_iters,
                         flags.refine_iters};
}

struct RoundtripResult {
    QualityReport quality;
    double train_seconds = 0.0;
    double compress_seconds = 0.0;
};

inline void print_text_report(std::ostream& out, const RoundtripResult& r) {
    out << "mse = " << fmt_value(r.quality.mse) << "\n"
        << "psnr_db = " << fmt_value(r.quality.psnr_db) << "\n"
        << "entropy_bits = " << fmt_value(r.quality.entropy_bits) << "\n"
        << "raw_index_bpp = " << fmt_value(r.quality.raw_index_bpp) << "\n"
        << "entropy_bpp = " << fmt_value(r.quality.entropy_bpp) << "\n"
        << "original_bpp = " << fmt_value(r.quality.original_bpp) << "\n"
        << "compression_ratio = " << fmt_value(r.quality.compression_ratio) << "\n"
        << "train_seconds = " << fmt_value(r.train_seconds) << "\n"
        << "compress_seconds = " << fmt_value(r.compress_seconds) << "\n";
}

// Non-finite values (psnr_db on a lossless run) serialize as JSON null.
inline void print_json_report(std::ostream& out, const RoundtripResult& r) {
    nlohmann::ordered_json j;
    j["mse"] = r.quality.mse;
    j["psnr_db"] = r.quality.psnr_db;
    j["entropy_bits"] = r.quality.entropy_bits;
    j["raw_index_bpp"] = r.quality.raw_index_bpp;
    j["entropy_bpp"] = r.quality.entropy_bpp;
    j["original_bpp"] = r.quality.original_bpp;
    j["compression_ratio"] = r.quality.compression_ratio;
    j["train_seconds"] = r.train_seconds;
    j["compress_seconds"] = r.compress_seconds;
    out << j.dump(2) << "\n";
}

}  // namespace detail_cli

// args holds the command line without the program name, in natural order.
// Returns the process exit code; all output goes to the given streams.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lossy grayscale image compression with a genetic-splitting vector quantizer"};
    app.name("gsvq");
    app.require_subcommand(1);

    detail_cli::TrainerFlags trainer;
    std::string image_path;
    std::string codebook_path;
    std::string indices_path;
    std::string out_path;
    std::string train_path;
    std::string test_path;
    std::string out_dir;
    std::string original_path;
    std::string reconstructed_path;
    std::string report_format = "text";

    CLI::App* train = app.add_subcommand("train", "Train a codebook from a PGM image");
    train->add_option("--image", image_path, "Training image (PGM)")->required();
    train->add_option("--out", out_path, "Output codebook path (.cbk.csv)")->required();
    detail_cli::add_trainer_flags(train, trainer);

    CLI::App* compress = app.add_subcommand("compress", "Compress an image to an index file");
    compress->add_option("--image", image_path, "Input image (PGM)")->required();
    compress->add_option("--codebook", codebook_path, "Codebook file (.cbk.csv)")->required();
    compress->add_option("--out", out_path, "Output index file (.vqi)")->required();

    CLI::App* decompress =
        app.add_subcommand("decompress", "Reconstruct an image from an index file");
    decompress->add_option("--indices", indices_path, "Index file (.vqi)")->required();
    decompress->add_option("--codebook", codebook_path, "Codebook file (.cbk.csv)")->required();
    decompress->add_option("--out", out_path, "Output image path (PGM)")->required();

    CLI::App* roundtrip =
        app.add_subcommand("roundtrip", "Train, compress, decompress, and report quality");
    roundtrip->add_option("--train", train_path, "Training image (PGM)")->required();
    roundtrip->add_option("--test", test_path, "Test image (PGM)")->required();
    roundtrip->add_option("--out-dir", out_dir, "Directory for output artifacts")->required();
    detail_cli::add_trainer_flags(roundtrip, trainer);
    roundtrip->add_option("--report", report_format, "Report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* metrics_cmd =
        app.add_subcommand("metrics", "Compare two images (MSE and PSNR)");
    metrics_cmd->add_option("--original", original_path, "Reference image (PGM)")->required();
    metrics_cmd->add_option("--reconstructed", reconstructed_path, "Image to compare (PGM)")
        ->required();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*train) {
            const TrainerConfig cfg = detail_cli::to_config(trainer);
            const GrayImage image = load_pgm(read_file(image_path));
            const std::vector<BlockVec> vectors = image_to_blocks(image);
            const auto [codebook, report] = train_codebook(vectors, cfg);
            write_file(out_path, save_codebook(codebook));
            out << "train_seconds = " << fmt_value(report.elapsed_seconds) << "\n"
                << "final_distortion = " << fmt_value(report.final_distortion()) << "\n";
        } else if (*compress) {
            const GrayImage image = load_pgm(read_file(image_path));
            const Codebook codebook = load_codebook(read_file(codebook_path));
            const auto start = std::chrono::steady_clock::now();
            const IndexMap map = compress_image(image, codebook);
            const double seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            write_file(out_path, save_index_file(map));
            out << "compress_seconds = " << fmt_value(seconds) << "\n";
        } else if (*decompress) {
            const IndexMap map = load_index_file(read_file(indices_path));
            const Codebook codebook = load_codebook(read_file(codebook_path));
            const GrayImage image = decompress_image(map, codebook);
            write_file(out_path, save_pgm(image));
        } else if (*roundtrip) {
            const TrainerConfig cfg = detail_cli::to_config(trainer);
            const GrayImage train_image = load_pgm(read_file(train_path));
            const GrayImage test_image = load_pgm(read_file(test_path));

            const std::vector<BlockVec> vectors = image_to_blocks(train_image);
            const auto [codebook, report] = train_codebook(vectors, cfg);

            const auto start = std::chrono::steady_clock::now();
            const IndexMap map = compress_image(test_image, codebook);
            const double compress_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            const GrayImage reconstructed = decompress_image(map, codebook);

            const std::filesystem::path dir(out_dir);
            std::filesystem::create_directories(dir);
            write_file((dir / "codebook.cbk.csv").string(), save_codebook(codebook));
            write_file((dir / "indices.vqi").string(), save_index_file(map));
            write_file((dir / "reconstructed.pgm").string(), save_pgm(reconstructed));

            detail_cli::RoundtripResult result{quality_report(test_image, reconstructed, map),
                                               report.elapsed_seconds, compress_seconds};
            if (report_format == "json")
                detail_cli::print_json_report(out, result);
            else
                detail_cli::print_text_report(out, result);
        } else if (*metrics_cmd) {
            const GrayImage original = load_pgm(read_file(original_path));
            const GrayImage reconstructed = load_pgm(read_file(reconstructed_path));
            const double error = mse(original, reconstructed);
            out << "mse = " << fmt_value(error) << "\n"
                << "psnr_db = " << fmt_value(psnr(error)) << "\n";
        }
    } catch (const std::exception& e) {
        err << "gsvq: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace gsvq::cli
