// Codebook training by iterative centroid doubling with randomized mutation,
// plus Lloyd-style membership/migration passes and nearest-codeword queries.
//
// Training outline: start from a single centroid (the mean of all training
// vectors); repeat log2(target_size) times: duplicate every centroid with a
// small uniform perturbation, then run one or more assignment/migration
// passes. Optional refinement passes run at the final size. Everything is
// deterministic given (vectors, config).
#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gsvq/image.hpp"
#include "gsvq/rng.hpp"

namespace gsvq {

struct Codebook {
    std::vector<BlockVec> centroids;

    std::size_t size() const { return centroids.size(); }
    bool operator==(const Codebook&) const = default;
};

// owner[i] is the index of the centroid that training vector i belongs to.
using Membership = std::vector<std::uint32_t>;

struct TrainerConfig {
    std::uint32_t target_size = 64;  // power of two, >= 2
    double delta = 1.0;              // perturbation half-width, intensity units
    std::uint64_t seed = 0;
    int inner_iters = 1;             // Lloyd passes per doubling
    int refine_iters = 0;            // extra Lloyd passes after the final doubling
};

struct TrainerRound {
    std::uint32_t codebook_size = 0;
    double distortion = 0.0;  // mean squared error per pixel component
};

struct TrainerReport {
    std::vector<TrainerRound> rounds;  // one entry per Lloyd pass
    double elapsed_seconds = 0.0;

    double final_distortion() const {
        return rounds.empty() ? 0.0 : rounds.back().distortion;
    }
};

constexpr bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

// Squared Euclidean error between a vector and a centroid.
inline double squared_error(const BlockVec& a, const BlockVec& b) {
    double sum = 0.0;
    for (int k = 0; k < 4; ++k) {
        const double d = a[k] - b[k];
        sum += d * d;
    }
    return sum;
}

namespace detail {

struct Nearest {
    std::uint32_t index = 0;
    double error = 0.0;
};

// Lowest index wins ties so results are order-stable.
inline Nearest nearest_centroid(const BlockVec& v, const Codebook& cb) {
    Nearest best{0, squared_error(v, cb.centroids[0])};
    for (std::uint32_t j = 1; j < cb.centroids.size(); ++j) {
        const double e = squared_error(v, cb.centroids[j]);
        if (e < best.error) best = {j, e};
    }
    return best;
}

}  // namespace detail

inline Codebook init_codebook(std::span<const BlockVec> vectors) {
    if (vectors.empty()) detail::fail("quantizer: empty training set");
    BlockVec mean{0.0, 0.0, 0.0, 0.0};
    for (const BlockVec& v : vectors)
        for (int k = 0; k < 4; ++k) mean[k] += v[k];
    for (int k = 0; k < 4; ++k) mean[k] /= static_cast<double>(vectors.size());
    return Codebook{{mean}};
}

// Adds an independent uniform offset in [-delta, +delta] to each component,
// clamped to [0, 255]. Always consumes exactly four draws.
inline BlockVec perturb_center(const BlockVec& center, double delta, SplitMix64& rng) {
    BlockVec out;
    for (int k = 0; k < 4; ++k)
        out[k] = std::clamp(center[k] + rng.next_offset(delta), 0.0, 255.0);
    return out;
}

// Result layout: originals 0..M-1 unchanged, then the mutated copy of
// centroid j at position M+j. Draws are consumed in centroid order.
inline Codebook double_codebook(const Codebook& cb, double delta, SplitMix64& rng) {
    Codebook out;
    out.centroids.reserve(cb.centroids.size() * 2);
    out.centroids = cb.centroids;
    for (const BlockVec& c : cb.centroids)
        out.centroids.push_back(perturb_center(c, delta, rng));
    return out;
}

struct AssignResult {
    Membership owner;
    double distortion = 0.0;  // sum of per-vector minimum errors / (4 N)
};

inline AssignResult assign_members(std::span<const BlockVec> vectors, const Codebook& cb) {
    if (vectors.empty()) detail::fail("quantizer: empty training set");
    if (cb.centroids.empty()) detail::fail("quantizer: empty codebook");

    AssignResult result;
    result.owner.resize(vectors.size());
    double total = 0.0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        const detail::Nearest n = detail::nearest_centroid(vectors[i], cb);
        result.owner[i] = n.index;
        total += n.error;
    }
    result.distortion = total / (4.0 * static_cast<double>(vectors.size()));
    return result;
}

// Migration: each centroid with members moves to the component-wise mean of
// its members. An empty centroid is replaced by a perturbed copy of the
// centroid of the non-empty cell with the largest summed distortion
// (lowest index on ties), processed in ascending empty-index order.
inline Codebook recalc_centroids(std::span<const BlockVec> vectors, const Membership& owner,
                                 const Codebook& cb, double delta, SplitMix64& rng) {
    const std::size_t m = cb.centroids.size();
    if (m == 0) detail::fail("quantizer: empty codebook");
    if (owner.size() != vectors.size()) detail::fail("quantizer: membership size mismatch");
    for (const std::uint32_t j : owner)
        if (j >= m) detail::fail("quantizer: membership index out of range");

    std::vector<BlockVec> sums(m, BlockVec{0.0, 0.0, 0.0, 0.0});
    std::vector<std::size_t> counts(m, 0);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        const std::uint32_t j = owner[i];
        for (int k = 0; k < 4; ++k) sums[j][k] += vectors[i][k];
        ++counts[j];
    }

    Codebook out = cb;
    bool any_empty = false;
    for (std::size_t j = 0; j < m; ++j) {
        if (counts[j] > 0) {
            for (int k = 0; k < 4; ++k)
                out.centroids[j][k] = sums[j][k] / static_cast<double>(counts[j]);
        } else {
            any_empty = true;
        }
    }

    if (any_empty) {
        std::vector<double> cell_sse(m, 0.0);
        for (std::size_t i = 0; i < vectors.size(); ++i)
            cell_sse[owner[i]] += squared_error(vectors[i], out.centroids[owner[i]]);

        std::size_t donor = m;
        for (std::size_t j = 0; j < m; ++j) {
            if (counts[j] == 0) continue;
            if (donor == m || cell_sse[j] > cell_sse[donor]) donor = j;
        }
        // At least one cell is non-empty whenever vectors exist.
        if (donor == m) detail::fail("quantizer: empty training set");

        for (std::size_t j = 0; j < m; ++j)
            if (counts[j] == 0)
                out.centroids[j] = perturb_center(out.centroids[donor], delta, rng);
    }
    return out;
}

// Entry-wise identical to assign_members: same metric, same tie-break.
inline std::uint32_t find_match(const BlockVec& v, const Codebook& cb) {
    if (cb.centroids.empty()) detail::fail("quantizer: empty codebook");
    return detail::nearest_centroid(v, cb).index;
}

namespace detail {

inline void check_trainer_config(const TrainerConfig& cfg) {
    if (cfg.target_size < 2 || !is_power_of_two(cfg.target_size))
        fail("trainer: target size must be a power of two >= 2 (got " +
             std::to_string(cfg.target_size) + ")");
    if (!(cfg.delta > 0.0)) fail("trainer: delta must be positive");
    if (cfg.inner_iters < 1) fail("trainer: inner_iters must be >= 1");
    if (cfg.refine_iters < 0) fail("trainer: refine_iters must be >= 0");
}

}  // namespace detail

// Full training loop. Each recorded round holds the distortion measured by a
// fresh assignment after that pass's migration, so the last entry is the
// final codebook's distortion and entries at a fixed size are non-increasing.
inline std::pair<Codebook, TrainerReport> train_codebook(std::span<const BlockVec> vectors,
                                                         const TrainerConfig& cfg) {
    detail::check_trainer_config(cfg);
    if (vectors.empty()) detail::fail("quantizer: empty training set");

    const auto start = std::chrono::steady_clock::now();
    SplitMix64 rng(cfg.seed);

    int doublings = 0;
    for (std::uint32_t s = 1; s < cfg.target_size; s *= 2) ++doublings;

    Codebook cb = init_codebook(vectors);
    TrainerReport report;
    report.rounds.reserve(static_cast<std::size_t>(doublings) * cfg.inner_iters +
                          static_cast<std::size_t>(cfg.refine_iters));

    const auto lloyd_pass = [&](AssignResult& current) {
        cb = recalc_centroids(vectors, current.owner, cb, cfg.delta, rng);
        current = assign_members(vectors, cb);
        report.rounds.push_back({static_cast<std::uint32_t>(cb.size()), current.distortion});
    };

    AssignResult current;
    for (int t = 0; t < doublings; ++t) {
        cb = double_codebook(cb, cfg.delta, rng);
        current = assign_members(vectors, cb);
        for (int k = 0; k < cfg.inner_iters; ++k) lloyd_pass(current);
    }
    for (int k = 0; k < cfg.refine_iters; ++k) lloyd_pass(current);

    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {std::move(cb), std::move(report)};
}

}  // namespace gsvq
