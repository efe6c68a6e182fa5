#pragma once

#include "moduli/local_model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace moduli::ffprobe {

struct CountOptions {
    std::uint64_t budget = 1ull << 32;  // cap on q^dim U
    enum class Strategy { Auto, Exhaustive, Bilinear } strategy = Strategy::Auto;
    // Indices j whose moment block must vanish; all of them by default.
    // Fewer equations can only enlarge the count.
    std::optional<std::vector<int>> mu_blocks;
};

struct CountResult {
    std::uint64_t q = 0;
    long long dim_u = 0;
    std::uint64_t total_points = 0;  // q^dim U
    std::uint64_t solutions = 0;
    double log_dim_estimate = 0.0;   // log_q(solutions); heuristic, counts are exact
    std::string strategy_used;
};

// Exact number of F_q-points of the null-fibre (or of the locus where the
// selected moment blocks vanish). Exhaustive enumeration walks all q^dim U
// points. The bilinear strategy uses that, with the standard pairing
// convention, U splits into halves with mu linear in the second half once
// the first is fixed; it sums exact kernel counts over q^(dim U / 2) outer
// points and is available whenever the pairing blocks have that shape.
CountResult count_points(const local_model::LocalModel& model, std::uint64_t q,
                         const CountOptions& opts = {});

struct DimEstimate {
    double slope;        // least-squares slope of log solutions vs log q
    long long expected;  // n^t (D - I) n + 1
    double deviation;    // slope - expected
    std::vector<CountResult> counts;
};

// Lang-Weil style dimension heuristic from counts at >= 2 primes.
DimEstimate dim_estimate(const local_model::LocalModel& model,
                         const std::vector<std::uint64_t>& primes, const CountOptions& opts = {});

bool is_prime(std::uint64_t q);

}  // namespace moduli::ffprobe
