#pragma once

#include "moduli/local_model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace moduli::estimates {

// Eigenvalue decomposition of a semisimple stabilizer element: nonzero
// vectors n(lambda) summing to n, at least two of them. Unordered, so the
// parts are kept sorted.
struct SemisimpleSplit {
    std::vector<std::vector<long long>> parts;

    std::size_t count() const { return parts.size(); }  // nu
    std::string str() const;
};

// Numerical shadow of a nilpotent stabilizer element: level[k-1] = n^(k),
// with sum_k k * n^(k) = n and some level k >= 2 occupied.
struct UnipotentGrading {
    std::vector<std::vector<long long>> level;

    std::string str() const;
};

// All splits of n with >= 2 nonzero parts, deterministic order.
std::vector<SemisimpleSplit> enum_splits(const std::vector<long long>& n);

// All gradings of n with a nonzero level >= 2, deterministic order.
std::vector<UnipotentGrading> enum_gradings(const std::vector<long long>& n);

// A Delta estimate evaluated through two independent closed forms; the two
// must agree exactly, else the evaluation throws.
struct DeltaForms {
    long long value;
    long long form_direct;       // dimension-count form
    long long form_reorganized;  // pairwise / level-collected form
    std::vector<long long> part_bounds;  // per-level diagnostic k((k-1)a - 1)(sum n^(k))^2
};

DeltaForms delta_semisimple_forms(const std::vector<long long>& n, const Matrix<long long>& D,
                                  const SemisimpleSplit& split);
DeltaForms delta_unipotent_forms(const Matrix<long long>& D, const UnipotentGrading& grading,
                                 long long slack);

long long delta_semisimple(const local_model::LocalModel& model, const SemisimpleSplit& split);
long long delta_unipotent(const local_model::LocalModel& model, const UnipotentGrading& grading);

struct ExceptionalHit {
    enum class Kind { Split, Grading };
    Kind kind;
    std::string description;
    long long delta;
};

struct DeltaReport {
    std::vector<long long> n;
    Matrix<long long> D;
    long long slack = 0;
    std::size_t split_count = 0;
    std::size_t grading_count = 0;
    std::optional<long long> min_delta;  // empty when there is no decomposition
    std::string argmin;
    std::vector<ExceptionalHit> hits;  // decompositions attaining delta = 3
    bool all_forms_agree = false;
    std::vector<std::string> violations;
    std::vector<std::string> notes;

    bool ok() const { return violations.empty(); }
};

// Exhaustive check of a single model: every split and grading, both closed
// forms, delta >= 3 everywhere, delta = 3 only in the two known shapes.
DeltaReport verify_bounds(const local_model::LocalModel& model);

struct SweepConfig {
    long long max_total = 6;    // cap on sum n_i
    long long max_entry = 8;    // cap on D entries (diagonals even, >= 4; off-diagonal >= 2)
    long long grid_max_s = 4;   // exhaustive D-grid up to this many vertices
    std::size_t samples_per_vector = 200;  // random D grid points checked with both forms
    std::uint64_t sample_seed = 1;
};

struct SweepResult {
    std::size_t vectors = 0;
    std::size_t decompositions = 0;
    std::size_t grid_models = 0;
    std::size_t grid_evaluations = 0;
    std::size_t sampled_models = 0;
    long long min_delta = 0;  // over everything enumerated
    std::vector<std::string> exceptional_patterns;
    std::vector<std::string> violations;
    std::vector<std::string> notes;

    bool ok() const { return violations.empty(); }
};

// Sweep over every model with a >= 2, sum n_i <= max_total and D entries
// <= max_entry (up to index permutation). Delta is an affine function of
// the D entries with nonnegative coefficients, so values at the entrywise
// minimal D plus the coefficient supports decide the bounds for the whole
// grid; an exhaustive grid pass (small s) and seeded spot checks evaluate
// the closed forms directly on concrete grid models as well.
SweepResult sweep_estimates(const SweepConfig& config);

}  // namespace moduli::estimates
