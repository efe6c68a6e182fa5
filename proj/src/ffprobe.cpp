#include "moduli/ffprobe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace moduli::ffprobe {

namespace {

using std::size_t;
using std::uint64_t;

struct Monomial {
    int eq;        // flattened index of the moment entry
    int a, b;      // coordinate indices; the term is coeff * x[a] * x[b]
    uint64_t coeff;  // reduced mod q
};

struct Layout {
    long long dim_u = 0;
    long long num_eq = 0;
    std::vector<long long> block_offset;  // per (i,j) pair, row-major
    std::vector<Monomial> monomials;
    std::vector<char> in_left_half;  // per coordinate, for the bilinear split
    bool splits = false;
};

long long coord_index(const local_model::LocalModel& m, const Layout& layout, int i, int j,
                      long long k, int r, int c) {
    return layout.block_offset[i * m.s() + j] +
           (k * m.n[j] + r) * static_cast<long long>(m.n[i]) + c;
}

Layout build_layout(const local_model::LocalModel& model, uint64_t q,
                    const std::vector<int>& blocks) {
    Layout layout;
    const int s = model.s();
    layout.block_offset.resize(static_cast<size_t>(s) * s);
    long long off = 0;
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            layout.block_offset[i * s + j] = off;
            off += static_cast<long long>(model.n[i]) * model.n[j] * model.d(i, j);
        }
    layout.dim_u = off;

    std::vector<long long> eq_offset(s, -1);
    long long eq = 0;
    for (int j : blocks) {
        eq_offset[j] = eq;
        eq += static_cast<long long>(model.n[j]) * model.n[j];
    }
    layout.num_eq = eq;

    for (int j : blocks)
        for (int i = 0; i < s; ++i) {
            const auto& blk = model.omega_block(j, i);
            for (long long k = 0; k < model.d(i, j); ++k)
                for (long long l = 0; l < model.d(j, i); ++l) {
                    long long w = blk(l, k);
                    if (w == 0) continue;
                    uint64_t coeff = static_cast<uint64_t>(((w % static_cast<long long>(q)) +
                                                            static_cast<long long>(q)) %
                                                           static_cast<long long>(q));
                    if (coeff == 0) continue;
                    for (int r = 0; r < model.n[j]; ++r)
                        for (int c = 0; c < model.n[j]; ++c)
                            for (int t = 0; t < model.n[i]; ++t)
                                layout.monomials.push_back(
                                    {static_cast<int>(eq_offset[j] + r * model.n[j] + c),
                                     static_cast<int>(coord_index(model, layout, i, j, k, r, t)),
                                     static_cast<int>(coord_index(model, layout, j, i, l, t, c)),
                                     coeff});
                }
        }
    std::sort(layout.monomials.begin(), layout.monomials.end(),
              [](const Monomial& a, const Monomial& b) { return a.eq < b.eq; });

    // Split U into halves so that every monomial pairs one coordinate from
    // each: blocks (i,j) with i<j plus the first d_ii/2 diagonal slices on
    // one side, the rest on the other. Requires the diagonal pairing blocks
    // to vanish on (first half x first half) and (second x second).
    layout.splits = true;
    for (int i = 0; i < s && layout.splits; ++i) {
        const auto& blk = model.omega_block(i, i);
        const long long h = model.d(i, i) / 2;
        for (long long k = 0; k < model.d(i, i); ++k)
            for (long long l = 0; l < model.d(i, i); ++l)
                if (blk(k, l) != 0 && (k < h) == (l < h)) layout.splits = false;
    }
    if (layout.splits) {
        layout.in_left_half.assign(layout.dim_u, 0);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j) {
                const long long h = model.d(i, i) / 2;
                for (long long k = 0; k < model.d(i, j); ++k) {
                    bool left = (i < j) || (i == j && k < h);
                    if (!left) continue;
                    for (int r = 0; r < model.n[j]; ++r)
                        for (int c = 0; c < model.n[i]; ++c)
                            layout.in_left_half[coord_index(model, layout, i, j, k, r, c)] = 1;
                }
            }
        for (const auto& mono : layout.monomials)
            if (layout.in_left_half[mono.a] == layout.in_left_half[mono.b]) layout.splits = false;
    }
    return layout;
}

uint64_t pow_u64(uint64_t base, long long exp) {
    uint64_t r = 1;
    for (long long i = 0; i < exp; ++i) r *= base;
    return r;
}

uint64_t count_exhaustive(const Layout& layout, uint64_t q) {
    std::vector<uint64_t> x(layout.dim_u, 0);
    std::vector<uint64_t> acc(layout.num_eq);
    uint64_t solutions = 0;
    while (true) {
        std::fill(acc.begin(), acc.end(), 0);
        bool zero = true;
        for (size_t m = 0; m < layout.monomials.size(); ++m) {
            const Monomial& mono = layout.monomials[m];
            acc[mono.eq] = (acc[mono.eq] + mono.coeff * x[mono.a] % q * x[mono.b]) % q;
            // monomials are sorted by equation: once an equation is complete
            // and nonzero the point cannot be a solution
            if (m + 1 == layout.monomials.size() || layout.monomials[m + 1].eq != mono.eq) {
                if (acc[mono.eq] != 0) {
                    zero = false;
                    break;
                }
            }
        }
        if (zero) ++solutions;
        long long pos = 0;
        while (pos < layout.dim_u) {
            if (++x[pos] < q) break;
            x[pos] = 0;
            ++pos;
        }
        if (pos == layout.dim_u) break;
    }
    return solutions;
}

// Rank of a dense matrix mod the prime q.
long long rank_mod(std::vector<std::vector<uint64_t>>& m, uint64_t q) {
    const size_t rows = m.size();
    if (rows == 0) return 0;
    const size_t cols = m[0].size();
    auto inv_mod = [&](uint64_t a) {
        // extended Euclid
        long long t = 0, new_t = 1;
        long long r = static_cast<long long>(q), new_r = static_cast<long long>(a);
        while (new_r != 0) {
            long long quot = r / new_r;
            t -= quot * new_t;
            std::swap(t, new_t);
            r -= quot * new_r;
            std::swap(r, new_r);
        }
        return static_cast<uint64_t>((t % static_cast<long long>(q) + static_cast<long long>(q)) %
                                     static_cast<long long>(q));
    };
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t pivot = rank;
        while (pivot < rows && m[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[rank]);
        uint64_t inv = inv_mod(m[rank][c]);
        for (size_t j = c; j < cols; ++j) m[rank][j] = m[rank][j] * inv % q;
        for (size_t i = 0; i < rows; ++i) {
            if (i == rank || m[i][c] == 0) continue;
            uint64_t f = m[i][c];
            for (size_t j = c; j < cols; ++j)
                m[i][j] = (m[i][j] + (q - f) * m[rank][j]) % q;
        }
        ++rank;
    }
    return static_cast<long long>(rank);
}

uint64_t count_bilinear(const Layout& layout, uint64_t q) {
    std::vector<int> left, right;
    std::vector<int> col_of(layout.dim_u, -1);
    for (long long i = 0; i < layout.dim_u; ++i) {
        if (layout.in_left_half[i])
            left.push_back(static_cast<int>(i));
        else {
            col_of[i] = static_cast<int>(right.size());
            right.push_back(static_cast<int>(i));
        }
    }

    std::vector<uint64_t> x(layout.dim_u, 0);
    std::vector<std::vector<uint64_t>> mat;
    uint64_t solutions = 0;
    while (true) {
        // mu is linear homogeneous in the right half once the left half is
        // fixed: accumulate the coefficient matrix and count its kernel.
        mat.assign(layout.num_eq, std::vector<uint64_t>(right.size(), 0));
        for (const auto& mono : layout.monomials) {
            if (layout.in_left_half[mono.a])
                mat[mono.eq][col_of[mono.b]] =
                    (mat[mono.eq][col_of[mono.b]] + mono.coeff * x[mono.a]) % q;
            else
                mat[mono.eq][col_of[mono.a]] =
                    (mat[mono.eq][col_of[mono.a]] + mono.coeff * x[mono.b]) % q;
        }
        long long rank = rank_mod(mat, q);
        solutions += pow_u64(q, static_cast<long long>(right.size()) - rank);

        size_t pos = 0;
        while (pos < left.size()) {
            if (++x[left[pos]] < q) break;
            x[left[pos]] = 0;
            ++pos;
        }
        if (pos == left.size()) break;
    }
    return solutions;
}

}  // namespace

bool is_prime(uint64_t q) {
    if (q < 2) return false;
    for (uint64_t d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

CountResult count_points(const local_model::LocalModel& model, uint64_t q,
                         const CountOptions& opts) {
    if (!is_prime(q)) throw std::invalid_argument("q must be prime");
    if (opts.budget > (1ull << 63))
        throw std::invalid_argument("budget must be at most 2^63");

    std::vector<int> blocks;
    if (opts.mu_blocks) {
        blocks = *opts.mu_blocks;
        for (int j : blocks)
            if (j < 0 || j >= model.s()) throw std::invalid_argument("mu block index out of range");
        std::sort(blocks.begin(), blocks.end());
        blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
    } else {
        for (int j = 0; j < model.s(); ++j) blocks.push_back(j);
    }

    CountResult result;
    result.q = q;
    result.dim_u = model.dim_u();

    Int total = 1;
    for (long long i = 0; i < result.dim_u; ++i) total *= q;
    if (total > Int(opts.budget))
        throw std::invalid_argument("q^dim U = " + total.str() + " exceeds the budget of " +
                                    std::to_string(opts.budget));
    result.total_points = static_cast<uint64_t>(total);

    Layout layout = build_layout(model, q, blocks);

    bool use_bilinear;
    switch (opts.strategy) {
        case CountOptions::Strategy::Exhaustive: use_bilinear = false; break;
        case CountOptions::Strategy::Bilinear:
            if (!layout.splits)
                throw std::invalid_argument(
                    "pairing blocks do not split into complementary isotropic halves");
            use_bilinear = true;
            break;
        default: use_bilinear = layout.splits; break;
    }

    result.solutions = use_bilinear ? count_bilinear(layout, q) : count_exhaustive(layout, q);
    result.strategy_used = use_bilinear ? "bilinear" : "exhaustive";
    result.log_dim_estimate =
        std::log(static_cast<double>(result.solutions)) / std::log(static_cast<double>(q));
    return result;
}

DimEstimate dim_estimate(const local_model::LocalModel& model,
                         const std::vector<uint64_t>& primes, const CountOptions& opts) {
    if (primes.size() < 2)
        throw std::invalid_argument("dimension estimate needs at least two primes");
    DimEstimate est;
    est.expected = local_model::expected_dim(model);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (uint64_t q : primes) {
        est.counts.push_back(count_points(model, q, opts));
        double x = std::log(static_cast<double>(q));
        double y = std::log(static_cast<double>(est.counts.back().solutions));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(primes.size());
    est.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    est.deviation = est.slope - static_cast<double>(est.expected);
    return est;
}

}  // namespace moduli::ffprobe
