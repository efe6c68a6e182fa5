#pragma once

// Shared helpers for the unit and acceptance suites: seeded random inputs
// and small independent oracles kept apart from the library code paths.

#include "moduli/ffprobe.hpp"
#include "moduli/lattice.hpp"
#include "moduli/local_model.hpp"
#include "moduli/matrix.hpp"
#include "moduli/rng.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace testsupport {

using moduli::Int;
using moduli::Matrix;
using moduli::Rational;
using moduli::Rng;

// Random even symmetric Gram matrix with a usable ample class (first basis
// vector, forced to have positive square).
inline moduli::lattice::SurfaceData random_surface(Rng& rng, int rho,
                                                   moduli::lattice::SurfaceKind kind) {
    Matrix<Int> gram(rho, rho);
    for (int i = 0; i < rho; ++i)
        for (int j = i; j < rho; ++j) {
            Int v = rng.range(-4, 4);
            if (i == j) v = 2 * rng.range(-2, 2);
            gram(i, j) = v;
            gram(j, i) = v;
        }
    gram(0, 0) = 2 * rng.range(1, 4);
    std::vector<Int> ample(rho, Int(0));
    ample[0] = 1;
    return moduli::lattice::SurfaceData(kind, std::move(gram), std::move(ample));
}

inline moduli::lattice::MukaiVector random_vector(Rng& rng, int rho, long long bound = 6) {
    moduli::lattice::MukaiVector v;
    v.r = rng.range(-bound, bound);
    v.a = rng.range(-bound, bound);
    for (int i = 0; i < rho; ++i) v.c.push_back(Int(rng.range(-bound, bound)));
    return v;
}

// Degreewise product in the even cohomology ring followed by -integral:
// an independent route to the pairing.
inline Int oracle_pairing(const moduli::lattice::SurfaceData& surface,
                          const moduli::lattice::MukaiVector& v,
                          const moduli::lattice::MukaiVector& w) {
    // w^dual flips the sign of the degree-2 part.
    Int deg4 = 0;
    deg4 += v.r * w.a;  // H^0 . H^4
    deg4 += v.a * w.r;  // H^4 . H^0
    Int cc = 0;
    for (std::size_t i = 0; i < v.c.size(); ++i)
        for (std::size_t j = 0; j < w.c.size(); ++j)
            cc += v.c[i] * surface.gram(i, j) * (-w.c[j]);
    deg4 += cc;
    return -deg4;
}

// Gauss-Jordan inverse over the rationals; empty when singular.
inline std::optional<Matrix<Rational>> rational_inverse(Matrix<Rational> m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    Matrix<Rational> inv = Matrix<Rational>::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && m(pivot, c) == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(pivot, j), m(c, j));
                std::swap(inv(pivot, j), inv(c, j));
            }
        Rational p = m(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            m(c, j) /= p;
            inv(c, j) /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m(i, c) == 0) continue;
            Rational f = m(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

struct GroupElement {
    std::vector<Matrix<Rational>> g, g_inv;
};

// Random integer tuple in prod GL(n_i), retried until every block is
// invertible.
inline GroupElement random_group_element(const moduli::local_model::LocalModel& model, Rng& rng) {
    GroupElement e;
    for (int i = 0; i < model.s(); ++i) {
        while (true) {
            Matrix<Rational> g(model.n[i], model.n[i]);
            for (int r = 0; r < model.n[i]; ++r)
                for (int c = 0; c < model.n[i]; ++c) g(r, c) = Rational(rng.range(-3, 3));
            auto inv = rational_inverse(g);
            if (!inv) continue;
            e.g.push_back(std::move(g));
            e.g_inv.push_back(std::move(*inv));
            break;
        }
    }
    return e;
}

// Blockwise conjugation x -> g x g^{-1}: slice (i,j) maps to g_j slice g_i^{-1}.
inline moduli::local_model::PointU conjugate_point(const moduli::local_model::LocalModel& model,
                                                   const GroupElement& e,
                                                   const moduli::local_model::PointU& x) {
    moduli::local_model::PointU out = x;
    std::size_t off = 0;
    for (int i = 0; i < model.s(); ++i)
        for (int j = 0; j < model.s(); ++j)
            for (long long k = 0; k < model.d(i, j); ++k, ++off)
                out.slices[off] = e.g[j] * x.slices[off] * e.g_inv[i];
    return out;
}

inline moduli::local_model::LieTuple random_lie_tuple(const moduli::local_model::LocalModel& model,
                                                      Rng& rng) {
    moduli::local_model::LieTuple a;
    for (int i = 0; i < model.s(); ++i) {
        Matrix<Rational> blk(model.n[i], model.n[i]);
        for (int r = 0; r < model.n[i]; ++r)
            for (int c = 0; c < model.n[i]; ++c) blk(r, c) = Rational(rng.range(-3, 3));
        a.a.push_back(std::move(blk));
    }
    return a;
}

// Plain odometer count of F_q points of the null-fibre, computing each
// moment block from the pairing definition; independent of the library's
// counting machinery.
inline std::uint64_t oracle_count(const moduli::local_model::LocalModel& model, std::uint64_t q,
                                  std::uint64_t guard = 1ull << 26) {
    const int s = model.s();
    const long long dim_u = model.dim_u();
    Int space = 1;
    for (long long i = 0; i < dim_u; ++i) space *= q;
    if (space > Int(guard)) throw std::invalid_argument("oracle_count guard exceeded");

    std::vector<std::uint64_t> x(dim_u, 0);
    std::uint64_t solutions = 0;
    const long long qq = static_cast<long long>(q);

    // slice (i,j,k) entry (r,c) lives at offset(i,j) + (k n_j + r) n_i + c
    std::vector<long long> offset(s * s);
    long long off = 0;
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            offset[i * s + j] = off;
            off += static_cast<long long>(model.n[i]) * model.n[j] * model.d(i, j);
        }
    auto entry = [&](int i, int j, long long k, int r, int c) {
        return x[offset[i * s + j] + (k * model.n[j] + r) * model.n[i] + c];
    };

    while (true) {
        bool zero = true;
        for (int j = 0; j < s && zero; ++j) {
            // mu_j = sum_{i,k,l} omega(j,i)[l,k] x[i,j,k] x[j,i,l]
            std::vector<long long> mu(model.n[j] * model.n[j], 0);
            for (int i = 0; i < s; ++i) {
                const auto& blk = model.omega_block(j, i);
                for (long long k = 0; k < model.d(i, j); ++k)
                    for (long long l = 0; l < model.d(j, i); ++l) {
                        long long w = blk(l, k);
                        if (w == 0) continue;
                        for (int r = 0; r < model.n[j]; ++r)
                            for (int c = 0; c < model.n[j]; ++c) {
                                long long dot = 0;
                                for (int t = 0; t < model.n[i]; ++t)
                                    dot += static_cast<long long>(entry(i, j, k, r, t)) *
                                           entry(j, i, l, t, c);
                                mu[r * model.n[j] + c] =
                                    (mu[r * model.n[j] + c] + w % qq * (dot % qq)) % qq;
                            }
                    }
            }
            for (long long v : mu)
                if ((v % qq + qq) % qq != 0) zero = false;
        }
        if (zero) ++solutions;
        long long pos = 0;
        while (pos < dim_u) {
            if (++x[pos] < q) break;
            x[pos] = 0;
            ++pos;
        }
        if (pos == dim_u) break;
    }
    return solutions;
}

}  // namespace testsupport
