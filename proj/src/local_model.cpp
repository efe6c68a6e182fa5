#include "moduli/local_model.hpp"

#include "moduli/rng.hpp"

#include <stdexcept>

namespace moduli::local_model {

namespace {

Matrix<long long> standard_symplectic(long long d) {
    // [[0, I],[-I, 0]] of size d (d even).
    Matrix<long long> j(d, d);
    long long h = d / 2;
    for (long long k = 0; k < h; ++k) {
        j(k, h + k) = 1;
        j(h + k, k) = -1;
    }
    return j;
}

void validate(const LocalModel& m) {
    const int s = m.s();
    if (s == 0) throw std::invalid_argument("local model needs at least one vertex");
    for (int ni : m.n)
        if (ni <= 0) throw std::invalid_argument("dimension vector entries must be positive");
    if (m.D.rows() != static_cast<std::size_t>(s) || m.D.cols() != static_cast<std::size_t>(s))
        throw std::invalid_argument("D must be s x s");
    if (!m.D.is_symmetric()) throw std::invalid_argument("D must be symmetric");
    for (int i = 0; i < s; ++i) {
        if (m.D(i, i) < 0 || m.D(i, i) % 2 != 0)
            throw std::invalid_argument("diagonal entries of D must be even and nonnegative");
        for (int j = 0; j < s; ++j)
            if (m.D(i, j) < 0) throw std::invalid_argument("entries of D must be nonnegative");
    }
    if (m.omega.size() != static_cast<std::size_t>(s) * s)
        throw std::invalid_argument("omega must have s*s blocks");
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            const auto& blk = m.omega_block(i, j);
            if (blk.rows() != static_cast<std::size_t>(m.d(i, j)) ||
                blk.cols() != static_cast<std::size_t>(m.d(j, i)))
                throw std::invalid_argument("omega block shape mismatch");
            if (blk != -m.omega_block(j, i).transpose())
                throw std::invalid_argument("omega blocks must satisfy omega_ij = -omega_ji^t");
            if (m.d(i, j) > 0 && det_of(blk.cast<Int>()) == 0)
                throw std::invalid_argument("omega blocks must be non-degenerate");
        }
}

}  // namespace

long long LocalModel::dim_u() const {
    long long total = 0;
    for (int i = 0; i < s(); ++i)
        for (int j = 0; j < s(); ++j) total += static_cast<long long>(n[i]) * n[j] * d(i, j);
    return total;
}

long long LocalModel::dim_g() const {
    long long total = 0;
    for (int ni : n) total += static_cast<long long>(ni) * ni;
    return total;
}

long long LocalModel::slack() const {
    long long a = d(0, 0) - 2;
    for (int i = 0; i < s(); ++i)
        for (int j = 0; j < s(); ++j) a = std::min(a, d(i, j) - (i == j ? 2 : 0));
    return a;
}

LocalModel make_model(std::vector<int> n, Matrix<long long> D) {
    const int s = static_cast<int>(n.size());
    if (D.rows() != static_cast<std::size_t>(s))
        throw std::invalid_argument("D size does not match dimension vector");
    std::vector<Matrix<long long>> omega(static_cast<std::size_t>(s) * s);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            if (i == j) {
                omega[i * s + j] = standard_symplectic(D(i, i));
            } else {
                Matrix<long long> blk(D(i, j), D(j, i));
                if (D(i, j) != D(j, i))
                    throw std::invalid_argument("D must be symmetric");
                for (long long k = 0; k < D(i, j); ++k) blk(k, k) = i < j ? 1 : -1;
                omega[i * s + j] = std::move(blk);
            }
        }
    return make_model(std::move(n), std::move(D), std::move(omega));
}

LocalModel make_model(std::vector<int> n, Matrix<long long> D,
                      std::vector<Matrix<long long>> omega) {
    LocalModel m{std::move(n), std::move(D), std::move(omega)};
    validate(m);
    return m;
}

LocalModel model_from_type(long long e0, const classify::PolystableType& type) {
    if (e0 < 2 || e0 % 2 != 0)
        throw std::invalid_argument("slice models need even self-pairing >= 2");
    if (type.parts.empty()) throw std::invalid_argument("empty polystable type");
    const int s = static_cast<int>(type.parts.size());
    std::vector<int> n(s);
    Matrix<long long> D(s, s);
    for (int i = 0; i < s; ++i) {
        n[i] = static_cast<int>(type.parts[i].second);
        for (int j = 0; j < s; ++j)
            D(i, j) = type.parts[i].first * type.parts[j].first * e0 + (i == j ? 2 : 0);
    }
    return make_model(std::move(n), std::move(D));
}

long long expected_dim(const LocalModel& model) {
    long long q = 0;
    for (int i = 0; i < model.s(); ++i)
        for (int j = 0; j < model.s(); ++j)
            q += static_cast<long long>(model.n[i]) * model.n[j] *
                 (model.d(i, j) - (i == j ? 1 : 0));
    return q + 1;
}

bool is_exceptional(const LocalModel& model) {
    if (model.slack() < 2)
        throw std::invalid_argument("exceptional test applies to models with a >= 2");
    if (model.s() == 1) return model.n[0] == 2 && model.d(0, 0) == 4;
    if (model.s() == 2)
        return model.n[0] == 1 && model.n[1] == 1 && model.d(0, 1) == 2;
    return false;
}

const Matrix<Rational>& PointU::slice(int i, int j, long long k) const {
    const int s = static_cast<int>(n.size());
    std::size_t off = 0;
    for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b) {
            if (a == i && b == j) return slices[off + k];
            off += dims(a, b);
        }
    throw std::out_of_range("slice index");
}

Matrix<Rational>& PointU::slice(int i, int j, long long k) {
    return const_cast<Matrix<Rational>&>(static_cast<const PointU&>(*this).slice(i, j, k));
}

Rational MomentValue::total_trace() const {
    Rational t(0);
    for (const auto& block : mu) t += block.trace();
    return t;
}

bool MomentValue::is_zero() const {
    for (const auto& block : mu)
        if (!block.is_zero()) return false;
    return true;
}

void check_compatible(const LocalModel& model, const PointU& x) {
    if (x.n != model.n || x.dims != model.D)
        throw std::invalid_argument("point shape does not match model");
    std::size_t off = 0;
    for (int i = 0; i < model.s(); ++i)
        for (int j = 0; j < model.s(); ++j)
            for (long long k = 0; k < model.d(i, j); ++k, ++off)
                if (x.slices[off].rows() != static_cast<std::size_t>(model.n[j]) ||
                    x.slices[off].cols() != static_cast<std::size_t>(model.n[i]))
                    throw std::invalid_argument("point slice shape mismatch");
}

namespace {

PointU empty_point(const LocalModel& model) {
    PointU x;
    x.n = model.n;
    x.dims = model.D;
    for (int i = 0; i < model.s(); ++i)
        for (int j = 0; j < model.s(); ++j)
            for (long long k = 0; k < model.d(i, j); ++k)
                x.slices.emplace_back(model.n[j], model.n[i]);
    return x;
}

}  // namespace

PointU zero_point(const LocalModel& model) { return empty_point(model); }

PointU lagrangian_point(const LocalModel& model, std::uint64_t seed) {
    Rng rng(seed);
    PointU x = empty_point(model);
    std::size_t off = 0;
    for (int i = 0; i < model.s(); ++i)
        for (int j = 0; j < model.s(); ++j) {
            const long long half = model.d(i, i) / 2;
            for (long long k = 0; k < model.d(i, j); ++k, ++off) {
                bool fill = (i < j) || (i == j && k < half);
                if (!fill) continue;
                auto& m = x.slices[off];
                for (std::size_t r = 0; r < m.rows(); ++r)
                    for (std::size_t c = 0; c < m.cols(); ++c)
                        m(r, c) = Rational(rng.range(-3, 3));
            }
        }
    return x;
}

PointU random_point(const LocalModel& model, std::uint64_t seed, long long bound) {
    if (bound < 1) throw std::invalid_argument("bound must be >= 1");
    Rng rng(seed);
    PointU x = empty_point(model);
    for (auto& m : x.slices)
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = Rational(rng.range(-bound, bound));
    return x;
}

Rational omega_eval(const LocalModel& model, const PointU& x, const PointU& y) {
    check_compatible(model, x);
    check_compatible(model, y);
    Rational acc(0);
    for (int i = 0; i < model.s(); ++i)
        for (int j = 0; j < model.s(); ++j) {
            const auto& blk = model.omega_block(i, j);
            for (long long k = 0; k < model.d(i, j); ++k)
                for (long long l = 0; l < model.d(j, i); ++l) {
                    long long w = blk(k, l);
                    if (w == 0) continue;
                    acc += Rational(w) * (y.slice(j, i, l) * x.slice(i, j, k)).trace();
                }
        }
    return acc;
}

MomentValue mu_eval(const LocalModel& model, const PointU& x) {
    check_compatible(model, x);
    MomentValue value;
    for (int j = 0; j < model.s(); ++j) {
        Matrix<Rational> mu_j(model.n[j], model.n[j]);
        for (int i = 0; i < model.s(); ++i) {
            const auto& blk = model.omega_block(j, i);  // scalar is omega(j,i)[l,k]
            for (long long k = 0; k < model.d(i, j); ++k)
                for (long long l = 0; l < model.d(j, i); ++l) {
                    long long w = blk(l, k);
                    if (w == 0) continue;
                    mu_j = mu_j + (x.slice(i, j, k) * x.slice(j, i, l)) * Rational(w);
                }
        }
        value.mu.push_back(std::move(mu_j));
    }
    return value;
}

PointU infinitesimal_action(const LocalModel& model, const LieTuple& a, const PointU& x) {
    check_compatible(model, x);
    if (a.a.size() != static_cast<std::size_t>(model.s()))
        throw std::invalid_argument("Lie tuple has wrong number of blocks");
    for (int i = 0; i < model.s(); ++i)
        if (a.a[i].rows() != static_cast<std::size_t>(model.n[i]) ||
            a.a[i].cols() != static_cast<std::size_t>(model.n[i]))
            throw std::invalid_argument("Lie tuple block shape mismatch");
    PointU out = empty_point(model);
    std::size_t off = 0;
    for (int i = 0; i < model.s(); ++i)
        for (int j = 0; j < model.s(); ++j)
            for (long long k = 0; k < model.d(i, j); ++k, ++off)
                out.slices[off] = a.a[j] * x.slices[off] - x.slices[off] * a.a[i];
    return out;
}

MomentValue dmu_apply(const LocalModel& model, const PointU& x, const PointU& xi) {
    check_compatible(model, x);
    check_compatible(model, xi);
    MomentValue value;
    for (int j = 0; j < model.s(); ++j) {
        Matrix<Rational> mu_j(model.n[j], model.n[j]);
        for (int i = 0; i < model.s(); ++i) {
            const auto& blk = model.omega_block(j, i);
            for (long long k = 0; k < model.d(i, j); ++k)
                for (long long l = 0; l < model.d(j, i); ++l) {
                    long long w = blk(l, k);
                    if (w == 0) continue;
                    mu_j = mu_j + (x.slice(i, j, k) * xi.slice(j, i, l) +
                                   xi.slice(i, j, k) * x.slice(j, i, l)) *
                                      Rational(w);
                }
        }
        value.mu.push_back(std::move(mu_j));
    }
    return value;
}

std::vector<BasisIndex> basis_of(const LocalModel& model) {
    std::vector<BasisIndex> basis;
    for (int i = 0; i < model.s(); ++i)
        for (int j = 0; j < model.s(); ++j)
            for (long long k = 0; k < model.d(i, j); ++k)
                for (int r = 0; r < model.n[j]; ++r)
                    for (int c = 0; c < model.n[i]; ++c) basis.push_back({i, j, k, r, c});
    return basis;
}

PointU basis_point(const LocalModel& model, const BasisIndex& idx) {
    PointU x = empty_point(model);
    x.slice(idx.i, idx.j, idx.k)(idx.row, idx.col) = Rational(1);
    return x;
}

Matrix<Rational> mu_jacobian(const LocalModel& model, const PointU& x) {
    const auto basis = basis_of(model);
    const long long rows = model.dim_g();
    Matrix<Rational> jac(rows, basis.size());
    for (std::size_t col = 0; col < basis.size(); ++col) {
        MomentValue dcol = dmu_apply(model, x, basis_point(model, basis[col]));
        long long row = 0;
        for (int j = 0; j < model.s(); ++j)
            for (int r = 0; r < model.n[j]; ++r)
                for (int c = 0; c < model.n[j]; ++c, ++row) jac(row, col) = dcol.mu[j](r, c);
    }
    return jac;
}

long long jacobian_rank(const LocalModel& model, const PointU& x) {
    return static_cast<long long>(rank_of(mu_jacobian(model, x)));
}

long long stabilizer_dim(const LocalModel& model, const PointU& x) {
    check_compatible(model, x);
    const long long cols = model.dim_g();
    const long long rows = model.dim_u();
    Matrix<Rational> action(rows, cols);
    long long col = 0;
    for (int i = 0; i < model.s(); ++i)
        for (int p = 0; p < model.n[i]; ++p)
            for (int q = 0; q < model.n[i]; ++q, ++col) {
                LieTuple a;
                for (int t = 0; t < model.s(); ++t)
                    a.a.emplace_back(model.n[t], model.n[t]);
                a.a[i](p, q) = Rational(1);
                PointU ax = infinitesimal_action(model, a, x);
                long long row = 0;
                for (const auto& sl : ax.slices)
                    for (std::size_t r = 0; r < sl.rows(); ++r)
                        for (std::size_t c = 0; c < sl.cols(); ++c, ++row)
                            action(row, col) = sl(r, c);
            }
    return cols - static_cast<long long>(rank_of(action));
}

Matrix<Rational> omega_gram(const LocalModel& model) {
    const auto basis = basis_of(model);
    Matrix<Rational> gram(basis.size(), basis.size());
    std::vector<PointU> pts;
    pts.reserve(basis.size());
    for (const auto& b : basis) pts.push_back(basis_point(model, b));
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = 0; b < basis.size(); ++b)
            gram(a, b) = omega_eval(model, pts[a], pts[b]);
    return gram;
}

Rational moment_pair(const MomentValue& value, const LieTuple& a) {
    if (value.mu.size() != a.a.size())
        throw std::invalid_argument("moment value and Lie tuple block counts differ");
    Rational acc(0);
    for (std::size_t j = 0; j < a.a.size(); ++j) acc += (value.mu[j] * a.a[j]).trace();
    return acc;
}

}  // namespace moduli::local_model
