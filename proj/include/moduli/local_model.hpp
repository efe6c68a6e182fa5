#pragma once

#include "moduli/classify.hpp"
#include "moduli/matrix.hpp"

#include <cstdint>
#include <vector>

namespace moduli::local_model {

// The symplectic local model: U(n) = (+)_{i,j} Hom(W_i,W_j) (x) V_ij with
// dim W_i = n_i and dim V_ij = d_ij, the pairings omega_ij on chosen bases
// of the V_ij, and the conjugation action of G(n) = prod GL(n_i).
//
// Basis conventions, fixed once so all outputs are reproducible:
//   omega block (i,i) is the standard symplectic matrix [[0, I],[-I, 0]],
//   omega block (i,j) for i<j is the identity, (j,i) its negative.
// A slice x[i,j,k] (k-th basis vector of V_ij) is stored as the n_j x n_i
// matrix of a map W_i -> W_j. The scalar multiplying x[i,j,k] x[j,i,l] in
// the moment map is omega(j,i)[l,k] = -omega(i,j)[k,l], which is what makes
// mu a genuine momentum map for omega and this action (without the overall
// factor 1/2; the null-fibre is unchanged).
struct LocalModel {
    std::vector<int> n;                    // length s, all positive
    Matrix<long long> D;                   // s x s, symmetric, even diagonal
    std::vector<Matrix<long long>> omega;  // s*s blocks, (i,j) block is d_ij x d_ji

    int s() const { return static_cast<int>(n.size()); }
    long long d(int i, int j) const { return D(i, j); }
    const Matrix<long long>& omega_block(int i, int j) const { return omega[i * s() + j]; }

    long long dim_u() const;  // sum n_i n_j d_ij
    long long dim_g() const;  // sum n_i^2

    // a = min(d_ij - 2 delta_ij). Models with a < 2 are constructible but
    // outside the hypotheses of the estimate machinery.
    long long slack() const;
};

// Standard omega convention.
LocalModel make_model(std::vector<int> n, Matrix<long long> D);
// Custom pairing blocks; validated for skew-symmetry and non-degeneracy.
LocalModel make_model(std::vector<int> n, Matrix<long long> D,
                      std::vector<Matrix<long long>> omega);

// Model of the slice at a polystable sheaf of the given type:
// n_i = multiplicity of the i-th summand, d_ij = m_i m_j e0 + 2 delta_ij.
LocalModel model_from_type(long long e0, const classify::PolystableType& type);

// n^t (D - I) n + 1 = dim U(n) - dim pg(n).
long long expected_dim(const LocalModel& model);

// The two configurations where the null-fibre is only known to be regular
// in codimension <= 2: n=(2) with d_11=4, and n=(1,1) with d_12=2.
bool is_exceptional(const LocalModel& model);

// A point of U(n), blockwise over exact rationals. slices are indexed by
// (i,j) row-major, then k; each slice is an n_j x n_i matrix.
struct PointU {
    std::vector<int> n;
    Matrix<long long> dims;            // copy of D, for shape checking
    std::vector<Matrix<Rational>> slices;

    const Matrix<Rational>& slice(int i, int j, long long k) const;
    Matrix<Rational>& slice(int i, int j, long long k);
};

// Element of (+) gl(n_i).
struct LieTuple {
    std::vector<Matrix<Rational>> a;  // a[i] is n_i x n_i
};

// Value of the moment map: one n_j x n_j block per index; the blockwise
// traces always sum to zero.
struct MomentValue {
    std::vector<Matrix<Rational>> mu;

    Rational total_trace() const;
    bool is_zero() const;
};

PointU zero_point(const LocalModel& model);

// Deterministic point of the null-fibre: blocks above the diagonal random,
// blocks below zero, diagonal blocks supported on the first d_ii/2 slices
// (a Lagrangian of the standard symplectic block). Every term of mu then
// pairs a filled slice with a vanishing one, so mu is exactly zero.
PointU lagrangian_point(const LocalModel& model, std::uint64_t seed);

// Uniform integer entries in [-bound, bound], deterministic per seed.
PointU random_point(const LocalModel& model, std::uint64_t seed, long long bound);

// omega(x, y). Bilinear, antisymmetric, non-degenerate.
Rational omega_eval(const LocalModel& model, const PointU& x, const PointU& y);

// mu(x)_j = sum_{i,k,l} omega(j,i)[l,k] * x[i,j,k] x[j,i,l].
MomentValue mu_eval(const LocalModel& model, const PointU& x);

// (A.x)[i,j,k] = A_j x[i,j,k] - x[i,j,k] A_i.
PointU infinitesimal_action(const LocalModel& model, const LieTuple& a, const PointU& x);

// d mu_x(xi), by polarization of the quadratic map.
MomentValue dmu_apply(const LocalModel& model, const PointU& x, const PointU& xi);

// Matrix of d mu_x on the standard bases: (sum n_j^2) rows, dim U columns.
// Satisfies <dmu_x(xi), A> = omega(xi, A.x) for all xi, A, where <,> is the
// blockwise trace pairing.
Matrix<Rational> mu_jacobian(const LocalModel& model, const PointU& x);

long long jacobian_rank(const LocalModel& model, const PointU& x);

// dim { A in (+) gl(n_i) : A.x = 0 }; always >= 1 (scalars).
long long stabilizer_dim(const LocalModel& model, const PointU& x);

// Gram matrix of omega on the standard basis of U(n); full rank exactly
// when omega is non-degenerate.
Matrix<Rational> omega_gram(const LocalModel& model);

// Standard basis bookkeeping for U(n).
struct BasisIndex {
    int i, j;
    long long k;
    int row, col;  // position inside the n_j x n_i slice
};

std::vector<BasisIndex> basis_of(const LocalModel& model);
PointU basis_point(const LocalModel& model, const BasisIndex& idx);

// Trace pairing sum_j tr(value_j a_j) of a moment value with a Lie tuple.
Rational moment_pair(const MomentValue& value, const LieTuple& a);

void check_compatible(const LocalModel& model, const PointU& x);

}  // namespace moduli::local_model
