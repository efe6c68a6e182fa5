#pragma once

#include "moduli/matrix.hpp"
#include "moduli/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace moduli::lattice {

enum class SurfaceKind { K3, Abelian };

// Discrete data of the polarized surface: the intersection form on the
// Neron-Severi lattice and the class of the fixed ample divisor H.
struct SurfaceData {
    SurfaceKind kind;
    Matrix<Int> gram;         // rho x rho, symmetric, even diagonal
    std::vector<Int> ample;   // length rho, with ample.gram.ample > 0

    SurfaceData(SurfaceKind k, Matrix<Int> g, std::vector<Int> h);

    std::size_t rho() const { return gram.rows(); }
    Int h_square() const;  // H^2 = ample . gram . ample

    // Degree-4 coefficient of sqrt(td): 1 on a K3, 0 on an abelian surface.
    Int euler_offset() const { return kind == SurfaceKind::K3 ? 1 : 0; }
};

// v = (r, c, a) in H^0 + H^2 + H^4, with c in Neron-Severi coordinates.
struct MukaiVector {
    Int r;
    std::vector<Int> c;
    Int a;

    bool is_zero() const;
    bool operator==(const MukaiVector&) const = default;
};

// P(m) = q2 m^2 + q1 m + q0, integer-valued on the integers.
struct HilbertPoly {
    Rational q2, q1, q0;

    Rational eval(const Int& m) const { return q2 * m * m + q1 * m + q0; }
};

// <v,w> = c_v . gram . c_w - r_v a_w - r_w a_v. Symmetric, bilinear.
Int pairing(const SurfaceData& surface, const MukaiVector& v, const MukaiVector& w);

// (r, c, a) -> (r, -c, a). Involutive.
MukaiVector mukai_dual(MukaiVector v);

// v(E) = (r, c1, ch2 + r * euler_offset). Throws if the degree-4 component
// is not an integer (inconsistent Chern data).
MukaiVector mukai_from_chern(const SurfaceData& surface, Int r, std::vector<Int> c1,
                             const Rational& ch2);

// v(O(k H)) = (1, k * ample, k^2 H^2 / 2 + euler_offset).
MukaiVector line_bundle_vector(const SurfaceData& surface, const Int& k);

// Coefficients of m -> -<v, v(O(-mH))>.
HilbertPoly hilbert_poly(const SurfaceData& surface, const MukaiVector& v);

struct PrimitiveDecomposition {
    Int m;           // positive multiplicity
    MukaiVector v0;  // primitive, v = m * v0
};

PrimitiveDecomposition primitive_decompose(const MukaiVector& v);

enum class ClauseStatus { Pass, Fail, HeuristicPass, HeuristicFail };

inline bool clause_holds(ClauseStatus s) {
    return s == ClauseStatus::Pass || s == ClauseStatus::HeuristicPass;
}

// Admissibility of a primitive vector: positive rank (or effective torsion
// data), and self-pairing at least 2. Effectivity of the degree-2 class has
// no intrinsic test here; a caller hint is taken verbatim, otherwise the
// necessary condition c.H > 0 is used and the result flagged heuristic.
struct StarReport {
    ClauseStatus rank_clause;     // r0 > 0, or r0 = 0 with effective c0 and a0 != 0
    ClauseStatus pairing_clause;  // <v0,v0> >= 2
    Int self_pairing;
    bool used_effectivity_heuristic = false;

    bool all_pass() const { return clause_holds(rank_clause) && clause_holds(pairing_clause); }
    bool heuristic() const { return used_effectivity_heuristic; }
};

StarReport check_star(const SurfaceData& surface, const MukaiVector& v0,
                      std::optional<bool> effective_hint = std::nullopt);

// dim Ext^1 between (semi)stable sheaves with the given vectors:
// <v1,v2> + 2 if the two sheaves coincide (Hom = Ext^2 = C), <v1,v2>
// otherwise. A negative value means no such pair of sheaves exists.
Int ext_dims(const SurfaceData& surface, const MukaiVector& v1, const MukaiVector& v2,
             bool same_sheaf);

// Text format "r;c1,...,c_rho;a", e.g. "2;0;-2".
MukaiVector parse_mukai(const std::string& text);
std::string format_mukai(const MukaiVector& v);

}  // namespace moduli::lattice
