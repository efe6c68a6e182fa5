#pragma once

#include "moduli/lattice.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace moduli::classify {

// Case labels, keyed on the multiplicity m and the self-pairing e0 of the
// primitive part: A (m=1), B (m=2, e0=2), C (m>=3, or m=2 with e0>=4), plus
// the degenerate lattice cases.
enum class CaseLabel {
    Minus2Point,
    IsotropicSymmetricProduct,
    A,
    B,
    C,
    ZeroDimTorsion,
    Empty,
};

enum class Resolution { Smooth, Exists, DoesNotExist, NotApplicable };

// Multiset {(m_i, n_i)}: a polystable sheaf (+) E_i^{n_i} with pairwise
// distinct stable summands E_i of vector m_i * v0. Parts kept sorted, so
// multiset equality is plain equality.
struct PolystableType {
    std::vector<std::pair<long long, long long>> parts;

    explicit PolystableType(std::vector<std::pair<long long, long long>> p = {});

    long long total() const;  // sum of m_i * n_i
    bool is_generic() const { return parts.size() == 1 && parts[0].second == 1; }
    bool operator==(const PolystableType&) const = default;
    std::string str() const;  // e.g. "{(1,1),(1,2)}"
};

struct Stratum {
    PolystableType type;
    Int dim;
    Int codim;
};

struct Verdict {
    CaseLabel label = CaseLabel::Empty;
    Int m = 0;
    lattice::MukaiVector v0;
    Int e0 = 0;
    Int dim_m = 0;
    std::optional<Int> sing_codim;
    std::optional<bool> locally_factorial;
    Resolution resolution = Resolution::NotApplicable;
    std::vector<std::string> notes;
};

// Label from (e0, m) alone. e0 must be even; below -2 the label is Empty.
CaseLabel case_of(const Int& e0, const Int& m);

// Full verdict for (surface, v). When h_is_v_general is false the verdict
// keeps only the facts that do not depend on the polarization being
// v-general, and says so in the notes.
Verdict classify(const lattice::SurfaceData& surface, const lattice::MukaiVector& v,
                 bool h_is_v_general, std::optional<bool> effective_hint = std::nullopt);

// All polystable types of total multiplicity m, in a fixed deterministic
// order. n_max optionally caps every n_i.
std::vector<PolystableType> enumerate_types(long long m,
                                            std::optional<long long> n_max = std::nullopt);

// dim = sum over parts of (m_i^2 e0 + 2): each part contributes the moduli
// dimension of its stable summand once, multiplicities add no parameters.
Stratum stratum_dims(const Int& e0, const PolystableType& type);

struct SingularSummary {
    std::vector<Stratum> components;  // types {(m',1),(m-m',1)}, 1 <= m' <= m/2
    std::vector<Stratum> strata;      // every non-generic type
    Int min_codim;
};

SingularSummary singular_locus_summary(const Int& e0, long long m);

struct QuotDims {
    Int n;        // P_v(k)
    Int dim_rss;  // <v,v> + 1 + N^2
};

QuotDims quot_dims(const lattice::SurfaceData& surface, const lattice::MukaiVector& v,
                   const Int& k);

std::string to_string(CaseLabel label);
std::string to_string(Resolution res);

}  // namespace moduli::classify
