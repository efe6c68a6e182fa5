#include "moduli/classify.hpp"

#include <algorithm>
#include <stdexcept>

namespace moduli::classify {

PolystableType::PolystableType(std::vector<std::pair<long long, long long>> p)
    : parts(std::move(p)) {
    for (const auto& [m, n] : parts)
        if (m <= 0 || n <= 0) throw std::invalid_argument("polystable type parts must be positive");
    std::sort(parts.begin(), parts.end());
}

long long PolystableType::total() const {
    long long t = 0;
    for (const auto& [m, n] : parts) t += m * n;
    return t;
}

std::string PolystableType::str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ",";
        s += "(" + std::to_string(parts[i].first) + "," + std::to_string(parts[i].second) + ")";
    }
    return s + "}";
}

CaseLabel case_of(const Int& e0, const Int& m) {
    if (e0 % 2 != 0) throw std::invalid_argument("self-pairing must be even on an even lattice");
    if (m < 1) throw std::invalid_argument("multiplicity must be positive");
    if (e0 < -2) return CaseLabel::Empty;
    if (e0 == -2) return CaseLabel::Minus2Point;
    if (e0 == 0) return CaseLabel::IsotropicSymmetricProduct;
    if (m == 1) return CaseLabel::A;
    if (m == 2 && e0 == 2) return CaseLabel::B;
    return CaseLabel::C;
}

Verdict classify(const lattice::SurfaceData& surface, const lattice::MukaiVector& v,
                 bool h_is_v_general, std::optional<bool> effective_hint) {
    if (v.is_zero()) throw std::invalid_argument("cannot classify the zero vector");

    auto [m, v0] = lattice::primitive_decompose(v);
    Verdict verdict;
    verdict.m = m;
    verdict.v0 = v0;
    verdict.e0 = lattice::pairing(surface, v0, v0);

    bool c_zero = true;
    for (const auto& x : v.c)
        if (x != 0) c_zero = false;

    // Zero-dimensional torsion: v = (0,0,a), moduli space = a-th symmetric
    // power of the surface, resolved by the Hilbert-Chow morphism.
    if (v.r == 0 && c_zero) {
        if (v.a < 0) {
            verdict.label = CaseLabel::Empty;
            verdict.resolution = Resolution::NotApplicable;
            verdict.notes.push_back("no sheaves with negative length");
            return verdict;
        }
        Int a = v.a;
        verdict.label = CaseLabel::ZeroDimTorsion;
        verdict.dim_m = 2 * a;
        verdict.notes.push_back("length-" + a.str() +
                                " torsion sheaves; moduli space is the symmetric power S^" +
                                a.str() + " of the surface");
        if (a == 1) {
            verdict.resolution = Resolution::Smooth;
            verdict.locally_factorial = true;
        } else {
            verdict.sing_codim = 2;
            verdict.locally_factorial = false;
            verdict.resolution = Resolution::Exists;
            verdict.notes.push_back("resolved by the Hilbert-Chow morphism from Hilb^" + a.str());
        }
        return verdict;
    }

    if (v.r < 0) {
        verdict.label = CaseLabel::Empty;
        verdict.dim_m = 2 + lattice::pairing(surface, v, v);
        verdict.notes.push_back("negative rank: no coherent sheaves with this vector");
        return verdict;
    }

    verdict.label = case_of(verdict.e0, m);
    verdict.dim_m = 2 + m * m * verdict.e0;

    if (v.r == 0)
        verdict.notes.push_back("torsion case (r0 = 0): verdict conditional on the additional "
                                "hypotheses required in the literature");

    if (verdict.label == CaseLabel::Empty) {
        verdict.notes.push_back("self-pairing of the primitive part below -2: empty by the "
                                "numerical existence criterion (cited, not re-derived here)");
        return verdict;
    }

    if (verdict.e0 >= 2) {
        lattice::StarReport star = lattice::check_star(surface, v0, effective_hint);
        if (star.used_effectivity_heuristic)
            verdict.notes.push_back("effectivity of c0 judged by the heuristic c0.H > 0 "
                                    "(no hint supplied)");
        if (!star.all_pass()) {
            verdict.label = CaseLabel::Empty;
            verdict.notes.push_back("admissibility conditions on the primitive vector fail; "
                                    "no verdict beyond the expected dimension");
            return verdict;
        }
    }

    if (!h_is_v_general) {
        verdict.notes.push_back("polarization not asserted v-general: reporting only the "
                                "expected dimension and the case label implied by the lattice "
                                "data");
        return verdict;
    }

    switch (verdict.label) {
        case CaseLabel::Minus2Point:
            verdict.dim_m = 0;
            verdict.resolution = Resolution::Smooth;
            verdict.locally_factorial = true;
            verdict.notes.push_back("rigid: the moduli space is a single point for every "
                                    "multiplicity");
            break;

        case CaseLabel::IsotropicSymmetricProduct:
            verdict.dim_m = 2 * m;
            if (m == 1) {
                verdict.resolution = Resolution::Smooth;
                verdict.locally_factorial = true;
                verdict.notes.push_back("isotropic primitive vector: the moduli space is itself "
                                        "a K3 or abelian surface");
            } else {
                verdict.sing_codim = 2;
                verdict.locally_factorial = false;
                verdict.resolution = Resolution::Exists;
                verdict.notes.push_back("moduli space is the symmetric power S^" + m.str() +
                                        " of a surface; resolved by the Hilbert-Chow morphism");
            }
            break;

        case CaseLabel::A:
            verdict.resolution = Resolution::Smooth;
            verdict.locally_factorial = true;
            verdict.notes.push_back("primitive vector and v-general polarization: every "
                                    "semistable sheaf is stable, the moduli space is a smooth "
                                    "symplectic variety (deformation class as in the literature)");
            break;

        case CaseLabel::B:
            verdict.sing_codim = 2;
            verdict.locally_factorial = false;
            verdict.resolution = Resolution::Exists;
            verdict.notes.push_back("singular along a codimension-2 locus; a symplectic "
                                    "resolution exists, obtained by blowing up the reduced "
                                    "singular locus");
            break;

        case CaseLabel::C:
            // min over m' of 2 m'(m-m') e0 - 2 is attained at m' = 1.
            verdict.sing_codim = 2 * (m - 1) * verdict.e0 - 2;
            verdict.locally_factorial = true;
            verdict.resolution = Resolution::DoesNotExist;
            verdict.notes.push_back("locally factorial with singularities in codimension >= 4: "
                                    "no proper symplectic resolution exists");
            break;

        default:
            break;
    }
    return verdict;
}

namespace {

// Recursive enumeration of multisets of pairs (m_i, n_i) with
// sum m_i n_i = remaining, parts non-increasing to enumerate each multiset
// exactly once.
void enum_types_rec(long long remaining, std::pair<long long, long long> max_part,
                    std::optional<long long> n_max,
                    std::vector<std::pair<long long, long long>>& current,
                    std::vector<PolystableType>& out) {
    if (remaining == 0) {
        auto sorted = current;
        std::sort(sorted.begin(), sorted.end());
        out.push_back(PolystableType(sorted));
        return;
    }
    for (long long mi = std::min<long long>(remaining, max_part.first); mi >= 1; --mi) {
        long long n_cap = remaining / mi;
        if (mi == max_part.first) n_cap = std::min(n_cap, max_part.second);
        if (n_max) n_cap = std::min(n_cap, *n_max);
        for (long long ni = n_cap; ni >= 1; --ni) {
            current.emplace_back(mi, ni);
            enum_types_rec(remaining - mi * ni, {mi, ni}, n_max, current, out);
            current.pop_back();
        }
    }
}

}  // namespace

std::vector<PolystableType> enumerate_types(long long m, std::optional<long long> n_max) {
    if (m < 1) throw std::invalid_argument("total multiplicity must be positive");
    if (m > 40) throw std::invalid_argument("type enumeration capped at multiplicity 40");
    std::vector<PolystableType> out;
    std::vector<std::pair<long long, long long>> current;
    enum_types_rec(m, {m, m}, n_max, current, out);
    // Descending order puts the generic stable type {(m,1)} first.
    std::sort(out.begin(), out.end(),
              [](const PolystableType& a, const PolystableType& b) { return a.parts > b.parts; });
    return out;
}

Stratum stratum_dims(const Int& e0, const PolystableType& type) {
    if (e0 < 2) throw std::invalid_argument("stratum dimensions need self-pairing >= 2");
    if (type.parts.empty()) throw std::invalid_argument("empty polystable type");
    Int dim = 0;
    for (const auto& [mi, ni] : type.parts) dim += Int(mi) * mi * e0 + 2;
    Int m = type.total();
    Int total_dim = m * m * e0 + 2;
    return Stratum{type, dim, total_dim - dim};
}

SingularSummary singular_locus_summary(const Int& e0, long long m) {
    if (m < 2) throw std::invalid_argument("singular locus summary needs multiplicity >= 2");
    if (e0 < 2) throw std::invalid_argument("singular locus summary needs self-pairing >= 2");

    SingularSummary summary;
    for (long long mp = 1; 2 * mp <= m; ++mp) {
        long long mpp = m - mp;
        PolystableType t({{mp, 1}, {mpp, 1}});
        Stratum s = stratum_dims(e0, t);
        // Component codimension 2 m' m'' e0 - 2; stratum_dims must reproduce it.
        Int expected = 2 * Int(mp) * mpp * e0 - 2;
        if (s.codim != expected)
            throw std::logic_error("component codimension does not match the two-part stratum");
        summary.components.push_back(std::move(s));
    }

    summary.min_codim = summary.components.front().codim;
    for (const auto& c : summary.components) summary.min_codim = std::min(summary.min_codim, c.codim);

    for (const auto& t : enumerate_types(m)) {
        if (t.is_generic()) continue;
        summary.strata.push_back(stratum_dims(e0, t));
        summary.min_codim = std::min(summary.min_codim, summary.strata.back().codim);
    }

    // Sanity: the minimum is attained on a two-part component, and equals 2
    // exactly in case (B).
    Int by_components = summary.components.front().codim;
    for (const auto& c : summary.components) by_components = std::min(by_components, c.codim);
    if (by_components != summary.min_codim)
        throw std::logic_error("deeper stratum below every two-part component");
    bool is_b = (m == 2 && e0 == 2);
    if ((summary.min_codim == 2) != is_b)
        throw std::logic_error("minimal codimension 2 must characterize case (B)");
    if (!is_b && summary.min_codim < 4)
        throw std::logic_error("case (C) must have singularities in codimension >= 4");

    return summary;
}

QuotDims quot_dims(const lattice::SurfaceData& surface, const lattice::MukaiVector& v,
                   const Int& k) {
    Rational n = lattice::hilbert_poly(surface, v).eval(k);
    if (!is_integer(n)) throw std::logic_error("Hilbert polynomial value not integral");
    Int N = numerator(n);
    if (N <= 0)
        throw std::invalid_argument("P_v(k) = " + N.str() + " <= 0: twist k is too small");
    return QuotDims{N, lattice::pairing(surface, v, v) + 1 + N * N};
}

std::string to_string(CaseLabel label) {
    switch (label) {
        case CaseLabel::Minus2Point: return "minus2-point";
        case CaseLabel::IsotropicSymmetricProduct: return "isotropic-symmetric-product";
        case CaseLabel::A: return "A";
        case CaseLabel::B: return "B";
        case CaseLabel::C: return "C";
        case CaseLabel::ZeroDimTorsion: return "zero-dim-torsion";
        case CaseLabel::Empty: return "empty";
    }
    return "?";
}

std::string to_string(Resolution res) {
    switch (res) {
        case Resolution::Smooth: return "smooth";
        case Resolution::Exists: return "exists";
        case Resolution::DoesNotExist: return "does-not-exist";
        case Resolution::NotApplicable: return "not-applicable";
    }
    return "?";
}

}  // namespace moduli::classify
