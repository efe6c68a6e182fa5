#include "moduli/lattice.hpp"

#include <sstream>
#include <stdexcept>

namespace moduli::lattice {

namespace {

void check_length(const SurfaceData& surface, const MukaiVector& v) {
    if (v.c.size() != surface.rho())
        throw std::invalid_argument("Mukai vector degree-2 component has length " +
                                    std::to_string(v.c.size()) + ", surface has rank " +
                                    std::to_string(surface.rho()));
}

}  // namespace

SurfaceData::SurfaceData(SurfaceKind k, Matrix<Int> g, std::vector<Int> h)
    : kind(k), gram(std::move(g)), ample(std::move(h)) {
    if (gram.rows() == 0 || gram.rows() != gram.cols())
        throw std::invalid_argument("Gram matrix must be square and non-empty");
    if (!gram.is_symmetric()) throw std::invalid_argument("Gram matrix must be symmetric");
    for (std::size_t i = 0; i < gram.rows(); ++i)
        if (gram(i, i) % 2 != 0)
            throw std::invalid_argument("Gram matrix must have even diagonal");
    if (ample.size() != gram.rows())
        throw std::invalid_argument("ample class length does not match Gram rank");
    if (h_square() <= 0) throw std::invalid_argument("ample class must have positive square");
}

Int SurfaceData::h_square() const { return bilinear(ample, gram, ample); }

bool MukaiVector::is_zero() const {
    if (r != 0 || a != 0) return false;
    for (const auto& x : c)
        if (x != 0) return false;
    return true;
}

Int pairing(const SurfaceData& surface, const MukaiVector& v, const MukaiVector& w) {
    check_length(surface, v);
    check_length(surface, w);
    return bilinear(v.c, surface.gram, w.c) - v.r * w.a - w.r * v.a;
}

MukaiVector mukai_dual(MukaiVector v) {
    for (auto& x : v.c) x = -x;
    return v;
}

MukaiVector mukai_from_chern(const SurfaceData& surface, Int r, std::vector<Int> c1,
                             const Rational& ch2) {
    if (c1.size() != surface.rho())
        throw std::invalid_argument("c1 length does not match surface rank");
    Rational a = ch2 + Rational(r * surface.euler_offset());
    if (!is_integer(a))
        throw std::invalid_argument("ch2 + r*td correction is not an integer: inconsistent Chern data");
    return MukaiVector{std::move(r), std::move(c1), numerator(a)};
}

MukaiVector line_bundle_vector(const SurfaceData& surface, const Int& k) {
    std::vector<Int> c(surface.rho());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = k * surface.ample[i];
    // H^2 is even, so ch2 = k^2 H^2 / 2 is an integer.
    return mukai_from_chern(surface, 1, std::move(c), Rational(k * k * (surface.h_square() / 2)));
}

HilbertPoly hilbert_poly(const SurfaceData& surface, const MukaiVector& v) {
    check_length(surface, v);
    // Expand -<v, (1, -m*ample, m^2 H^2/2 + euler_offset)> in powers of m.
    HilbertPoly p;
    p.q2 = Rational(v.r * (surface.h_square() / 2));
    p.q1 = Rational(bilinear(v.c, surface.gram, surface.ample));
    p.q0 = Rational(v.a + v.r * surface.euler_offset());
    for (int m : {-1, 0, 1})
        if (!is_integer(p.eval(m))) throw std::logic_error("Hilbert polynomial not integer-valued");
    return p;
}

PrimitiveDecomposition primitive_decompose(const MukaiVector& v) {
    if (v.is_zero()) throw std::invalid_argument("cannot decompose the zero vector");
    Int g = gcd_int(v.r, v.a);
    for (const auto& x : v.c) g = gcd_int(g, x);
    MukaiVector v0;
    v0.r = v.r / g;
    v0.a = v.a / g;
    v0.c.resize(v.c.size());
    for (std::size_t i = 0; i < v.c.size(); ++i) v0.c[i] = v.c[i] / g;
    return PrimitiveDecomposition{g, std::move(v0)};
}

StarReport check_star(const SurfaceData& surface, const MukaiVector& v0,
                      std::optional<bool> effective_hint) {
    StarReport rep;
    rep.self_pairing = pairing(surface, v0, v0);
    rep.pairing_clause = rep.self_pairing >= 2 ? ClauseStatus::Pass : ClauseStatus::Fail;

    if (v0.r > 0) {
        rep.rank_clause = ClauseStatus::Pass;
    } else if (v0.r < 0) {
        rep.rank_clause = ClauseStatus::Fail;
    } else {
        // r0 = 0: need c0 effective and a0 != 0.
        bool c_zero = true;
        for (const auto& x : v0.c)
            if (x != 0) c_zero = false;
        if (c_zero || v0.a == 0) {
            rep.rank_clause = ClauseStatus::Fail;  // zero class is never effective
        } else if (effective_hint.has_value()) {
            rep.rank_clause = *effective_hint ? ClauseStatus::Pass : ClauseStatus::Fail;
        } else {
            rep.used_effectivity_heuristic = true;
            Int ch = bilinear(v0.c, surface.gram, surface.ample);
            rep.rank_clause = ch > 0 ? ClauseStatus::HeuristicPass : ClauseStatus::HeuristicFail;
        }
    }
    return rep;
}

Int ext_dims(const SurfaceData& surface, const MukaiVector& v1, const MukaiVector& v2,
             bool same_sheaf) {
    Int d = pairing(surface, v1, v2) + (same_sheaf ? 2 : 0);
    if (d < 0)
        throw std::invalid_argument("negative Ext^1 dimension: no such pair of stable sheaves");
    return d;
}

MukaiVector parse_mukai(const std::string& text) {
    auto first = text.find(';');
    auto last = text.rfind(';');
    if (first == std::string::npos || first == last)
        throw std::invalid_argument("Mukai vector must have the form \"r;c1,...,c_rho;a\"");
    auto parse_int = [](const std::string& s) {
        if (s.empty()) throw std::invalid_argument("empty component in Mukai vector");
        try {
            return Int(s);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad integer '" + s + "' in Mukai vector");
        }
    };
    MukaiVector v;
    v.r = parse_int(text.substr(0, first));
    v.a = parse_int(text.substr(last + 1));
    std::string middle = text.substr(first + 1, last - first - 1);
    std::stringstream ss(middle);
    std::string item;
    while (std::getline(ss, item, ',')) v.c.push_back(parse_int(item));
    if (v.c.empty()) throw std::invalid_argument("Mukai vector needs at least one degree-2 entry");
    return v;
}

std::string format_mukai(const MukaiVector& v) {
    std::string s = v.r.str() + ";";
    for (std::size_t i = 0; i < v.c.size(); ++i) {
        if (i) s += ",";
        s += v.c[i].str();
    }
    s += ";" + v.a.str();
    return s;
}

}  // namespace moduli::lattice
