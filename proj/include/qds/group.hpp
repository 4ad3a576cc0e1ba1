#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "qds/quaternion.hpp"

// The group Sp(1,1) of quaternionic 2x2 matrices with g* J g = J,
// J = diag(1,-1), acting on the unit ball of H by fractional-linear maps.
// Includes the explicit NAK Iwasawa factorization
//
//   g = n(q) a_t kappa,   n(q) = [[1+q, -q], [q, 1-q]] (q pure imaginary),
//   a_t = [[cosh t, sinh t], [sinh t, cosh t]],  kappa = diag(u1, u2),
//
// with e^t = sqrt(1-|b d^-1|^2) / |1 - b d^-1| and kappa = e^t (a-c, d-b).

namespace qds {

using GroupElement = QuatMat2;

struct KPair {
    Quaternion u1 = Quaternion::one();
    Quaternion u2 = Quaternion::one();

    static KPair identity() { return {}; }
};

struct IwasawaFactors {
    Quaternion n_param;  // pure imaginary q of the N factor
    double t = 0.0;      // log of the A part
    KPair kappa;
};

struct MembershipCheck {
    bool ok = false;
    double residual = 0.0;
};

inline constexpr double kMembershipTol = 1e-10;

inline QuatMat2 j_form() {
    return {Quaternion::one(), {}, {}, -Quaternion::one()};
}

// Max-entry residual of g* J g - J.
inline double form_residual(const GroupElement& g) {
    const QuatMat2 lhs = adjoint(g) * (j_form() * g);
    return max_entry_dist(lhs, j_form());
}

inline MembershipCheck check_sp11(const GroupElement& g) {
    const double r = form_residual(g);
    return {r <= kMembershipTol, r};
}

inline void require_member(const GroupElement& g, const char* who) {
    const auto chk = check_sp11(g);
    if (!chk.ok)
        throw std::domain_error(std::string(who) + ": element fails g*Jg=J, residual " +
                                std::to_string(chk.residual));
}

// Inverse of a group element: g^-1 = J g* J.
inline GroupElement inverse(const GroupElement& g) {
    return {conj(g.a), -conj(g.c), -conj(g.b), conj(g.d)};
}

// Cartan involution theta(g) = (g*)^-1.
inline GroupElement cartan_theta(const GroupElement& g) { return inverse(adjoint(g)); }

// Fractional-linear action g(h) = (a h + b)(c h + d)^-1 on the open unit ball.
inline Quaternion mobius(const GroupElement& g, const Quaternion& h) {
    if (norm2(h) >= 1.0) throw std::domain_error("mobius: |h| must be < 1");
    const Quaternion den = g.c * h + g.d;
    if (norm2(den) < 1e-24) throw std::domain_error("mobius: c h + d not invertible");
    return (g.a * h + g.b) * inv(den);
}

inline GroupElement a_s(double s) {
    const double ch = std::cosh(s), sh = std::sinh(s);
    return {{ch}, {sh}, {sh}, {ch}};
}

inline GroupElement n_of(const Quaternion& q) {
    if (std::fabs(q.a) > 1e-12 * (1.0 + abs(q)))
        throw std::invalid_argument("n_of: parameter must be pure imaginary");
    return {Quaternion::one() + q, -q, q, Quaternion::one() - q};
}

inline GroupElement k_of(const KPair& k) { return {k.u1, {}, {}, k.u2}; }

// NAK lean data for inner loops: e^t and the first kappa component.
struct NakTK {
    double e_t = 1.0;
    Quaternion kappa1;
};

inline NakTK nak_tk(const GroupElement& g) {
    const Quaternion bd = g.b * inv(g.d);
    const Quaternion one_m = Quaternion::one() - bd;
    const double e_t = std::sqrt(1.0 - norm2(bd)) / abs(one_m);
    return {e_t, e_t * (g.a - g.c)};
}

inline IwasawaFactors nak(const GroupElement& g) {
    require_member(g, "nak");
    const Quaternion bd = g.b * inv(g.d);
    const Quaternion one_m = Quaternion::one() - bd;
    const double e_t = std::sqrt(1.0 - norm2(bd)) / abs(one_m);
    const double t = std::log(e_t);
    const KPair kappa{e_t * (g.a - g.c), e_t * (g.d - g.b)};
    // top-left block is (cosh t + q (cosh t - sinh t)) u1, so
    // q = (a - cosh t * u1) u1^-1 e^t
    const Quaternion q = ((g.a - std::cosh(t) * kappa.u1) * inv(kappa.u1)) * e_t;
    // drop the real round-off component; q is pure imaginary for members
    return {{0.0, q.b, q.c, q.d}, t, kappa};
}

inline GroupElement reassemble(const IwasawaFactors& f) {
    return n_of(f.n_param) * (a_s(f.t) * k_of(f.kappa));
}

namespace detail {

inline Quaternion random_unit_quaternion(std::mt19937_64& eng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (;;) {
        Quaternion q{gauss(eng), gauss(eng), gauss(eng), gauss(eng)};
        const double n = abs(q);
        if (n > 1e-6) return (1.0 / n) * q;
    }
}

inline Quaternion random_pure_imaginary(std::mt19937_64& eng, double max_norm) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (;;) {
        Quaternion q{0.0, uni(eng), uni(eng), uni(eng)};
        if (norm2(q) <= 1.0) return max_norm * q;
    }
}

}  // namespace detail

inline KPair random_kpair(std::mt19937_64& eng) {
    return {detail::random_unit_quaternion(eng), detail::random_unit_quaternion(eng)};
}

// Exact group element built as n(q) a_s k; factors are the NAK data by construction.
inline IwasawaFactors random_iwasawa(std::mt19937_64& eng) {
    const Quaternion q = detail::random_pure_imaginary(eng, 2.0);
    std::uniform_real_distribution<double> uni_s(-2.0, 2.0);
    const double s = uni_s(eng);
    return {q, s, random_kpair(eng)};
}

inline GroupElement random_element(std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    return reassemble(random_iwasawa(eng));
}

// K^C component data of J(k1 a_s k2, 0) via the cocycle
// J(k1 a_s k2, 0) = k1 J(a_s, 0) k2 with J(a_s, 0) = diag((1-tanh^2 s)^{1/2} I2,
// cosh s I2).  tau_k acts through the upper block only.
struct AutomorphicFactor {
    double upper_scalar = 1.0;
    double lower_scalar = 1.0;
    KPair parts;  // composed K components (upper, lower)

    // multiplier on a degree-k highest-weight-line value when the K parts act
    // trivially on it
    double scale_on_degree(int k) const { return std::pow(upper_scalar, -k); }
};

inline AutomorphicFactor automorphic_tau_factor(const KPair& k1, double s, const KPair& k2) {
    const double th = std::tanh(s);
    return {std::sqrt(1.0 - th * th), std::cosh(s), {k1.u1 * k2.u1, k1.u2 * k2.u2}};
}

}  // namespace qds
