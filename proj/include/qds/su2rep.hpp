#pragma once

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qds/group.hpp"
#include "qds/quaternion.hpp"

// SU(2) acting on homogeneous polynomials in (z, w).  The degree-N space V_N
// carries tau_N(l) p = p(iota(l)^{-1} (z,w)); the same substitution rule
// extends to any invertible complex 2x2 matrix as act(g, p) = p o g^{-1}.
// The Fischer product <p, q> = p(d)(q*)(0) makes the monomials orthogonal
// with <z^r w^s, z^r w^s> = r! s!.
//
// Haar measure on SU(2) is realized by an Euler-angle product rule with
// nodes u(alpha, beta, gamma) whose iota image has first row
// (e^{i(alpha+gamma)/2} cos(beta/2), e^{i(alpha-gamma)/2} sin(beta/2)).

namespace qds {

inline constexpr int kMaxPolyDegree = 63;

namespace detail {

inline const double* binomial_row(int n) {
    static const std::vector<std::vector<double>> table = [] {
        std::vector<std::vector<double>> t(kMaxPolyDegree + 1);
        for (int n = 0; n <= kMaxPolyDegree; ++n) {
            t[n].assign(n + 1, 1.0);
            for (int k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
        }
        return t;
    }();
    return table[n].data();
}

inline double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    return binomial_row(n)[k];
}

inline double factorial(int n) {
    static const std::vector<double> table = [] {
        std::vector<double> t(kMaxPolyDegree + 2, 1.0);
        for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * double(i);
        return t;
    }();
    return table[n];
}

}  // namespace detail

// Degree-N homogeneous polynomial; coeffs[m] multiplies z^{N-m} w^m.
struct HomogPoly {
    int degree = 0;
    std::vector<cplx> coeffs;

    HomogPoly() : coeffs(1, cplx{0.0}) {}
    explicit HomogPoly(int n) : degree(n), coeffs(std::size_t(n) + 1, cplx{0.0}) {
        if (n < 0 || n > kMaxPolyDegree) throw std::invalid_argument("HomogPoly: bad degree");
    }

    static HomogPoly monomial(int n, int w_degree, cplx c = 1.0) {
        HomogPoly p(n);
        p.coeffs[std::size_t(w_degree)] = c;
        return p;
    }
    static HomogPoly z_power(int n) { return monomial(n, 0); }
    static HomogPoly w_power(int n) { return monomial(n, n); }
};

inline HomogPoly operator+(const HomogPoly& p, const HomogPoly& q) {
    if (p.degree != q.degree) throw std::invalid_argument("HomogPoly: degree mismatch");
    HomogPoly r(p.degree);
    for (std::size_t m = 0; m < r.coeffs.size(); ++m) r.coeffs[m] = p.coeffs[m] + q.coeffs[m];
    return r;
}

inline HomogPoly operator-(const HomogPoly& p, const HomogPoly& q) {
    if (p.degree != q.degree) throw std::invalid_argument("HomogPoly: degree mismatch");
    HomogPoly r(p.degree);
    for (std::size_t m = 0; m < r.coeffs.size(); ++m) r.coeffs[m] = p.coeffs[m] - q.coeffs[m];
    return r;
}

inline HomogPoly operator*(cplx s, const HomogPoly& p) {
    HomogPoly r(p.degree);
    for (std::size_t m = 0; m < r.coeffs.size(); ++m) r.coeffs[m] = s * p.coeffs[m];
    return r;
}

inline double max_abs(const HomogPoly& p) {
    double r = 0.0;
    for (const auto& c : p.coeffs) r = std::max(r, std::abs(c));
    return r;
}

inline double max_abs_diff(const HomogPoly& p, const HomogPoly& q) {
    if (p.degree != q.degree) throw std::invalid_argument("HomogPoly: degree mismatch");
    double r = 0.0;
    for (std::size_t m = 0; m < p.coeffs.size(); ++m)
        r = std::max(r, std::abs(p.coeffs[m] - q.coeffs[m]));
    return r;
}

inline HomogPoly poly_mul(const HomogPoly& p, const HomogPoly& q) {
    HomogPoly r(p.degree + q.degree);
    for (std::size_t m = 0; m < p.coeffs.size(); ++m) {
        if (p.coeffs[m] == cplx{0.0}) continue;
        for (std::size_t n = 0; n < q.coeffs.size(); ++n)
            r.coeffs[m + n] += p.coeffs[m] * q.coeffs[n];
    }
    return r;
}

namespace detail {

// coefficients of (x z + y w)^n into out[0..n] (out[m] multiplies z^{n-m} w^m)
inline void expand_linear_power(cplx x, cplx y, int n, cplx* out) {
    const double* bin = binomial_row(n);
    cplx xp = 1.0;
    for (int m = n; m >= 0; --m) {  // xp = x^{n-m} climbing from x^0
        out[m] = xp * bin[m];
        xp *= x;
    }
    cplx yp = 1.0;
    for (int m = 0; m <= n; ++m) {
        out[m] *= yp;
        yp *= y;
    }
}

// act(g, p) written into out (degree preallocated); rows of g^{-1} supplied.
inline void act_rows_into(const cplx* row1, const cplx* row2, const HomogPoly& p,
                          HomogPoly& out) {
    const int n = p.degree;
    out.degree = n;
    out.coeffs.assign(std::size_t(n) + 1, cplx{0.0});
    cplx za[kMaxPolyDegree + 1], wb[kMaxPolyDegree + 1];
    for (int m = 0; m <= n; ++m) {
        const cplx c = p.coeffs[std::size_t(m)];
        if (c == cplx{0.0}) continue;
        const int dz = n - m;  // power of the z-substitute
        expand_linear_power(row1[0], row1[1], dz, za);
        expand_linear_power(row2[0], row2[1], m, wb);
        for (int i = 0; i <= dz; ++i) {
            const cplx ci = c * za[i];
            if (ci == cplx{0.0}) continue;
            for (int j = 0; j <= m; ++j) out.coeffs[std::size_t(i + j)] += ci * wb[j];
        }
    }
}

}  // namespace detail

// act(g, p) = p o g^{-1}; a left action of GL(2,C), unitary on SU(2) images
// for the Fischer product.
inline void act_into(const ComplexMat2& g, const HomogPoly& p, HomogPoly& out) {
    const ComplexMat2 gi = inverse(g);
    const cplx row1[2] = {gi.m00, gi.m01};
    const cplx row2[2] = {gi.m10, gi.m11};
    detail::act_rows_into(row1, row2, p, out);
}

inline HomogPoly act(const ComplexMat2& g, const HomogPoly& p) {
    HomogPoly out(p.degree);
    act_into(g, p, out);
    return out;
}

// Fischer product <p, q> = p(d)(q*)(0), conjugate-linear in q.
inline cplx fischer(const HomogPoly& p, const HomogPoly& q) {
    if (p.degree != q.degree) throw std::invalid_argument("fischer: degree mismatch");
    cplx acc = 0.0;
    const int n = p.degree;
    for (int m = 0; m <= n; ++m)
        acc += p.coeffs[std::size_t(m)] * std::conj(q.coeffs[std::size_t(m)]) *
               detail::factorial(n - m) * detail::factorial(m);
    return acc;
}

// trace of tau_j(l) in the monomial basis
inline double character(int j, const Quaternion& l) {
    const ComplexMat2 g = iota(l);
    const ComplexMat2 gi = inverse(g);
    const cplx row1[2] = {gi.m00, gi.m01};
    const cplx row2[2] = {gi.m10, gi.m11};
    cplx za[kMaxPolyDegree + 1], wb[kMaxPolyDegree + 1];
    cplx tr = 0.0;
    for (int m = 0; m <= j; ++m) {
        detail::expand_linear_power(row1[0], row1[1], j - m, za);
        detail::expand_linear_power(row2[0], row2[1], m, wb);
        cplx diag = 0.0;  // coefficient of z^{j-m} w^m in the image of z^{j-m} w^m
        for (int i = 0; i <= std::min(j - m, m); ++i) diag += za[i] * wb[m - i];
        tr += diag;
    }
    return tr.real();
}

inline cplx matrix_coeff(int n, const Quaternion& l, const HomogPoly& p, const HomogPoly& q) {
    if (p.degree != n || q.degree != n)
        throw std::invalid_argument("matrix_coeff: degree mismatch");
    return fischer(act(iota(l), p), q);
}

// top Clebsch-Gordan coefficient: phi(z^j (x) z^m) = sqrt(j! m! / (j+m)!) z^{j+m}
inline double cg_top_coeff(int j, int m) {
    return 1.0 / std::sqrt(detail::binom(j + m, j));
}

// Scalar weight of the K-type generator on the coset coordinate mu: the
// extremal pairing taken with the invariant bilinear form on V_j, which
// evaluates to (-1)^j j! alpha^j with alpha the complex part of mu.
inline cplx fj_scalar(const Quaternion& mu, int j) {
    const cplx alpha = z_part(mu);
    cplx r = (j % 2 == 0) ? detail::factorial(j) : -detail::factorial(j);
    for (int i = 0; i < j; ++i) r *= alpha;
    return r;
}

// Weight vector generating the K-type (V_j)* (x) V_{k+j} in the induced
// picture: fj(k) = s_j(pi(k)) tau(k)^{-1} z^k with pi(u1, u2) = u1 u2^{-1}.
// M-equivariant: fj(km) = sigma(m)^{-1} fj(k).
inline HomogPoly fj(const KPair& kpair, int j, int k) {
    const Quaternion pi = kpair.u1 * conj(kpair.u2);
    const cplx s = fj_scalar(pi, j);
    // tau(kpair)^{-1} z^k = z^k o iota(u1)
    HomogPoly out(k);
    const ComplexMat2 u = iota(kpair.u1);
    const cplx row1[2] = {u.m00, u.m01};
    const cplx row2[2] = {u.m10, u.m11};
    detail::act_rows_into(row1, row2, HomogPoly::z_power(k), out);
    for (auto& c : out.coeffs) c *= s;
    return out;
}

struct QuadratureRuleSU2 {
    std::vector<Quaternion> nodes;
    std::vector<double> weights;
    int m_exact = 0;
    int n_alpha = 0, n_beta = 0, n_gamma = 0;
};

namespace detail {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::fabs(dt) < 1e-15) break;
        }
        x[std::size_t(i)] = -t;
        x[std::size_t(n - 1 - i)] = t;
        const double wi = 2.0 / ((1.0 - t * t) * dp * dp);
        w[std::size_t(i)] = wi;
        w[std::size_t(n - 1 - i)] = wi;
    }
}

}  // namespace detail

// Euler-angle product rule for normalized Haar measure: uniform alpha on
// [0, 2pi), Gauss-Legendre in cos(beta), uniform gamma on [0, 4pi), density
// sin(beta) dalpha dbeta dgamma / (16 pi^2).
inline QuadratureRuleSU2 haar_rule(int n_alpha, int n_beta, int n_gamma) {
    if (n_alpha < 2 || n_beta < 2 || n_gamma < 2)
        throw std::invalid_argument("haar_rule: orders must be >= 2");
    std::vector<double> gx, gw;
    detail::gauss_legendre(n_beta, gx, gw);
    QuadratureRuleSU2 rule;
    rule.n_alpha = n_alpha;
    rule.n_beta = n_beta;
    rule.n_gamma = n_gamma;
    rule.nodes.reserve(std::size_t(n_alpha) * n_beta * n_gamma);
    rule.weights.reserve(rule.nodes.capacity());
    for (int p = 0; p < n_alpha; ++p) {
        const double alpha = 2.0 * M_PI * p / n_alpha;
        for (int q = 0; q < n_beta; ++q) {
            const double beta = std::acos(gx[std::size_t(q)]);
            const double cb = std::cos(0.5 * beta), sb = std::sin(0.5 * beta);
            const double wq = gw[std::size_t(q)] / (2.0 * n_alpha * n_gamma);
            for (int r = 0; r < n_gamma; ++r) {
                const double gamma = 4.0 * M_PI * r / n_gamma;
                const cplx z = std::polar(cb, 0.5 * (alpha + gamma));
                const cplx w = std::polar(sb, 0.5 * (alpha - gamma));
                rule.nodes.push_back({z.real(), z.imag(), w.real(), w.imag()});
                rule.weights.push_back(wq);
            }
        }
    }
    // single matrix coefficients of tau_m are exact until the first aliased
    // harmonic: gamma grid at m = n_gamma (even) or 2 n_gamma (odd), alpha
    // grid at 2 n_alpha, Legendre rule at 4 n_beta
    const int gamma_fail = (n_gamma % 2 == 0) ? n_gamma : 2 * n_gamma;
    rule.m_exact = std::min(std::min(gamma_fail, 2 * n_alpha), 4 * n_beta) - 1;
    return rule;
}

// Weighted sum of a vector-valued integrand in fixed node order.
template <class F>
std::vector<cplx> integrate(const QuadratureRuleSU2& rule, F&& integrand) {
    std::vector<cplx> acc;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const std::vector<cplx> v = integrand(rule.nodes[i]);
        if (acc.empty()) acc.assign(v.size(), cplx{0.0});
        if (v.size() != acc.size()) throw std::runtime_error("integrate: ragged integrand");
        for (std::size_t d = 0; d < v.size(); ++d) {
            if (!std::isfinite(v[d].real()) || !std::isfinite(v[d].imag()))
                throw std::runtime_error("integrate: non-finite integrand at node " +
                                         std::to_string(i));
            acc[d] += rule.weights[i] * v[d];
        }
    }
    return acc;
}

template <class F>
cplx integrate_scalar(const QuadratureRuleSU2& rule, F&& integrand) {
    const auto v =
        integrate(rule, [&](const Quaternion& l) { return std::vector<cplx>{integrand(l)}; });
    return v[0];
}

namespace detail {

inline unsigned worker_count() {
    unsigned n = std::thread::hardware_concurrency();
    if (const char* s = std::getenv("QDS_THREADS")) {
        const long v = std::strtol(s, nullptr, 10);
        if (v > 0) n = unsigned(v);
    }
    if (n < 1) n = 1;
    return n > 32 ? 32 : n;
}

// Deterministic parallel reduction: fixed chunks, per-chunk sequential sums,
// sequential combine in chunk order.  Bit-identical for any thread count.
template <class Eval>
std::vector<cplx> chunked_sum(std::size_t n_chunks, std::size_t dim, Eval&& eval) {
    std::vector<std::vector<cplx>> partial(n_chunks);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n_chunks) break;
            partial[i] = eval(i);
        }
    };
    const unsigned nw = std::min<std::size_t>(worker_count(), n_chunks);
    if (nw <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t + 1 < nw; ++t) pool.emplace_back(work);
        work();
        for (auto& t : pool) t.join();
    }
    std::vector<cplx> acc(dim, cplx{0.0});
    for (const auto& p : partial)
        for (std::size_t d = 0; d < dim; ++d) acc[d] += p[d];
    return acc;
}

}  // namespace detail

}  // namespace qds
