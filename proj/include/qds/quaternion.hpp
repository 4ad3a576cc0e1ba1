#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

// Quaternion arithmetic over doubles, the standard involution, and the
// embedding iota into 2x2 (entrywise: 4x4) complex matrices.
//
// Conventions: a quaternion is a + b i + c j + d k with the generator table
// ij = k, jk = i, ki = j.  iota sends it to [[a+bi, c+di], [-(c-di), a-bi]],
// so det(iota(q)) = |q|^2 and iota(q*) = iota(q)^*.

namespace qds {

using cplx = std::complex<double>;

struct Quaternion {
    double a = 0.0;  // coefficient of 1
    double b = 0.0;  // coefficient of i
    double c = 0.0;  // coefficient of j
    double d = 0.0;  // coefficient of k

    constexpr Quaternion() = default;
    constexpr Quaternion(double a_, double b_ = 0.0, double c_ = 0.0, double d_ = 0.0)
        : a(a_), b(b_), c(c_), d(d_) {}

    static constexpr Quaternion one() { return {1.0, 0.0, 0.0, 0.0}; }
    static constexpr Quaternion unit_i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion unit_j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion unit_k() { return {0.0, 0.0, 0.0, 1.0}; }
};

constexpr Quaternion operator+(const Quaternion& p, const Quaternion& q) {
    return {p.a + q.a, p.b + q.b, p.c + q.c, p.d + q.d};
}

constexpr Quaternion operator-(const Quaternion& p, const Quaternion& q) {
    return {p.a - q.a, p.b - q.b, p.c - q.c, p.d - q.d};
}

constexpr Quaternion operator-(const Quaternion& q) { return {-q.a, -q.b, -q.c, -q.d}; }

constexpr Quaternion operator*(double s, const Quaternion& q) {
    return {s * q.a, s * q.b, s * q.c, s * q.d};
}

constexpr Quaternion operator*(const Quaternion& q, double s) { return s * q; }

constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
    return {p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
            p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
            p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
            p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a};
}

constexpr Quaternion conj(const Quaternion& q) { return {q.a, -q.b, -q.c, -q.d}; }

constexpr double norm2(const Quaternion& q) {
    return q.a * q.a + q.b * q.b + q.c * q.c + q.d * q.d;
}

inline double abs(const Quaternion& q) { return std::sqrt(norm2(q)); }

inline Quaternion inv(const Quaternion& q) {
    const double n2 = norm2(q);
    if (n2 == 0.0) throw std::domain_error("quaternion inverse of zero");
    return (1.0 / n2) * conj(q);
}

inline double dist(const Quaternion& p, const Quaternion& q) { return abs(p - q); }

// Complex part z = a + bi of the Cayley-Dickson split q = z + w j.
constexpr cplx z_part(const Quaternion& q) { return {q.a, q.b}; }
constexpr cplx w_part(const Quaternion& q) { return {q.c, q.d}; }

// 2x2 complex matrices, row-major.
struct ComplexMat2 {
    cplx m00{0.0}, m01{0.0}, m10{0.0}, m11{0.0};

    static ComplexMat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

inline ComplexMat2 operator*(const ComplexMat2& x, const ComplexMat2& y) {
    return {x.m00 * y.m00 + x.m01 * y.m10, x.m00 * y.m01 + x.m01 * y.m11,
            x.m10 * y.m00 + x.m11 * y.m10, x.m10 * y.m01 + x.m11 * y.m11};
}

inline ComplexMat2 operator+(const ComplexMat2& x, const ComplexMat2& y) {
    return {x.m00 + y.m00, x.m01 + y.m01, x.m10 + y.m10, x.m11 + y.m11};
}

inline ComplexMat2 operator-(const ComplexMat2& x, const ComplexMat2& y) {
    return {x.m00 - y.m00, x.m01 - y.m01, x.m10 - y.m10, x.m11 - y.m11};
}

inline ComplexMat2 operator*(const cplx& s, const ComplexMat2& x) {
    return {s * x.m00, s * x.m01, s * x.m10, s * x.m11};
}

inline ComplexMat2 adjoint(const ComplexMat2& x) {
    return {std::conj(x.m00), std::conj(x.m10), std::conj(x.m01), std::conj(x.m11)};
}

inline cplx det(const ComplexMat2& x) { return x.m00 * x.m11 - x.m01 * x.m10; }

inline double max_abs(const ComplexMat2& x) {
    return std::max(std::max(std::abs(x.m00), std::abs(x.m01)),
                    std::max(std::abs(x.m10), std::abs(x.m11)));
}

inline ComplexMat2 inverse(const ComplexMat2& x) {
    const cplx dt = det(x);
    if (std::abs(dt) == 0.0) throw std::domain_error("singular 2x2 matrix");
    const cplx s = 1.0 / dt;
    return {s * x.m11, -s * x.m01, -s * x.m10, s * x.m00};
}

inline ComplexMat2 iota(const Quaternion& q) {
    const cplx z = z_part(q), w = w_part(q);
    return {z, w, -std::conj(w), std::conj(z)};
}

// 2x2 quaternionic matrix [[a, b], [c, d]].
struct QuatMat2 {
    Quaternion a, b, c, d;

    static QuatMat2 identity() {
        return {Quaternion::one(), {}, {}, Quaternion::one()};
    }
};

inline QuatMat2 operator*(const QuatMat2& x, const QuatMat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

// The involution g -> g^*: entrywise quaternion conjugate of the transpose.
inline QuatMat2 adjoint(const QuatMat2& x) {
    return {conj(x.a), conj(x.c), conj(x.b), conj(x.d)};
}

inline double max_entry_dist(const QuatMat2& x, const QuatMat2& y) {
    return std::max(std::max(dist(x.a, y.a), dist(x.b, y.b)),
                    std::max(dist(x.c, y.c), dist(x.d, y.d)));
}

struct ComplexMat4 {
    std::array<std::array<cplx, 4>, 4> m{};

    static ComplexMat4 identity() {
        ComplexMat4 r;
        for (int i = 0; i < 4; ++i) r.m[i][i] = 1.0;
        return r;
    }
};

inline ComplexMat4 operator*(const ComplexMat4& x, const ComplexMat4& y) {
    ComplexMat4 r;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const cplx v = x.m[i][k];
            if (v == cplx{0.0}) continue;
            for (int j = 0; j < 4; ++j) r.m[i][j] += v * y.m[k][j];
        }
    return r;
}

inline ComplexMat4 adjoint(const ComplexMat4& x) {
    ComplexMat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.m[i][j] = std::conj(x.m[j][i]);
    return r;
}

inline double max_abs_diff(const ComplexMat4& x, const ComplexMat4& y) {
    double r = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r = std::max(r, std::abs(x.m[i][j] - y.m[i][j]));
    return r;
}

inline cplx det(const ComplexMat4& x) {
    // cofactor expansion along the first row via 3x3 minors
    auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
        return x.m[r0][c0] * (x.m[r1][c1] * x.m[r2][c2] - x.m[r1][c2] * x.m[r2][c1]) -
               x.m[r0][c1] * (x.m[r1][c0] * x.m[r2][c2] - x.m[r1][c2] * x.m[r2][c0]) +
               x.m[r0][c2] * (x.m[r1][c0] * x.m[r2][c1] - x.m[r1][c1] * x.m[r2][c0]);
    };
    return x.m[0][0] * det3(1, 2, 3, 1, 2, 3) - x.m[0][1] * det3(1, 2, 3, 0, 2, 3) +
           x.m[0][2] * det3(1, 2, 3, 0, 1, 3) - x.m[0][3] * det3(1, 2, 3, 0, 1, 2);
}

// Entrywise iota; sends Sp(1,1) into SU(2,2).
inline ComplexMat4 iota4(const QuatMat2& g) {
    ComplexMat4 r;
    const ComplexMat2 blocks[2][2] = {{iota(g.a), iota(g.b)}, {iota(g.c), iota(g.d)}};
    for (int bi = 0; bi < 2; ++bi)
        for (int bj = 0; bj < 2; ++bj) {
            const ComplexMat2& blk = blocks[bi][bj];
            r.m[2 * bi][2 * bj] = blk.m00;
            r.m[2 * bi][2 * bj + 1] = blk.m01;
            r.m[2 * bi + 1][2 * bj] = blk.m10;
            r.m[2 * bi + 1][2 * bj + 1] = blk.m11;
        }
    return r;
}

// diag(I2, -I2), the form preserved by iota4 images of Sp(1,1).
inline ComplexMat4 j_form4() {
    ComplexMat4 r;
    r.m[0][0] = r.m[1][1] = 1.0;
    r.m[2][2] = r.m[3][3] = -1.0;
    return r;
}

}  // namespace qds
