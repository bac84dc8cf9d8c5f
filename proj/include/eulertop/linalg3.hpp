#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace eulertop {

// Fixed-shape 3-dimensional kernels. Everything here is a value type:
// immutable after construction, safe to copy and share across threads.

struct Vec3 {
    std::array<double, 3> e{0.0, 0.0, 0.0};

    Vec3() = default;
    Vec3(double a, double b, double c) : e{a, b, c} {}

    double operator[](int i) const { return e[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return e[static_cast<std::size_t>(i)]; }
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline Vec3 operator*(const Vec3& a, double s) { return s * a; }

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double max_abs(const Vec3& a) {
    return std::fmax(std::fabs(a[0]), std::fmax(std::fabs(a[1]), std::fabs(a[2])));
}

// Right-handed cross product.
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

bool is_finite(const Vec3& a);

// General 3x3 matrix, row-major.
struct Mat3 {
    std::array<double, 9> e{};

    double operator()(int i, int j) const {
        return e[static_cast<std::size_t>(3 * i + j)];
    }
    double& operator()(int i, int j) {
        return e[static_cast<std::size_t>(3 * i + j)];
    }

    static Mat3 identity() {
        Mat3 m;
        m.e = {1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0};
        return m;
    }
};

Mat3 operator+(const Mat3& a, const Mat3& b);
Mat3 operator-(const Mat3& a, const Mat3& b);
Mat3 operator*(double s, const Mat3& a);
Mat3 operator*(const Mat3& a, const Mat3& b);
Vec3 operator*(const Mat3& a, const Vec3& v);

Mat3 transpose(const Mat3& a);
double det(const Mat3& a);
double frobenius_norm(const Mat3& a);
double max_abs(const Mat3& a);

// Cofactor-based inverse. Throws Singular when
// |det| <= 1e-12 * ||M||_F^3 (scale-relative threshold).
Mat3 inverse(const Mat3& a);

// Standard skew matrix of s: skew(s) * u == cross(s, u).
Mat3 skew(const Vec3& s);

// Symmetric 3x3 matrix storing only the upper triangle:
// e = [m11, m12, m13, m22, m23, m33]. Asymmetry is unrepresentable.
struct SymMat3 {
    std::array<double, 6> e{};

    SymMat3() = default;

    static SymMat3 from_upper(double m11, double m12, double m13,
                              double m22, double m23, double m33) {
        SymMat3 m;
        m.e = {m11, m12, m13, m22, m23, m33};
        return m;
    }
    static SymMat3 identity() { return from_upper(1.0, 0.0, 0.0, 1.0, 0.0, 1.0); }
    static SymMat3 diagonal(double d1, double d2, double d3) {
        return from_upper(d1, 0.0, 0.0, d2, 0.0, d3);
    }
    static SymMat3 diagonal(const Vec3& d) { return diagonal(d[0], d[1], d[2]); }

    // Symmetrizes roundoff: mirror entries are averaged.
    static SymMat3 from_full_symmetric(const Mat3& m) {
        return from_upper(m(0, 0), 0.5 * (m(0, 1) + m(1, 0)), 0.5 * (m(0, 2) + m(2, 0)),
                          m(1, 1), 0.5 * (m(1, 2) + m(2, 1)), m(2, 2));
    }

    double operator()(int i, int j) const {
        if (i > j) std::swap(i, j);
        // (0,0)->0 (0,1)->1 (0,2)->2 (1,1)->3 (1,2)->4 (2,2)->5
        static constexpr int idx[3][3] = {{0, 1, 2}, {-1, 3, 4}, {-1, -1, 5}};
        return e[static_cast<std::size_t>(idx[i][j])];
    }

    Mat3 full() const {
        Mat3 m;
        m.e = {e[0], e[1], e[2], e[1], e[3], e[4], e[2], e[4], e[5]};
        return m;
    }
};

SymMat3 operator+(const SymMat3& a, const SymMat3& b);
SymMat3 operator-(const SymMat3& a, const SymMat3& b);
SymMat3 operator*(double s, const SymMat3& a);
Vec3 operator*(const SymMat3& a, const Vec3& v);

double frobenius_norm(const SymMat3& a);
bool is_finite(const SymMat3& a);
bool is_finite(const Mat3& a);

// Twisted cross product m * (u x v).
Vec3 cross_k(const SymMat3& m, const Vec3& u, const Vec3& v);

// The unique matrix S with S*u == cross(s, m*u) for all u, i.e.
// S = skew(s) * m. Satisfies S^T m + m S = 0 for symmetric m; for
// nonsingular m the assignment s -> S is a Lie algebra isomorphism
// onto the m-skew matrices with bracket cross_k on the vector side.
// m may be singular; the formula stays well defined.
Mat3 hat_k(const SymMat3& m, const Vec3& s);

// Lower-triangular L with positive diagonal and L*L^T == m.
// Throws NotPositiveDefinite when m fails is_positive_definite.
Mat3 cholesky(const SymMat3& m);

struct SymEig {
    Mat3 rotation;     // orthogonal, det +1
    Vec3 eigenvalues;  // ascending

    SymMat3 diagonal_matrix() const { return SymMat3::diagonal(eigenvalues); }
};

// Cyclic Jacobi rotations, iterated until the off-diagonal norm drops
// below 1e-14 * ||M||_F. The returned rotation satisfies
// R^T M R = diag(eigenvalues) with eigenvalues ascending. Determinism
// conventions: each column is signed so its largest-magnitude component
// is positive, then the third column is flipped if needed for det +1.
SymEig eig_sym(const SymMat3& m);

// True iff lambda_min(m) > 1e-10 * max(1, ||m||_F).
bool is_positive_definite(const SymMat3& m);

}  // namespace eulertop
