#include "eulertop/linalg3.hpp"

#include <algorithm>
#include <cmath>

#include "eulertop/errors.hpp"

namespace eulertop {

namespace {

constexpr double kDefinitenessRelTol = 1e-10;
constexpr double kSingularRelTol = 1e-12;
constexpr double kJacobiRelTol = 1e-14;

}  // namespace

bool is_finite(const Vec3& a) {
    return std::isfinite(a[0]) && std::isfinite(a[1]) && std::isfinite(a[2]);
}

bool is_finite(const Mat3& a) {
    for (double x : a.e)
        if (!std::isfinite(x)) return false;
    return true;
}

bool is_finite(const SymMat3& a) {
    for (double x : a.e)
        if (!std::isfinite(x)) return false;
    return true;
}

Mat3 operator+(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (std::size_t i = 0; i < 9; ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
}

Mat3 operator-(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (std::size_t i = 0; i < 9; ++i) r.e[i] = a.e[i] - b.e[i];
    return r;
}

Mat3 operator*(double s, const Mat3& a) {
    Mat3 r;
    for (std::size_t i = 0; i < 9; ++i) r.e[i] = s * a.e[i];
    return r;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
    return r;
}

Vec3 operator*(const Mat3& a, const Vec3& v) {
    return {a(0, 0) * v[0] + a(0, 1) * v[1] + a(0, 2) * v[2],
            a(1, 0) * v[0] + a(1, 1) * v[1] + a(1, 2) * v[2],
            a(2, 0) * v[0] + a(2, 1) * v[1] + a(2, 2) * v[2]};
}

Mat3 transpose(const Mat3& a) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = a(j, i);
    return r;
}

double det(const Mat3& a) {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

double frobenius_norm(const Mat3& a) {
    double s = 0.0;
    for (double x : a.e) s += x * x;
    return std::sqrt(s);
}

double max_abs(const Mat3& a) {
    double m = 0.0;
    for (double x : a.e) m = std::fmax(m, std::fabs(x));
    return m;
}

Mat3 inverse(const Mat3& a) {
    const double d = det(a);
    const double scale = frobenius_norm(a);
    if (scale == 0.0 || std::fabs(d) <= kSingularRelTol * scale * scale * scale)
        throw Singular("matrix is singular to working precision");
    Mat3 r;  // adjugate / det
    r(0, 0) = (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) / d;
    r(0, 1) = (a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2)) / d;
    r(0, 2) = (a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1)) / d;
    r(1, 0) = (a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2)) / d;
    r(1, 1) = (a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0)) / d;
    r(1, 2) = (a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2)) / d;
    r(2, 0) = (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0)) / d;
    r(2, 1) = (a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1)) / d;
    r(2, 2) = (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)) / d;
    return r;
}

Mat3 skew(const Vec3& s) {
    Mat3 m;
    m.e = {0.0, -s[2], s[1], s[2], 0.0, -s[0], -s[1], s[0], 0.0};
    return m;
}

SymMat3 operator+(const SymMat3& a, const SymMat3& b) {
    SymMat3 r;
    for (std::size_t i = 0; i < 6; ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
}

SymMat3 operator-(const SymMat3& a, const SymMat3& b) {
    SymMat3 r;
    for (std::size_t i = 0; i < 6; ++i) r.e[i] = a.e[i] - b.e[i];
    return r;
}

SymMat3 operator*(double s, const SymMat3& a) {
    SymMat3 r;
    for (std::size_t i = 0; i < 6; ++i) r.e[i] = s * a.e[i];
    return r;
}

Vec3 operator*(const SymMat3& a, const Vec3& v) {
    return {a.e[0] * v[0] + a.e[1] * v[1] + a.e[2] * v[2],
            a.e[1] * v[0] + a.e[3] * v[1] + a.e[4] * v[2],
            a.e[2] * v[0] + a.e[4] * v[1] + a.e[5] * v[2]};
}

double frobenius_norm(const SymMat3& a) {
    const double diag = a.e[0] * a.e[0] + a.e[3] * a.e[3] + a.e[5] * a.e[5];
    const double off = a.e[1] * a.e[1] + a.e[2] * a.e[2] + a.e[4] * a.e[4];
    return std::sqrt(diag + 2.0 * off);
}

Vec3 cross_k(const SymMat3& m, const Vec3& u, const Vec3& v) {
    return m * cross(u, v);
}

Mat3 hat_k(const SymMat3& m, const Vec3& s) {
    return skew(s) * m.full();
}

Mat3 cholesky(const SymMat3& m) {
    if (!is_positive_definite(m))
        throw NotPositiveDefinite("matrix is not positive definite");
    Mat3 l;
    for (int j = 0; j < 3; ++j) {
        double pivot = m(j, j);
        for (int k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
        if (pivot <= 0.0)
            throw NotPositiveDefinite("nonpositive pivot in Cholesky factorization");
        l(j, j) = std::sqrt(pivot);
        for (int i = j + 1; i < 3; ++i) {
            double v = m(i, j);
            for (int k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
            l(i, j) = v / l(j, j);
        }
    }
    return l;
}

namespace {

// One two-sided Jacobi rotation annihilating a[p][q], rotation
// accumulated into r (r := r * G).
void jacobi_rotate(double a[3][3], Mat3& r, int p, int q) {
    const double apq = a[p][q];
    if (apq == 0.0) return;
    const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                     (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const double app = a[p][p];
    const double aqq = a[q][q];
    a[p][p] = app - t * apq;
    a[q][q] = aqq + t * apq;
    a[p][q] = 0.0;
    a[q][p] = 0.0;
    const int other = 3 - p - q;
    const double aop = a[other][p];
    const double aoq = a[other][q];
    a[other][p] = c * aop - s * aoq;
    a[p][other] = a[other][p];
    a[other][q] = s * aop + c * aoq;
    a[q][other] = a[other][q];

    for (int i = 0; i < 3; ++i) {
        const double rip = r(i, p);
        const double riq = r(i, q);
        r(i, p) = c * rip - s * riq;
        r(i, q) = s * rip + c * riq;
    }
}

double off_diagonal_norm(const double a[3][3]) {
    return std::sqrt(2.0 * (a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2]));
}

}  // namespace

SymEig eig_sym(const SymMat3& m) {
    double a[3][3] = {{m(0, 0), m(0, 1), m(0, 2)},
                      {m(0, 1), m(1, 1), m(1, 2)},
                      {m(0, 2), m(1, 2), m(2, 2)}};
    Mat3 r = Mat3::identity();
    const double scale = frobenius_norm(m);
    if (scale > 0.0) {
        const double target = kJacobiRelTol * scale;
        for (int sweep = 0; sweep < 64 && off_diagonal_norm(a) > target; ++sweep) {
            jacobi_rotate(a, r, 0, 1);
            jacobi_rotate(a, r, 0, 2);
            jacobi_rotate(a, r, 1, 2);
        }
    }

    // Ascending order; ties keep the lower original index first.
    int order[3] = {0, 1, 2};
    std::stable_sort(order, order + 3,
                     [&](int i, int j) { return a[i][i] < a[j][j]; });

    SymEig out;
    for (int j = 0; j < 3; ++j) {
        out.eigenvalues[j] = a[order[j]][order[j]];
        for (int i = 0; i < 3; ++i) out.rotation(i, j) = r(i, order[j]);
    }

    // Sign convention: largest-magnitude component of each column positive.
    for (int j = 0; j < 3; ++j) {
        int imax = 0;
        for (int i = 1; i < 3; ++i)
            if (std::fabs(out.rotation(i, j)) > std::fabs(out.rotation(imax, j))) imax = i;
        if (out.rotation(imax, j) < 0.0)
            for (int i = 0; i < 3; ++i) out.rotation(i, j) = -out.rotation(i, j);
    }
    if (det(out.rotation) < 0.0)
        for (int i = 0; i < 3; ++i) out.rotation(i, 2) = -out.rotation(i, 2);

    return out;
}

bool is_positive_definite(const SymMat3& m) {
    const double lambda_min = eig_sym(m).eigenvalues[0];
    return lambda_min > kDefinitenessRelTol * std::fmax(1.0, frobenius_norm(m));
}

}  // namespace eulertop
