#pragma once

#include <optional>
#include <vector>

#include "eulertop/linalg3.hpp"
#include "eulertop/poisson.hpp"

namespace eulertop {

// Invertible affine change of coordinates, original = linear * normal + offset.
struct AffineMap3 {
    Mat3 linear = Mat3::identity();
    Vec3 offset{};

    Vec3 apply(const Vec3& v) const { return linear * v + offset; }
};

// (M1,c1) o (M2,c2) = (M1*M2, M1*c2 + c1).
AffineMap3 compose(const AffineMap3& outer, const AffineMap3& inner);
// (M,c)^-1 = (M^-1, -M^-1 c); throws Singular.
AffineMap3 inverse(const AffineMap3& m);

// Which matrix carries the alpha coefficient in the searched pencil:
// a_first certifies alpha*A + beta*K > 0, k_first certifies
// alpha*K + beta*A > 0.
enum class PencilConvention { a_first, k_first };

const char* to_string(PencilConvention c);

struct PencilCertificate {
    double alpha = 1.0;
    double beta = 0.0;
    double min_eigenvalue = 0.0;
    PencilConvention convention = PencilConvention::k_first;
};

// Searches the unit circle (alpha, beta) = (cos t, sin t) for the
// combination alpha*X + beta*Y maximizing the smallest eigenvalue:
// 720-point grid, then golden-section refinement of the best arc down
// to width 1e-12. Succeeds iff the maximizer passes the positive
// definiteness margin. With require_beta_nonzero, a maximizer with
// |beta| < 1e-9 is moved by the largest angular offset that keeps the
// combination definite while making |beta| >= 1e-9.
//
// Any positive multiple of a certificate is also feasible; the
// unit-circle representative is the canonical one. Feasible arcs
// narrower than the 0.5 degree grid spacing can be missed; the thrown
// NoDefiniteCombination says so.
PencilCertificate find_definite_pencil(const SymMat3& x, const SymMat3& y,
                                       PencilConvention convention,
                                       bool require_beta_nonzero);

enum class StepKind {
    homothety,        // u = beta * p
    cholesky_linear,  // u = det(L^-1) L^-T w,  K = L L^T
    orthogonal_diag,  // w = det(R) R v,        R^T A_hat R diagonal
    general_affine,   // u = det(L^-1) L^-T w - K^-1 k
    sl2_rewrite,      // same trajectories, generators re-mixed by det-1 matrix
    homogenize,       // u = beta * p + gamma_vec
};

const char* to_string(StepKind k);

// One recorded change of coordinates, with the data that produced it.
struct TransformStep {
    StepKind kind = StepKind::sl2_rewrite;
    AffineMap3 map;  // previous coordinates = map(next coordinates)
    Mat3 factor = Mat3::identity();  // L or R where the step has one
    Vec3 offset{};                   // K^-1 k shift, or the homogenizing vector
    double alpha = 0.0, beta = 0.0, gamma = 0.0, delta = 0.0;
};

// The controlled Euler top vdot = v x (diag(lambdas) v + control)
// together with the affine map back to the original coordinates and
// the chain of steps that built it. control is exactly zero whenever
// the homogeneous pipeline produced the result.
struct NormalForm {
    Vec3 lambdas;
    Vec3 control;
    AffineMap3 map;
    std::vector<TransformStep> steps;
    std::optional<PencilCertificate> pencil;
};

// The normal form as a SystemSpec: casimir (identity, 0), hamiltonian
// (diag(lambdas), control).
SystemSpec normal_system(const NormalForm& nf);

// Homogeneous case with positive definite Casimir matrix: factor
// K = L L^T, push through u = det(L^-1) L^-T w to get
// wdot = w x (A_hat w) with A_hat = L^-1 A L^-T, then diagonalize
// A_hat orthogonally. Throws NotPositiveDefinite.
NormalForm normalize_homogeneous_pd(const SymMat3& casimir_mat, const SymMat3& energy_mat);

struct HomothetyReduction {
    SymMat3 reduced_casimir;  // alpha*A + beta*K, positive definite
    SymMat3 energy;           // A, unchanged
    TransformStep step;       // u = beta * p
};

// Trades an indefinite Casimir matrix for the definite pencil
// combination: u(t) = beta * p(t) conjugates udot = (K u) x (A u) to
// pdot = ((alpha A + beta K) p) x (A p). Requires an a_first
// certificate with beta != 0.
HomothetyReduction homothety_reduce(const SymMat3& casimir_mat, const SymMat3& energy_mat,
                                    const PencilCertificate& cert);

// Homogeneous pipeline for arbitrary symmetric K: direct when K is
// positive definite, otherwise homothety reduction through a definite
// pencil first. Throws NoDefiniteCombination when no pencil works.
NormalForm normalize_homogeneous(const SymMat3& casimir_mat, const SymMat3& energy_mat);

// Full pipeline for udot = (K u + k) x (A u + a).
//
//   1. K positive definite: u = det(L^-1) L^-T w - K^-1 k turns the
//      system into wdot = w x (A_hat w + a_hat) with
//      a_hat = det(L) L^-1 (a - A K^-1 k).
//   2. Otherwise find alpha*K + beta*A > 0, complete (alpha, beta) to a
//      det-1 matrix with (gamma, delta) = (-beta, alpha)/(alpha^2+beta^2),
//      and re-express the same field through the mixed pair (identity
//      step); the mixed Casimir matrix is definite, so step 1 applies.
//   3. Diagonalize A_hat orthogonally; the control vector becomes
//      det(R) R^T a_hat.
//
// Throws NoDefiniteCombination when step 2 finds nothing.
NormalForm normalize_general(const SystemSpec& spec);

struct Homogenization {
    Vec3 gamma_vec;           // solves A g = -a and K g = -k
    SymMat3 reduced_casimir;  // alpha*A + beta*K
    SymMat3 energy;           // A
    double scale = 1.0;       // beta in u = beta * p + gamma_vec
    TransformStep step;
    PencilCertificate pencil;
};

// Removes the linear terms entirely when a vector g with A g + a = 0
// and K g + k = 0 exists (stacked least squares, residual tolerance
// 1e-10 * (1 + |a| + |k|)) and an a_first pencil with beta != 0 is
// feasible. Empty optional otherwise; this is not an error.
std::optional<Homogenization> try_homogenize(const SystemSpec& spec);

}  // namespace eulertop
