#pragma once

#include "eulertop/linalg3.hpp"

namespace eulertop {

// Quadratic-plus-linear scalar function u -> 1/2 u^T Q u + u^T q with a
// closed-form gradient. Gradients of these are all the bracket needs.
struct QuadraticFn {
    SymMat3 quad;
    Vec3 lin;

    double value(const Vec3& u) const { return 0.5 * dot(u, quad * u) + dot(u, lin); }
    Vec3 gradient(const Vec3& u) const { return quad * u + lin; }
};

// One quadratic Hamiltonian system. The Casimir C = 1/2 u^T K u + u^T k
// generates the bracket {f,g} = -grad C . (grad f x grad g); the
// Hamiltonian H = 1/2 u^T A u + u^T a generates the motion
//
//     udot = grad C x grad H = (K u + k) x (A u + a).
//
// Both C and H are conserved along the flow. The homogeneous case is
// k = a = 0.
struct SystemSpec {
    QuadraticFn casimir;
    QuadraticFn hamiltonian;
};

inline SystemSpec make_system(const SymMat3& casimir_mat, const Vec3& casimir_vec,
                              const SymMat3& energy_mat, const Vec3& energy_vec) {
    return {{casimir_mat, casimir_vec}, {energy_mat, energy_vec}};
}

double casimir_value(const SystemSpec& spec, const Vec3& u);
double hamiltonian_value(const SystemSpec& spec, const Vec3& u);

// The generated field (K u + k) x (A u + a).
Vec3 vector_field(const SystemSpec& spec, const Vec3& u);

// Bracket of two quadratic functions at u:
// -(K u + k) . ((Qf u + qf) x (Qg u + qg)).
double bracket(const SystemSpec& spec, const QuadraticFn& f, const QuadraticFn& g,
               const Vec3& u);

struct Mat2 {
    double a11 = 1.0, a12 = 0.0;
    double a21 = 0.0, a22 = 1.0;

    double det() const { return a11 * a22 - a12 * a21; }
};

// A conserved-quantity / generator pair that reproduces the same motion:
// casimir = (alpha K + beta A, alpha k + beta a),
// hamiltonian = (gamma K + delta A, gamma k + delta a).
// For alpha*delta - beta*gamma = 1 the induced field
// grad casimir x grad hamiltonian equals the original field pointwise;
// determinant q rescales the field by q.
struct Realization {
    double alpha = 1.0, beta = 0.0, gamma = 0.0, delta = 1.0;
    QuadraticFn casimir;
    QuadraticFn hamiltonian;
};

// Linear mixing by an arbitrary 2x2 matrix (no determinant requirement).
Realization mixed_pair(const SystemSpec& spec, const Mat2& m);

// Unimodular mixing; throws NotUnimodular unless |det(m) - 1| <= 1e-12.
Realization realization(const SystemSpec& spec, const Mat2& m);

}  // namespace eulertop
