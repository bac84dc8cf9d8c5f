#include "eulertop/poisson.hpp"

#include <cmath>

#include "eulertop/errors.hpp"

namespace eulertop {

namespace {
constexpr double kUnimodularTol = 1e-12;
}

double casimir_value(const SystemSpec& spec, const Vec3& u) {
    return spec.casimir.value(u);
}

double hamiltonian_value(const SystemSpec& spec, const Vec3& u) {
    return spec.hamiltonian.value(u);
}

Vec3 vector_field(const SystemSpec& spec, const Vec3& u) {
    return cross(spec.casimir.gradient(u), spec.hamiltonian.gradient(u));
}

double bracket(const SystemSpec& spec, const QuadraticFn& f, const QuadraticFn& g,
               const Vec3& u) {
    return -dot(spec.casimir.gradient(u), cross(f.gradient(u), g.gradient(u)));
}

Realization mixed_pair(const SystemSpec& spec, const Mat2& m) {
    Realization r;
    r.alpha = m.a11;
    r.beta = m.a12;
    r.gamma = m.a21;
    r.delta = m.a22;
    r.casimir.quad = r.alpha * spec.casimir.quad + r.beta * spec.hamiltonian.quad;
    r.casimir.lin = r.alpha * spec.casimir.lin + r.beta * spec.hamiltonian.lin;
    r.hamiltonian.quad = r.gamma * spec.casimir.quad + r.delta * spec.hamiltonian.quad;
    r.hamiltonian.lin = r.gamma * spec.casimir.lin + r.delta * spec.hamiltonian.lin;
    return r;
}

Realization realization(const SystemSpec& spec, const Mat2& m) {
    if (std::fabs(m.det() - 1.0) > kUnimodularTol)
        throw NotUnimodular("mixing matrix must have determinant 1");
    return mixed_pair(spec, m);
}

}  // namespace eulertop
