#pragma once

#include <vector>

#include "eulertop/normal_form.hpp"
#include "eulertop/poisson.hpp"

namespace eulertop {

enum class Method { rk4, implicit_midpoint };

// Fixed-step configuration; equivalence checks compare states at
// identical time stamps.
struct IntegratorConfig {
    Method method = Method::rk4;
    double dt = 1e-3;
    double t_end = 10.0;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Vec3> states;
    std::vector<double> casimir_log;
    std::vector<double> hamiltonian_log;

    std::size_t size() const { return times.size(); }
};

// Integrates udot = (K u + k) x (A u + a), logging the Casimir and the
// Hamiltonian at every step. Throws NonFinite if a state stops being
// finite and StepSizeError if the implicit midpoint iteration
// (fixed point, tolerance 1e-13, at most 50 iterations) diverges.
Trajectory integrate(const SystemSpec& spec, const Vec3& u0, const IntegratorConfig& cfg);

struct ConservationReport {
    double casimir_drift = 0.0;     // max_t |C(t) - C(0)| / max(1, |C(0)|)
    double hamiltonian_drift = 0.0;
};

ConservationReport conservation_report(const Trajectory& traj);

// Integrates `original` from u0 and `reduced` from map^-1(u0) on the
// same grid and returns max_t |map(v(t)) - u(t)|. This is the
// dynamical test of "u(t) = map(v(t)) conjugates the two flows".
double flow_match_error(const SystemSpec& original, const SystemSpec& reduced,
                        const AffineMap3& map, const Vec3& u0,
                        const IntegratorConfig& cfg);

struct EquivalenceReport {
    double max_state_error = 0.0;
    double max_casimir_drift = 0.0;
    double max_hamiltonian_drift = 0.0;
    bool passed = false;
};

// Flows spec and its normal form side by side from u0 and
// v0 = map^-1(u0); passed iff the state error and both conserved-
// quantity drifts stay at or below tol.
EquivalenceReport verify_equivalence(const SystemSpec& spec, const NormalForm& nf,
                                     const Vec3& u0, const IntegratorConfig& cfg,
                                     double tol);

}  // namespace eulertop
