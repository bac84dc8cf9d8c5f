#include "eulertop/dynamics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "eulertop/errors.hpp"

namespace eulertop {

namespace {

constexpr double kMidpointTol = 1e-13;
constexpr int kMidpointMaxIter = 50;

Vec3 rk4_step(const SystemSpec& spec, const Vec3& u, double h) {
    const Vec3 k1 = vector_field(spec, u);
    const Vec3 k2 = vector_field(spec, u + 0.5 * h * k1);
    const Vec3 k3 = vector_field(spec, u + 0.5 * h * k2);
    const Vec3 k4 = vector_field(spec, u + h * k3);
    return u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Vec3 midpoint_step(const SystemSpec& spec, const Vec3& u, double h) {
    Vec3 y = u + h * vector_field(spec, u);
    for (int it = 0; it < kMidpointMaxIter; ++it) {
        const Vec3 next = u + h * vector_field(spec, 0.5 * (u + y));
        const double delta = norm(next - y);
        y = next;
        if (delta <= kMidpointTol * std::fmax(1.0, norm(y))) return y;
    }
    throw StepSizeError("implicit midpoint iteration did not converge; reduce dt");
}

void validate(const IntegratorConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(cfg.t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
    if (cfg.dt > cfg.t_end) throw std::invalid_argument("dt must not exceed t_end");
}

}  // namespace

Trajectory integrate(const SystemSpec& spec, const Vec3& u0, const IntegratorConfig& cfg) {
    validate(cfg);
    if (!is_finite(u0)) throw NonFinite("initial state is not finite");

    long long n = static_cast<long long>(std::ceil(cfg.t_end / cfg.dt - 1e-12));
    if (n < 1) n = 1;

    Trajectory traj;
    traj.times.reserve(static_cast<std::size_t>(n) + 1);
    traj.states.reserve(static_cast<std::size_t>(n) + 1);
    traj.casimir_log.reserve(static_cast<std::size_t>(n) + 1);
    traj.hamiltonian_log.reserve(static_cast<std::size_t>(n) + 1);

    const auto record = [&](double t, const Vec3& u) {
        traj.times.push_back(t);
        traj.states.push_back(u);
        traj.casimir_log.push_back(casimir_value(spec, u));
        traj.hamiltonian_log.push_back(hamiltonian_value(spec, u));
    };

    Vec3 u = u0;
    record(0.0, u);
    for (long long i = 1; i <= n; ++i) {
        // Final step shortened to land exactly on t_end.
        const bool last = i == n;
        const double t = last ? cfg.t_end : static_cast<double>(i) * cfg.dt;
        const double h = last ? cfg.t_end - static_cast<double>(n - 1) * cfg.dt : cfg.dt;
        u = cfg.method == Method::rk4 ? rk4_step(spec, u, h) : midpoint_step(spec, u, h);
        if (!is_finite(u)) {
            std::ostringstream msg;
            msg << "state became non-finite at t = " << t;
            throw NonFinite(msg.str());
        }
        record(t, u);
    }
    return traj;
}

ConservationReport conservation_report(const Trajectory& traj) {
    if (traj.size() == 0) throw std::invalid_argument("empty trajectory");
    const double c0 = traj.casimir_log.front();
    const double h0 = traj.hamiltonian_log.front();
    ConservationReport rep;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        rep.casimir_drift = std::fmax(
            rep.casimir_drift, std::fabs(traj.casimir_log[i] - c0) / std::fmax(1.0, std::fabs(c0)));
        rep.hamiltonian_drift =
            std::fmax(rep.hamiltonian_drift,
                      std::fabs(traj.hamiltonian_log[i] - h0) / std::fmax(1.0, std::fabs(h0)));
    }
    return rep;
}

double flow_match_error(const SystemSpec& original, const SystemSpec& reduced,
                        const AffineMap3& map, const Vec3& u0,
                        const IntegratorConfig& cfg) {
    const Trajectory tu = integrate(original, u0, cfg);
    const Trajectory tv = integrate(reduced, inverse(map).apply(u0), cfg);
    double worst = 0.0;
    for (std::size_t i = 0; i < tu.size(); ++i)
        worst = std::fmax(worst, norm(map.apply(tv.states[i]) - tu.states[i]));
    return worst;
}

EquivalenceReport verify_equivalence(const SystemSpec& spec, const NormalForm& nf,
                                     const Vec3& u0, const IntegratorConfig& cfg,
                                     double tol) {
    const Trajectory tu = integrate(spec, u0, cfg);
    const Trajectory tv = integrate(normal_system(nf), inverse(nf.map).apply(u0), cfg);

    EquivalenceReport rep;
    for (std::size_t i = 0; i < tu.size(); ++i)
        rep.max_state_error =
            std::fmax(rep.max_state_error, norm(nf.map.apply(tv.states[i]) - tu.states[i]));

    const ConservationReport cons = conservation_report(tu);
    rep.max_casimir_drift = cons.casimir_drift;
    rep.max_hamiltonian_drift = cons.hamiltonian_drift;
    rep.passed = rep.max_state_error <= tol && rep.max_casimir_drift <= tol &&
                 rep.max_hamiltonian_drift <= tol;
    return rep;
}

}  // namespace eulertop
