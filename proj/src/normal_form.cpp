#include "eulertop/normal_form.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "eulertop/errors.hpp"

namespace eulertop {

namespace {

constexpr int kPencilGridPoints = 720;
constexpr double kPencilRefineWidth = 1e-12;
constexpr double kBetaFloor = 1e-9;
constexpr double kHomogenizeRelTol = 1e-10;

double smallest_eigenvalue(const SymMat3& m) { return eig_sym(m).eigenvalues[0]; }

// The linear substitution u = det(L^-1) L^-T w as an affine map.
AffineMap3 linear_substitution(const Mat3& l) {
    const Mat3 linv = inverse(l);
    return {det(linv) * transpose(linv), Vec3{}};
}

}  // namespace

AffineMap3 compose(const AffineMap3& outer, const AffineMap3& inner) {
    return {outer.linear * inner.linear, outer.linear * inner.offset + outer.offset};
}

AffineMap3 inverse(const AffineMap3& m) {
    const Mat3 minv = inverse(m.linear);
    return {minv, -(minv * m.offset)};
}

const char* to_string(PencilConvention c) {
    return c == PencilConvention::a_first ? "A-first" : "K-first";
}

const char* to_string(StepKind k) {
    switch (k) {
        case StepKind::homothety: return "homothety";
        case StepKind::cholesky_linear: return "cholesky_linear";
        case StepKind::orthogonal_diag: return "orthogonal_diag";
        case StepKind::general_affine: return "general_affine";
        case StepKind::sl2_rewrite: return "sl2_rewrite";
        case StepKind::homogenize: return "homogenize";
    }
    return "unknown";
}

PencilCertificate find_definite_pencil(const SymMat3& x, const SymMat3& y,
                                       PencilConvention convention,
                                       bool require_beta_nonzero) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const auto combo = [&](double theta) {
        return std::cos(theta) * x + std::sin(theta) * y;
    };
    const auto lambda_min = [&](double theta) { return smallest_eigenvalue(combo(theta)); };

    double best_theta = 0.0;
    double best_value = lambda_min(0.0);
    for (int i = 1; i < kPencilGridPoints; ++i) {
        const double theta = two_pi * i / kPencilGridPoints;
        const double v = lambda_min(theta);
        if (v > best_value) {
            best_value = v;
            best_theta = theta;
        }
    }

    // Golden-section refinement around the best grid point.
    constexpr double gr = 0.6180339887498949;
    double lo = best_theta - two_pi / kPencilGridPoints;
    double hi = best_theta + two_pi / kPencilGridPoints;
    double c = hi - gr * (hi - lo);
    double d = lo + gr * (hi - lo);
    double fc = lambda_min(c);
    double fd = lambda_min(d);
    while (hi - lo > kPencilRefineWidth) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = lambda_min(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = lambda_min(d);
        }
    }
    double theta = 0.5 * (lo + hi);

    if (!is_positive_definite(combo(theta))) {
        std::ostringstream msg;
        msg << "no unit-circle combination of the pencil is positive definite "
            << "(best min eigenvalue " << lambda_min(theta) << " at (alpha, beta) = ("
            << std::cos(theta) << ", " << std::sin(theta)
            << "); feasible arcs narrower than the 0.5 degree grid spacing "
            << "cannot be detected)";
        throw NoDefiniteCombination(msg.str());
    }

    if (require_beta_nonzero && std::fabs(std::sin(theta)) < kBetaFloor) {
        // Walk away from beta = 0, largest offset first, staying definite.
        bool moved = false;
        for (double delta = 0.5 * std::numbers::pi; delta >= kBetaFloor; delta *= 0.5) {
            for (double sign : {+1.0, -1.0}) {
                const double cand = theta + sign * delta;
                if (std::fabs(std::sin(cand)) >= kBetaFloor &&
                    is_positive_definite(combo(cand))) {
                    theta = cand;
                    moved = true;
                    break;
                }
            }
            if (moved) break;
        }
        if (!moved)
            throw NoDefiniteCombination(
                "every definite combination found has beta below 1e-9 and no "
                "definite perturbation with nonzero beta exists");
    }

    PencilCertificate cert;
    cert.alpha = std::cos(theta);
    cert.beta = std::sin(theta);
    cert.min_eigenvalue = lambda_min(theta);
    cert.convention = convention;
    return cert;
}

SystemSpec normal_system(const NormalForm& nf) {
    return make_system(SymMat3::identity(), Vec3{}, SymMat3::diagonal(nf.lambdas),
                       nf.control);
}

NormalForm normalize_homogeneous_pd(const SymMat3& casimir_mat, const SymMat3& energy_mat) {
    const Mat3 l = cholesky(casimir_mat);
    const Mat3 linv = inverse(l);
    const SymMat3 a_hat =
        SymMat3::from_full_symmetric(linv * energy_mat.full() * transpose(linv));

    TransformStep chol;
    chol.kind = StepKind::cholesky_linear;
    chol.map = linear_substitution(l);
    chol.factor = l;

    const SymEig eig = eig_sym(a_hat);
    TransformStep orth;
    orth.kind = StepKind::orthogonal_diag;
    orth.map = linear_substitution(eig.rotation);
    orth.factor = eig.rotation;

    NormalForm nf;
    nf.lambdas = eig.eigenvalues;
    nf.control = Vec3{};
    nf.map = compose(chol.map, orth.map);
    nf.steps = {chol, orth};
    return nf;
}

HomothetyReduction homothety_reduce(const SymMat3& casimir_mat, const SymMat3& energy_mat,
                                    const PencilCertificate& cert) {
    if (cert.convention != PencilConvention::a_first)
        throw std::invalid_argument("homothety_reduce requires an A-first certificate");
    if (cert.beta == 0.0)
        throw std::invalid_argument("homothety_reduce requires beta != 0");

    HomothetyReduction red;
    red.reduced_casimir = cert.alpha * energy_mat + cert.beta * casimir_mat;
    red.energy = energy_mat;
    red.step.kind = StepKind::homothety;
    red.step.map = {cert.beta * Mat3::identity(), Vec3{}};
    red.step.alpha = cert.alpha;
    red.step.beta = cert.beta;
    return red;
}

NormalForm normalize_homogeneous(const SymMat3& casimir_mat, const SymMat3& energy_mat) {
    if (is_positive_definite(casimir_mat))
        return normalize_homogeneous_pd(casimir_mat, energy_mat);

    const PencilCertificate cert =
        find_definite_pencil(energy_mat, casimir_mat, PencilConvention::a_first, true);
    const HomothetyReduction red = homothety_reduce(casimir_mat, energy_mat, cert);

    NormalForm nf = normalize_homogeneous_pd(red.reduced_casimir, red.energy);
    nf.map = compose(red.step.map, nf.map);
    nf.steps.insert(nf.steps.begin(), red.step);
    nf.pencil = cert;
    return nf;
}

NormalForm normalize_general(const SystemSpec& spec) {
    SymMat3 cas_mat = spec.casimir.quad;
    Vec3 cas_vec = spec.casimir.lin;
    SymMat3 en_mat = spec.hamiltonian.quad;
    Vec3 en_vec = spec.hamiltonian.lin;

    std::vector<TransformStep> steps;
    std::optional<PencilCertificate> cert;

    if (!is_positive_definite(cas_mat)) {
        cert = find_definite_pencil(cas_mat, en_mat, PencilConvention::k_first, false);
        const double al = cert->alpha;
        const double be = cert->beta;
        const double den = al * al + be * be;
        const double ga = -be / den;
        const double de = al / den;

        TransformStep rewrite;
        rewrite.kind = StepKind::sl2_rewrite;
        rewrite.alpha = al;
        rewrite.beta = be;
        rewrite.gamma = ga;
        rewrite.delta = de;
        steps.push_back(rewrite);

        // Same trajectories; the field is re-expressed through the
        // mixed det-1 pair, whose Casimir matrix is the definite combo.
        const SymMat3 new_cas = al * cas_mat + be * en_mat;
        const Vec3 new_cas_vec = al * cas_vec + be * en_vec;
        const SymMat3 new_en = ga * cas_mat + de * en_mat;
        const Vec3 new_en_vec = ga * cas_vec + de * en_vec;
        cas_mat = new_cas;
        cas_vec = new_cas_vec;
        en_mat = new_en;
        en_vec = new_en_vec;
    }

    const Mat3 l = cholesky(cas_mat);
    const Mat3 linv = inverse(l);
    const SymMat3 a_hat =
        SymMat3::from_full_symmetric(linv * en_mat.full() * transpose(linv));
    const Vec3 shift = inverse(cas_mat.full()) * cas_vec;  // K^-1 k
    const Vec3 a_hat_vec = det(l) * (linv * (en_vec - en_mat * shift));

    TransformStep affine;
    affine.kind = StepKind::general_affine;
    affine.map = {det(linv) * transpose(linv), -shift};
    affine.factor = l;
    affine.offset = shift;
    steps.push_back(affine);

    const SymEig eig = eig_sym(a_hat);
    TransformStep orth;
    orth.kind = StepKind::orthogonal_diag;
    orth.map = linear_substitution(eig.rotation);
    orth.factor = eig.rotation;
    steps.push_back(orth);

    NormalForm nf;
    nf.lambdas = eig.eigenvalues;
    nf.control = det(eig.rotation) * (transpose(eig.rotation) * a_hat_vec);
    nf.map = compose(affine.map, orth.map);
    nf.steps = std::move(steps);
    nf.pencil = cert;
    return nf;
}

std::optional<Homogenization> try_homogenize(const SystemSpec& spec) {
    const SymMat3& cas_mat = spec.casimir.quad;
    const Vec3& cas_vec = spec.casimir.lin;
    const SymMat3& en_mat = spec.hamiltonian.quad;
    const Vec3& en_vec = spec.hamiltonian.lin;

    // Least squares for the stacked 6x3 system [A; K] g = [-a; -k] via
    // the normal equations (A^2 + K^2) g = -(A a + K k); the Gram matrix
    // may be rank deficient, so solve through its eigendecomposition.
    const Mat3 am = en_mat.full();
    const Mat3 km = cas_mat.full();
    const SymMat3 gram = SymMat3::from_full_symmetric(am * am + km * km);
    const Vec3 rhs = -(en_mat * en_vec + cas_mat * cas_vec);

    const SymEig ge = eig_sym(gram);
    Vec3 z = transpose(ge.rotation) * rhs;
    const double lam_tol = 1e-12 * std::fmax(1.0, ge.eigenvalues[2]);
    for (int i = 0; i < 3; ++i) z[i] = ge.eigenvalues[i] > lam_tol ? z[i] / ge.eigenvalues[i] : 0.0;
    const Vec3 gamma_vec = ge.rotation * z;

    const Vec3 res_energy = en_mat * gamma_vec + en_vec;
    const Vec3 res_casimir = cas_mat * gamma_vec + cas_vec;
    const double residual =
        std::sqrt(dot(res_energy, res_energy) + dot(res_casimir, res_casimir));
    if (residual > kHomogenizeRelTol * (1.0 + norm(en_vec) + norm(cas_vec)))
        return std::nullopt;

    PencilCertificate cert;
    try {
        cert = find_definite_pencil(en_mat, cas_mat, PencilConvention::a_first, true);
    } catch (const NoDefiniteCombination&) {
        return std::nullopt;
    }

    Homogenization h;
    h.gamma_vec = gamma_vec;
    h.reduced_casimir = cert.alpha * en_mat + cert.beta * cas_mat;
    h.energy = en_mat;
    h.scale = cert.beta;
    h.step.kind = StepKind::homogenize;
    h.step.map = {cert.beta * Mat3::identity(), gamma_vec};
    h.step.offset = gamma_vec;
    h.step.alpha = cert.alpha;
    h.step.beta = cert.beta;
    h.pencil = cert;
    return h;
}

}  // namespace eulertop
