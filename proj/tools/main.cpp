// eulertop CLI: normalize systems to the controlled Euler top, simulate
// flows, verify the constructed equivalences dynamically, and print
// mixed Casimir/Hamiltonian realizations.
//
// Exit codes: 0 ok, 1 input error, 2 no definite pencil,
//             3 non-finite state, 4 verification failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eulertop/dynamics.hpp"
#include "eulertop/errors.hpp"
#include "eulertop/io.hpp"
#include "eulertop/normal_form.hpp"
#include "eulertop/poisson.hpp"

namespace {

using namespace eulertop;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNoPencil = 2;
constexpr int kExitNonFinite = 3;
constexpr int kExitVerifyFailed = 4;

constexpr double kVerifyTol = 1e-6;

double uniform(std::mt19937_64& rng, double lo, double hi) {
    // (x >> 11) * 2^-53 is uniform in [0, 1), identical across platforms.
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

Vec3 uniform_vec(std::mt19937_64& rng, double lo, double hi) {
    const double a = uniform(rng, lo, hi);
    const double b = uniform(rng, lo, hi);
    const double c = uniform(rng, lo, hi);
    return {a, b, c};
}

std::vector<double> parse_csv_doubles(const std::string& text, std::size_t expect,
                                      const std::string& flag) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string tok =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (tok.empty() || end != tok.c_str() + tok.size() || !std::isfinite(v))
            throw SpecParseError(flag, "expected comma-separated numbers, got '" + text + "'");
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.size() != expect)
        throw SpecParseError(flag, "expected " + std::to_string(expect) + " values");
    return out;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SpecParseError("document", "cannot open '" + path + "' for writing");
    out << contents;
    if (!out) throw SpecParseError("document", "write to '" + path + "' failed");
}

int run_normalize(const std::string& spec_path, const std::string& out_path) {
    const SpecDocument doc = load_spec(spec_path);
    const NormalForm nf = normalize_general(doc.system);
    write_file(out_path, write_normal_form(nf));
    std::printf("normalized %s: lambdas = (%.12g, %.12g, %.12g), d = (%.12g, %.12g, %.12g), %zu steps%s\n",
                doc.name.empty() ? spec_path.c_str() : doc.name.c_str(), nf.lambdas[0],
                nf.lambdas[1], nf.lambdas[2], nf.control[0], nf.control[1], nf.control[2],
                nf.steps.size(), nf.pencil ? " (pencil path)" : "");
    return kExitOk;
}

int run_simulate(const std::string& spec_path, const std::string& out_path,
                 const std::string& u0_arg, double t_end, double dt,
                 const std::string& method_arg) {
    const SpecDocument doc = load_spec(spec_path);
    if (!(t_end > 0.0)) throw SpecParseError("--t-end", "must be positive");
    if (!(dt > 0.0)) throw SpecParseError("--dt", "must be positive");
    if (dt > t_end) throw SpecParseError("--dt", "must not exceed --t-end");

    IntegratorConfig cfg;
    cfg.dt = dt;
    cfg.t_end = t_end;
    if (method_arg == "rk4")
        cfg.method = Method::rk4;
    else if (method_arg == "midpoint")
        cfg.method = Method::implicit_midpoint;
    else
        throw SpecParseError("--method", "expected 'rk4' or 'midpoint'");

    const std::vector<double> u0v = parse_csv_doubles(u0_arg, 3, "--u0");
    const Trajectory traj = integrate(doc.system, {u0v[0], u0v[1], u0v[2]}, cfg);

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw SpecParseError("document", "cannot open '" + out_path + "' for writing");
    write_trajectory_csv(traj, out);
    std::printf("wrote %zu rows to %s\n", traj.size(), out_path.c_str());
    return kExitOk;
}

int run_verify(const std::string& spec_path, int trials, std::uint64_t seed,
               double inject_offset) {
    const SpecDocument doc = load_spec(spec_path);
    NormalForm nf = normalize_general(doc.system);
    // Test hook: a deliberately corrupted map must make verification fail.
    nf.map.offset = nf.map.offset + Vec3{inject_offset, inject_offset, inject_offset};

    IntegratorConfig cfg;
    cfg.method = Method::rk4;
    cfg.dt = 1e-3;
    cfg.t_end = 5.0;

    std::mt19937_64 rng(seed);
    std::printf("verify %s: %d trials, seed %llu, tol %.1e, rk4 dt %.1e on [0, %g]\n",
                spec_path.c_str(), trials, static_cast<unsigned long long>(seed), kVerifyTol,
                cfg.dt, cfg.t_end);
    int failures = 0;
    for (int i = 0; i < trials; ++i) {
        const Vec3 u0 = uniform_vec(rng, -1.0, 1.0);
        const EquivalenceReport rep = verify_equivalence(doc.system, nf, u0, cfg, kVerifyTol);
        if (!rep.passed) ++failures;
        std::printf("trial %3d: u0 = (% .6f, % .6f, % .6f)  max_state_error = %.6e  %s\n",
                    i, u0[0], u0[1], u0[2], rep.max_state_error,
                    rep.passed ? "pass" : "FAIL");
    }
    std::printf("summary: %d/%d trials passed (seed %llu)\n", trials - failures, trials,
                static_cast<unsigned long long>(seed));
    return failures == 0 ? kExitOk : kExitVerifyFailed;
}

int run_realize(const std::string& spec_path, const std::string& matrix_arg,
                std::uint64_t seed) {
    const SpecDocument doc = load_spec(spec_path);
    const std::vector<double> m = parse_csv_doubles(matrix_arg, 4, "--matrix");
    const Realization real = realization(doc.system, {m[0], m[1], m[2], m[3]});

    const auto print_fn = [](const char* label, const QuadraticFn& f) {
        std::printf("%s: quad = [%.17g, %.17g, %.17g, %.17g, %.17g, %.17g]  lin = [%.17g, %.17g, %.17g]\n",
                    label, f.quad.e[0], f.quad.e[1], f.quad.e[2], f.quad.e[3], f.quad.e[4],
                    f.quad.e[5], f.lin[0], f.lin[1], f.lin[2]);
    };
    print_fn("casimir", real.casimir);
    print_fn("hamiltonian", real.hamiltonian);

    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Vec3 u = uniform_vec(rng, -1.0, 1.0);
        const Vec3 induced =
            cross(real.casimir.gradient(u), real.hamiltonian.gradient(u));
        worst = std::fmax(worst, norm(induced - vector_field(doc.system, u)));
    }
    std::printf("max field deviation over 100 points (seed %llu): %.6e\n",
                static_cast<unsigned long long>(seed), worst);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"normal forms and flows of 3-D quadratic Hamiltonian systems"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string out_path;
    std::string u0_arg = "1,0,0";
    std::string method_arg = "rk4";
    std::string matrix_arg;
    double t_end = 10.0;
    double dt = 1e-3;
    int trials = 20;
    std::uint64_t seed = 1;
    double inject_offset = 0.0;

    CLI::App* cmd_normalize =
        app.add_subcommand("normalize", "compute the controlled Euler-top normal form");
    cmd_normalize->add_option("spec", spec_path, "system file (JSON)")->required();
    cmd_normalize->add_option("output", out_path, "normal-form output file")->required();

    CLI::App* cmd_simulate =
        app.add_subcommand("simulate", "integrate a system and write a CSV trajectory");
    cmd_simulate->add_option("spec", spec_path, "system file (JSON)")->required();
    cmd_simulate->add_option("output", out_path, "CSV output file")->required();
    cmd_simulate->add_option("--u0", u0_arg, "initial state x,y,z");
    cmd_simulate->add_option("--t-end", t_end, "integration horizon");
    cmd_simulate->add_option("--dt", dt, "time step");
    cmd_simulate->add_option("--method", method_arg, "rk4 or midpoint");

    CLI::App* cmd_verify = app.add_subcommand(
        "verify", "normalize, then compare the two flows from random initial states");
    cmd_verify->add_option("spec", spec_path, "system file (JSON)")->required();
    cmd_verify->add_option("--trials", trials, "number of random initial states")
        ->check(CLI::PositiveNumber);
    cmd_verify->add_option("--seed", seed, "random seed");
    cmd_verify->add_option("--inject-map-offset", inject_offset,
                           "test hook: offset added to the map before verifying")
        ->group("");

    CLI::App* cmd_realize = app.add_subcommand(
        "realize", "print the Casimir/Hamiltonian pair mixed by a det-1 2x2 matrix");
    cmd_realize->add_option("spec", spec_path, "system file (JSON)")->required();
    cmd_realize->add_option("--matrix", matrix_arg, "entries a,b,c,d (row-major)")
        ->required();
    cmd_realize->add_option("--seed", seed, "random seed for the deviation check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        if (app.got_subcommand(cmd_normalize)) return run_normalize(spec_path, out_path);
        if (app.got_subcommand(cmd_simulate))
            return run_simulate(spec_path, out_path, u0_arg, t_end, dt, method_arg);
        if (app.got_subcommand(cmd_verify))
            return run_verify(spec_path, trials, seed, inject_offset);
        if (app.got_subcommand(cmd_realize)) return run_realize(spec_path, matrix_arg, seed);
    } catch (const NoDefiniteCombination& e) {
        std::cerr << "no definite pencil: " << e.what() << "\n";
        return kExitNoPencil;
    } catch (const NonFinite& e) {
        std::cerr << "non-finite state: " << e.what() << "\n";
        return kExitNonFinite;
    } catch (const StepSizeError& e) {
        std::cerr << "integration failed: " << e.what() << "\n";
        return kExitNonFinite;
    } catch (const NotUnimodular& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const SpecParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
