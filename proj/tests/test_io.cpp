#include <cstring>
#include <sstream>
#include <string>

#include <doctest.h>

#include "eulertop/dynamics.hpp"
#include "eulertop/io.hpp"
#include "eulertop/normal_form.hpp"
#include "test_util.hpp"

using namespace eulertop;
using testutil::make_rng;
using testutil::random_sym;
using testutil::random_spd;
using testutil::random_vec;

namespace {

bool bitwise_equal(double a, double b) {
    return std::memcmp(&a, &b, sizeof(double)) == 0;
}

bool bitwise_equal(const Vec3& a, const Vec3& b) {
    for (int i = 0; i < 3; ++i)
        if (!bitwise_equal(a[i], b[i])) return false;
    return true;
}

bool bitwise_equal(const SymMat3& a, const SymMat3& b) {
    for (std::size_t i = 0; i < 6; ++i)
        if (!bitwise_equal(a.e[i], b.e[i])) return false;
    return true;
}

bool bitwise_equal(const Mat3& a, const Mat3& b) {
    for (std::size_t i = 0; i < 9; ++i)
        if (!bitwise_equal(a.e[i], b.e[i])) return false;
    return true;
}

}  // namespace

TEST_CASE("spec documents round-trip bit for bit") {
    auto rng = make_rng(501);
    for (int i = 0; i < 50; ++i) {
        SpecDocument doc;
        doc.system = make_system(random_sym(rng, -10, 10), random_vec(rng, -10, 10),
                                 random_sym(rng, -10, 10), random_vec(rng, -10, 10));
        doc.name = "case";
        const SpecDocument back = parse_spec(write_spec(doc));
        CHECK(bitwise_equal(back.system.casimir.quad, doc.system.casimir.quad));
        CHECK(bitwise_equal(back.system.casimir.lin, doc.system.casimir.lin));
        CHECK(bitwise_equal(back.system.hamiltonian.quad, doc.system.hamiltonian.quad));
        CHECK(bitwise_equal(back.system.hamiltonian.lin, doc.system.hamiltonian.lin));
        CHECK(back.name == doc.name);
    }
}

TEST_CASE("spec parsing: missing and malformed fields are named") {
    const std::string good =
        R"({"K": [1,0,0,1,0,1], "k": [0,0,0], "A": [1,0,0,2,0,3], "a": [0,0,0]})";
    CHECK_NOTHROW((void)parse_spec(good));

    try {
        (void)parse_spec(R"({"K": [1,0,0,1,0,1], "k": [0,0,0], "a": [0,0,0]})");
        FAIL("expected SpecParseError");
    } catch (const SpecParseError& e) {
        CHECK(e.field == "A");
    }

    // A full 3x3 for K is rejected: only the 6-entry triangle parses,
    // so asymmetric input has no representation at all.
    try {
        (void)parse_spec(
            R"({"K": [1,0,0,0,1,0,0,0,1], "k": [0,0,0], "A": [1,0,0,2,0,3], "a": [0,0,0]})");
        FAIL("expected SpecParseError");
    } catch (const SpecParseError& e) {
        CHECK(e.field == "K");
    }

    try {
        (void)parse_spec(
            R"({"K": [1,0,0,1,0,1], "k": [0,"x",0], "A": [1,0,0,2,0,3], "a": [0,0,0]})");
        FAIL("expected SpecParseError");
    } catch (const SpecParseError& e) {
        CHECK(e.field == "k");
    }

    CHECK_THROWS_AS((void)parse_spec("not json at all"), SpecParseError);
}

TEST_CASE("normal-form documents round-trip bit for bit") {
    auto rng = make_rng(502);

    // Definite path (no pencil block) and pencil path (with one).
    const SystemSpec pd = make_system(random_spd(rng, 0.5, 3.0), random_vec(rng, -1, 1),
                                      random_sym(rng, -2, 2), random_vec(rng, -1, 1));
    const SymMat3 p = random_spd(rng, 0.5, 3.0);
    const SymMat3 a = random_sym(rng, -2, 2);
    const SymMat3 k = (1.0 / 0.8) * (p - 0.6 * a);
    const SystemSpec pen = make_system(k, random_vec(rng, -1, 1), a, random_vec(rng, -1, 1));

    for (const SystemSpec* s : {&pd, &pen}) {
        const NormalForm nf = normalize_general(*s);
        const NormalForm back = parse_normal_form(write_normal_form(nf));
        CHECK(bitwise_equal(back.lambdas, nf.lambdas));
        CHECK(bitwise_equal(back.control, nf.control));
        CHECK(bitwise_equal(back.map.linear, nf.map.linear));
        CHECK(bitwise_equal(back.map.offset, nf.map.offset));
        REQUIRE(back.steps.size() == nf.steps.size());
        for (std::size_t i = 0; i < nf.steps.size(); ++i) {
            CHECK(back.steps[i].kind == nf.steps[i].kind);
            CHECK(bitwise_equal(back.steps[i].map.linear, nf.steps[i].map.linear));
            CHECK(bitwise_equal(back.steps[i].map.offset, nf.steps[i].map.offset));
            CHECK(bitwise_equal(back.steps[i].factor, nf.steps[i].factor));
            CHECK(bitwise_equal(back.steps[i].offset, nf.steps[i].offset));
            CHECK(bitwise_equal(back.steps[i].alpha, nf.steps[i].alpha));
            CHECK(bitwise_equal(back.steps[i].beta, nf.steps[i].beta));
            CHECK(bitwise_equal(back.steps[i].gamma, nf.steps[i].gamma));
            CHECK(bitwise_equal(back.steps[i].delta, nf.steps[i].delta));
        }
        REQUIRE(back.pencil.has_value() == nf.pencil.has_value());
        if (nf.pencil) {
            CHECK(bitwise_equal(back.pencil->alpha, nf.pencil->alpha));
            CHECK(bitwise_equal(back.pencil->beta, nf.pencil->beta));
            CHECK(bitwise_equal(back.pencil->min_eigenvalue, nf.pencil->min_eigenvalue));
            CHECK(back.pencil->convention == nf.pencil->convention);
        }
    }
}

TEST_CASE("trajectory CSV: exact header, full precision, deterministic") {
    const SystemSpec s = make_system(SymMat3::identity(), Vec3{},
                                     SymMat3::diagonal(1, 2, 3), Vec3{});
    IntegratorConfig cfg;
    cfg.dt = 0.1;
    cfg.t_end = 1.0;
    const Trajectory traj = integrate(s, {1, 1, 1}, cfg);

    std::ostringstream first, second;
    write_trajectory_csv(traj, first);
    write_trajectory_csv(traj, second);
    const std::string text = first.str();
    CHECK(text == second.str());

    CHECK(text.substr(0, 15) == "t,u1,u2,u3,C,H\n");
    std::size_t rows = 0;
    for (char c : text)
        if (c == '\n') ++rows;
    CHECK(rows == traj.size() + 1);

    // Values survive a read-back through strtod.
    const std::size_t line_start = text.find('\n') + 1;
    const std::size_t line_end = text.find('\n', line_start);
    std::string row = text.substr(line_start, line_end - line_start);
    for (char& c : row)
        if (c == ',') c = ' ';
    std::istringstream iss(row);
    double t, u1, u2, u3, cc, hh;
    iss >> t >> u1 >> u2 >> u3 >> cc >> hh;
    CHECK(bitwise_equal(t, traj.times[0]));
    CHECK(bitwise_equal(u1, traj.states[0][0]));
    CHECK(bitwise_equal(cc, traj.casimir_log[0]));
    CHECK(bitwise_equal(hh, traj.hamiltonian_log[0]));
}
