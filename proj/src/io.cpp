#include "eulertop/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace eulertop {

namespace {

using nlohmann::json;

double scalar_from(const json& v, const std::string& field) {
    if (!v.is_number()) throw SpecParseError(field, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw SpecParseError(field, "value is not finite");
    return x;
}

double number_at(const json& arr, std::size_t i, const std::string& field) {
    return scalar_from(arr[i], field);
}

Vec3 vec3_from(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 3)
        throw SpecParseError(field, "expected an array of 3 numbers");
    return {number_at(j, 0, field), number_at(j, 1, field), number_at(j, 2, field)};
}

SymMat3 sym_from(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 6)
        throw SpecParseError(field,
                             "expected the 6 upper-triangle values "
                             "[m11, m12, m13, m22, m23, m33]");
    return SymMat3::from_upper(number_at(j, 0, field), number_at(j, 1, field),
                               number_at(j, 2, field), number_at(j, 3, field),
                               number_at(j, 4, field), number_at(j, 5, field));
}

Mat3 mat3_from(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 9)
        throw SpecParseError(field, "expected an array of 9 numbers (row-major)");
    Mat3 m;
    for (std::size_t i = 0; i < 9; ++i) m.e[i] = number_at(j, i, field);
    return m;
}

const json& member(const json& j, const std::string& field) {
    const auto it = j.find(field);
    if (it == j.end()) throw SpecParseError(field, "missing");
    return *it;
}

json to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

json to_json(const SymMat3& m) {
    return json::array({m.e[0], m.e[1], m.e[2], m.e[3], m.e[4], m.e[5]});
}

json to_json(const Mat3& m) {
    json a = json::array();
    for (double x : m.e) a.push_back(x);
    return a;
}

json to_json(const AffineMap3& m) {
    return json{{"M", to_json(m.linear)}, {"c", to_json(m.offset)}};
}

AffineMap3 map_from(const json& j, const std::string& field) {
    if (!j.is_object()) throw SpecParseError(field, "expected an object {M, c}");
    return {mat3_from(member(j, "M"), field + ".M"), vec3_from(member(j, "c"), field + ".c")};
}

StepKind step_kind_from(const std::string& s, const std::string& field) {
    for (StepKind k : {StepKind::homothety, StepKind::cholesky_linear,
                       StepKind::orthogonal_diag, StepKind::general_affine,
                       StepKind::sl2_rewrite, StepKind::homogenize})
        if (s == to_string(k)) return k;
    throw SpecParseError(field, "unknown step kind '" + s + "'");
}

}  // namespace

SpecDocument parse_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecParseError("document", e.what());
    }
    if (!j.is_object()) throw SpecParseError("document", "expected a JSON object");

    SpecDocument doc;
    doc.system.casimir.quad = sym_from(member(j, "K"), "K");
    doc.system.casimir.lin = vec3_from(member(j, "k"), "k");
    doc.system.hamiltonian.quad = sym_from(member(j, "A"), "A");
    doc.system.hamiltonian.lin = vec3_from(member(j, "a"), "a");
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw SpecParseError("name", "expected a string");
        doc.name = j["name"].get<std::string>();
    }
    if (j.contains("comment")) {
        if (!j["comment"].is_string()) throw SpecParseError("comment", "expected a string");
        doc.comment = j["comment"].get<std::string>();
    }
    return doc;
}

std::string write_spec(const SpecDocument& doc) {
    json j;
    j["K"] = to_json(doc.system.casimir.quad);
    j["k"] = to_json(doc.system.casimir.lin);
    j["A"] = to_json(doc.system.hamiltonian.quad);
    j["a"] = to_json(doc.system.hamiltonian.lin);
    if (!doc.name.empty()) j["name"] = doc.name;
    if (!doc.comment.empty()) j["comment"] = doc.comment;
    return j.dump(2) + "\n";
}

SpecDocument load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecParseError("document", "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
}

std::string write_normal_form(const NormalForm& nf) {
    json j;
    j["lambdas"] = to_json(nf.lambdas);
    j["d"] = to_json(nf.control);
    j["map"] = to_json(nf.map);
    json steps = json::array();
    for (const TransformStep& s : nf.steps) {
        json js;
        js["kind"] = to_string(s.kind);
        js["map"] = to_json(s.map);
        js["factor"] = to_json(s.factor);
        js["offset"] = to_json(s.offset);
        js["alpha"] = s.alpha;
        js["beta"] = s.beta;
        js["gamma"] = s.gamma;
        js["delta"] = s.delta;
        steps.push_back(js);
    }
    j["steps"] = steps;
    if (nf.pencil) {
        j["pencil"] = json{{"alpha", nf.pencil->alpha},
                           {"beta", nf.pencil->beta},
                           {"min_eigenvalue", nf.pencil->min_eigenvalue},
                           {"convention", to_string(nf.pencil->convention)}};
    }
    return j.dump(2) + "\n";
}

NormalForm parse_normal_form(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecParseError("document", e.what());
    }
    if (!j.is_object()) throw SpecParseError("document", "expected a JSON object");

    NormalForm nf;
    nf.lambdas = vec3_from(member(j, "lambdas"), "lambdas");
    nf.control = vec3_from(member(j, "d"), "d");
    nf.map = map_from(member(j, "map"), "map");
    const json& steps = member(j, "steps");
    if (!steps.is_array()) throw SpecParseError("steps", "expected an array");
    for (const json& js : steps) {
        TransformStep s;
        if (!js.is_object() || !js.contains("kind") || !js["kind"].is_string())
            throw SpecParseError("steps", "each step needs a string 'kind'");
        s.kind = step_kind_from(js["kind"].get<std::string>(), "steps.kind");
        s.map = map_from(member(js, "map"), "steps.map");
        s.factor = mat3_from(member(js, "factor"), "steps.factor");
        s.offset = vec3_from(member(js, "offset"), "steps.offset");
        s.alpha = scalar_from(member(js, "alpha"), "steps.alpha");
        s.beta = scalar_from(member(js, "beta"), "steps.beta");
        s.gamma = scalar_from(member(js, "gamma"), "steps.gamma");
        s.delta = scalar_from(member(js, "delta"), "steps.delta");
        nf.steps.push_back(s);
    }
    if (j.contains("pencil")) {
        const json& jp = j["pencil"];
        PencilCertificate cert;
        cert.alpha = scalar_from(member(jp, "alpha"), "pencil.alpha");
        cert.beta = scalar_from(member(jp, "beta"), "pencil.beta");
        cert.min_eigenvalue = scalar_from(member(jp, "min_eigenvalue"), "pencil.min_eigenvalue");
        const json& conv = member(jp, "convention");
        if (!conv.is_string()) throw SpecParseError("pencil.convention", "expected a string");
        const std::string cs = conv.get<std::string>();
        if (cs == to_string(PencilConvention::a_first))
            cert.convention = PencilConvention::a_first;
        else if (cs == to_string(PencilConvention::k_first))
            cert.convention = PencilConvention::k_first;
        else
            throw SpecParseError("pencil.convention", "unknown convention '" + cs + "'");
        nf.pencil = cert;
    }
    return nf;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
    os << "t,u1,u2,u3,C,H\n";
    char line[256];
    for (std::size_t i = 0; i < traj.size(); ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      traj.times[i], traj.states[i][0], traj.states[i][1],
                      traj.states[i][2], traj.casimir_log[i], traj.hamiltonian_log[i]);
        os << line;
    }
}

}  // namespace eulertop
