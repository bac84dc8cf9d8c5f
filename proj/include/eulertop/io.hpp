#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "eulertop/dynamics.hpp"
#include "eulertop/normal_form.hpp"
#include "eulertop/poisson.hpp"

namespace eulertop {

// Parse or validation failure; the message names the offending field.
struct SpecParseError : std::runtime_error {
    SpecParseError(const std::string& field_name, const std::string& why)
        : std::runtime_error("field " + field_name + ": " + why), field(field_name) {}
    std::string field;
};

// On-disk system document (JSON). K and A are the 6 upper-triangle
// values [m11, m12, m13, m22, m23, m33]; k and a are 3 values each.
// Asymmetric input is unrepresentable by construction.
struct SpecDocument {
    SystemSpec system;
    std::string name;     // optional
    std::string comment;  // optional
};

SpecDocument parse_spec(const std::string& text);
std::string write_spec(const SpecDocument& doc);
SpecDocument load_spec(const std::string& path);  // throws SpecParseError on IO failure

// Normal-form document: lambdas, d, the affine map (M row-major + c),
// the full step provenance, and the pencil certificate when one was
// used. Values round-trip losslessly.
std::string write_normal_form(const NormalForm& nf);
NormalForm parse_normal_form(const std::string& text);

// CSV with header exactly `t,u1,u2,u3,C,H`, one row per step, full
// float precision.
void write_trajectory_csv(const Trajectory& traj, std::ostream& os);

}  // namespace eulertop
