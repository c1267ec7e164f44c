#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "degenlab/coefficient.hpp"
#include "degenlab/diffusion_operator.hpp"
#include "degenlab/fields.hpp"
#include "degenlab/nemytskii.hpp"
#include "degenlab/solver.hpp"

namespace degenlab {

struct MeshParams {
    int n = 256;
    double grading = 0.0;  // 0 = automatic
};

struct TimeParams {
    double horizon = 1.0;
    int steps = 512;
};

struct Tolerances {
    double picard_tol = 1e-10;
    int picard_max = 50;
    double quad_tol = 1e-10;
};

/// Parsed run configuration. Module-level invariants are re-validated on
/// load; a violation is rejected with the failing assumption named.
class RunConfig {
public:
    static RunConfig from_file(const std::filesystem::path& path);
    static RunConfig from_json(nlohmann::json j);

    const nlohmann::json& raw() const { return raw_; }
    /// FNV-1a hash of the canonical serialized configuration.
    std::string hash() const;

    bool has_problem() const;
    DiffusionCoefficient coefficient() const;
    BoundaryMode boundary() const;
    SpaceTimeField alpha() const;
    NemytskiiModel model() const;
    InitialDatum initial_datum() const;
    RegularityClaim claim() const;

    /// Assembles and cross-validates the full problem (classifies the
    /// coefficient when needed).
    ProblemSpec problem() const;

    MeshParams mesh_params() const;
    TimeParams time_params() const;
    Tolerances tolerances() const;

    std::uint64_t seed = 12345;
    std::string output_dir = "out";

    /// Optional subcommand-specific section ("classify", "inequalities",
    /// "validate", "operator", "stability", "strong", "converge").
    nlohmann::json section(const std::string& name) const;

private:
    nlohmann::json raw_;
};

SpaceTimeField parse_field(const nlohmann::json& j, const std::string& what);
DiffusionCoefficient parse_coefficient(const nlohmann::json& j);
BoundaryMode parse_boundary(const nlohmann::json& j);
NemytskiiModel parse_model(const nlohmann::json& j);
InitialDatum parse_datum(const nlohmann::json& j);

}  // namespace degenlab
