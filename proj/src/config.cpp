#include "degenlab/config.hpp"

#include <cstdio>
#include <fstream>

#include "degenlab/errors.hpp"

namespace degenlab {

using nlohmann::json;

namespace {

const json& require(const json& j, const std::string& key, const std::string& context) {
    const auto it = j.find(key);
    if (it == j.end()) throw ConfigError("missing \"" + key + "\" in " + context);
    return *it;
}

double number(const json& j, const std::string& context) {
    if (!j.is_number()) throw ConfigError("expected a number for " + context);
    return j.get<double>();
}

std::vector<double> number_list(const json& j, const std::string& context) {
    if (!j.is_array()) throw ConfigError("expected an array for " + context);
    std::vector<double> out;
    for (const auto& v : j) out.push_back(number(v, context));
    return out;
}

}  // namespace

SpaceTimeField parse_field(const json& j, const std::string& what) {
    if (j.is_number()) return SpaceTimeField::constant(j.get<double>());
    if (!j.is_object()) throw ConfigError("field \"" + what + "\" must be a number or an object");
    if (j.contains("const")) return SpaceTimeField::constant(number(j["const"], what));
    const std::string kind = j.value("kind", "");
    if (kind == "constant") return SpaceTimeField::constant(number(require(j, "value", what), what));
    if (kind == "separable") {
        return SpaceTimeField::separable(number_list(require(j, "time_poly", what), what),
                                         number_list(require(j, "space_poly", what), what));
    }
    if (kind == "tabulated") {
        const json& rows = require(j, "values", what);
        if (!rows.is_array()) throw ConfigError("tabulated field values must be an array", "(A.2)");
        std::vector<std::vector<double>> values;
        for (const auto& row : rows) values.push_back(number_list(row, what));
        return SpaceTimeField::tabulated(number_list(require(j, "t_nodes", what), what),
                                         number_list(require(j, "x_nodes", what), what),
                                         std::move(values));
    }
    throw ConfigError("unknown field kind for \"" + what + "\"");
}

DiffusionCoefficient parse_coefficient(const json& j) {
    const std::string kind = j.value("kind", "");
    if (kind == "power") {
        return DiffusionCoefficient::power_law(number(require(j, "gamma", "coefficient"), "gamma"));
    }
    if (kind == "tabulated") {
        return DiffusionCoefficient::tabulated(
            number_list(require(j, "nodes", "coefficient"), "coefficient nodes"),
            number_list(require(j, "values", "coefficient"), "coefficient values"));
    }
    if (kind == "constant_one") return DiffusionCoefficient::constant_one();
    throw ConfigError("unknown coefficient kind \"" + kind + "\"", "(A.4)");
}

BoundaryMode parse_boundary(const json& j) {
    const std::string mode = j.value("mode", "");
    if (mode == "weighted_neumann") return BoundaryMode::weighted_neumann();
    if (mode == "robin") {
        RobinBC bc;
        bc.beta0 = number(require(j, "beta0", "bc"), "beta0");
        bc.beta1 = number(require(j, "beta1", "bc"), "beta1");
        bc.gamma0 = number(require(j, "gamma0", "bc"), "gamma0");
        bc.gamma1 = number(require(j, "gamma1", "bc"), "gamma1");
        bc.validate();
        return BoundaryMode::robin_bc(bc);
    }
    throw ConfigError("unknown boundary mode \"" + mode + "\"", "(A.5_WD)");
}

NemytskiiModel parse_model(const json& j) {
    const std::string kind = j.value("kind", "");
    if (kind == "zero") return NemytskiiModel::zero();
    if (kind == "pure_power") {
        return NemytskiiModel::pure_power(number(require(j, "g0", "model"), "g0"),
                                          number(require(j, "theta", "model"), "theta"),
                                          static_cast<int>(number(require(j, "sign", "model"), "sign")));
    }
    if (kind == "paper_example") {
        return NemytskiiModel::paper_example(number(require(j, "theta", "model"), "theta"),
                                             parse_field(require(j, "c", "model"), "c"));
    }
    throw ConfigError("unknown model kind \"" + kind + "\"", "(A.3)");
}

InitialDatum parse_datum(const json& j) {
    const std::string kind = j.value("kind", "");
    if (kind == "legendre") {
        return InitialDatum::legendre(static_cast<int>(number(require(j, "degree", "datum"), "degree")));
    }
    if (kind == "sign") return InitialDatum::sign();
    if (kind == "polynomial") {
        return InitialDatum::polynomial(number_list(require(j, "coeffs", "datum"), "datum coeffs"));
    }
    if (kind == "nodal") {
        return InitialDatum::nodal(number_list(require(j, "nodes", "datum"), "datum nodes"),
                                   number_list(require(j, "values", "datum"), "datum values"));
    }
    throw ConfigError("unknown initial datum kind \"" + kind + "\"", "(A.1)");
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return from_json(std::move(j));
}

RunConfig RunConfig::from_json(json j) {
    RunConfig cfg;
    cfg.raw_ = std::move(j);
    if (cfg.raw_.contains("seed")) cfg.seed = cfg.raw_["seed"].get<std::uint64_t>();
    if (cfg.raw_.contains("output_dir")) cfg.output_dir = cfg.raw_["output_dir"].get<std::string>();
    // Eagerly validate whatever sections are present.
    if (cfg.has_problem()) {
        const json& p = cfg.raw_["problem"];
        if (p.contains("coefficient")) cfg.coefficient();
        if (p.contains("bc")) cfg.boundary();
        if (p.contains("alpha")) cfg.alpha();
        if (p.contains("model")) cfg.model();
        if (p.contains("initial_datum")) cfg.initial_datum();
    }
    cfg.mesh_params();
    cfg.time_params();
    cfg.tolerances();
    return cfg;
}

std::string RunConfig::hash() const {
    const std::string dump = raw_.dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

bool RunConfig::has_problem() const { return raw_.contains("problem"); }

DiffusionCoefficient RunConfig::coefficient() const {
    if (!has_problem()) throw ConfigError("config has no \"problem\" section");
    return parse_coefficient(require(raw_["problem"], "coefficient", "problem"));
}

BoundaryMode RunConfig::boundary() const {
    const json& p = raw_.at("problem");
    if (!p.contains("bc")) return BoundaryMode::weighted_neumann();
    return parse_boundary(p["bc"]);
}

SpaceTimeField RunConfig::alpha() const {
    const json& p = raw_.at("problem");
    if (!p.contains("alpha")) return SpaceTimeField::constant(0.0);
    return parse_field(p["alpha"], "alpha");
}

NemytskiiModel RunConfig::model() const {
    const json& p = raw_.at("problem");
    if (!p.contains("model")) return NemytskiiModel::zero();
    return parse_model(p["model"]);
}

InitialDatum RunConfig::initial_datum() const {
    const json& p = raw_.at("problem");
    if (!p.contains("initial_datum")) return InitialDatum::polynomial({0.0});
    return parse_datum(p["initial_datum"]);
}

RegularityClaim RunConfig::claim() const {
    const json& p = raw_.at("problem");
    const std::string claim = p.value("regularity_claim", "h1a");
    if (claim == "h1a") return RegularityClaim::H1a;
    if (claim == "l2only") return RegularityClaim::L2Only;
    throw ConfigError("unknown regularity claim \"" + claim + "\"");
}

ProblemSpec RunConfig::problem() const {
    ProblemSpec spec;
    spec.coeff = coefficient();
    spec.bc = boundary();
    spec.alpha = alpha();
    spec.model = model();
    spec.horizon = time_params().horizon;
    spec.u0 = initial_datum();
    spec.claim = claim();
    const DegeneracyReport report = classify(spec.coeff);
    spec.validate(report.classification);
    return spec;
}

MeshParams RunConfig::mesh_params() const {
    MeshParams mp;
    if (raw_.contains("mesh")) {
        const json& m = raw_["mesh"];
        if (m.contains("n")) mp.n = m["n"].get<int>();
        if (m.contains("grading")) mp.grading = number(m["grading"], "mesh grading");
        if (mp.n < 8 || mp.n % 2 != 0) {
            throw ConfigError("mesh needs an even cell count of at least 8");
        }
        if (mp.grading != 0.0 && mp.grading < 1.0) {
            throw ConfigError("mesh grading exponent must be at least 1");
        }
    }
    return mp;
}

TimeParams RunConfig::time_params() const {
    TimeParams tp;
    if (raw_.contains("time")) {
        const json& t = raw_["time"];
        if (t.contains("horizon")) tp.horizon = number(t["horizon"], "horizon");
        if (t.contains("steps")) tp.steps = t["steps"].get<int>();
        if (!(tp.horizon > 0.0)) throw ConfigError("time horizon must be positive");
        if (tp.steps < 1) throw ConfigError("time grid needs at least one step");
    }
    return tp;
}

Tolerances RunConfig::tolerances() const {
    Tolerances tol;
    if (raw_.contains("tolerances")) {
        const json& t = raw_["tolerances"];
        if (t.contains("picard_tol")) tol.picard_tol = number(t["picard_tol"], "picard_tol");
        if (t.contains("picard_max")) tol.picard_max = t["picard_max"].get<int>();
        if (t.contains("quad_tol")) tol.quad_tol = number(t["quad_tol"], "quad_tol");
        if (!(tol.picard_tol > 0.0) || tol.picard_max < 1 || !(tol.quad_tol > 0.0)) {
            throw ConfigError("tolerances must be positive");
        }
    }
    return tol;
}

nlohmann::json RunConfig::section(const std::string& name) const {
    return raw_.value(name, json::object());
}

}  // namespace degenlab
