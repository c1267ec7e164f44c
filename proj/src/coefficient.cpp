#include "degenlab/coefficient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "degenlab/errors.hpp"
#include "degenlab/quadrature.hpp"

namespace degenlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEndpointTol = 1e-14;
}  // namespace

std::string to_string(Degeneracy d) {
    switch (d) {
        case Degeneracy::WeaklyDegenerate: return "weakly_degenerate";
        case Degeneracy::StronglyDegenerate: return "strongly_degenerate";
        case Degeneracy::NonDegenerate: return "non_degenerate";
    }
    return "?";
}

std::string to_string(ConditionStatus s) {
    switch (s) {
        case ConditionStatus::Holds: return "holds";
        case ConditionStatus::Fails: return "fails";
        case ConditionStatus::Indeterminate: return "indeterminate";
    }
    return "?";
}

DiffusionCoefficient DiffusionCoefficient::power_law(double gamma) {
    if (!(gamma > 0.0)) {
        throw ConfigError("power-law exponent must be positive", "(A.4)");
    }
    DiffusionCoefficient c;
    c.kind_ = CoefficientKind::PowerLaw;
    c.gamma_ = gamma;
    return c;
}

DiffusionCoefficient DiffusionCoefficient::tabulated(std::vector<double> nodes,
                                                     std::vector<double> values) {
    if (nodes.size() != values.size() || nodes.size() < 3) {
        throw ConfigError("tabulated coefficient needs matching nodes/values, at least 3 samples");
    }
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (!(nodes[i] > nodes[i - 1])) {
            throw ConfigError("tabulated coefficient nodes must be strictly increasing");
        }
    }
    if (std::abs(nodes.front() + 1.0) > 1e-12 || std::abs(nodes.back() - 1.0) > 1e-12) {
        throw ConfigError("tabulated coefficient must cover [-1, 1]");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]) || values[i] < 0.0) {
            throw ConfigError("tabulated coefficient values must be finite and nonnegative", "(A.4)");
        }
        const bool interior = i > 0 && i + 1 < values.size();
        if (interior && values[i] <= 0.0) {
            throw ConfigError("coefficient must be positive inside (-1, 1)", "(A.4)");
        }
    }
    DiffusionCoefficient c;
    c.kind_ = CoefficientKind::Tabulated;
    c.nodes_ = std::move(nodes);
    c.values_ = std::move(values);
    return c;
}

DiffusionCoefficient DiffusionCoefficient::constant_one() {
    DiffusionCoefficient c;
    c.kind_ = CoefficientKind::ConstantOne;
    return c;
}

double DiffusionCoefficient::operator()(double x) const {
    if (x < -1.0 - 1e-14 || x > 1.0 + 1e-14) {
        throw DomainError("coefficient evaluated outside [-1, 1]");
    }
    x = std::clamp(x, -1.0, 1.0);
    switch (kind_) {
        case CoefficientKind::ConstantOne:
            return 1.0;
        case CoefficientKind::PowerLaw: {
            const double s = (1.0 - x) * (1.0 + x);
            return s <= 0.0 ? 0.0 : std::pow(s, gamma_);
        }
        case CoefficientKind::Tabulated: {
            const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
            if (it == nodes_.begin()) return values_.front();
            if (it == nodes_.end()) return values_.back();
            const std::size_t hi = static_cast<std::size_t>(it - nodes_.begin());
            const std::size_t lo = hi - 1;
            const double t = (x - nodes_[lo]) / (nodes_[hi] - nodes_[lo]);
            return (1.0 - t) * values_[lo] + t * values_[hi];
        }
    }
    return 0.0;
}

bool DiffusionCoefficient::vanishes_at_boundary() const {
    switch (kind_) {
        case CoefficientKind::PowerLaw: return true;
        case CoefficientKind::ConstantOne: return false;
        case CoefficientKind::Tabulated:
            return values_.front() <= kEndpointTol && values_.back() <= kEndpointTol;
    }
    return false;
}

double DiffusionCoefficient::roughness_indicator() const {
    if (kind_ != CoefficientKind::Tabulated) return 0.0;
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < nodes_.size(); ++i) {
        const double h = 0.5 * (nodes_[i + 1] - nodes_[i - 1]);
        const double second = values_[i + 1] - 2.0 * values_[i] + values_[i - 1];
        worst = std::max(worst, std::abs(second) / h);
    }
    return worst;
}

std::string DiffusionCoefficient::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case CoefficientKind::PowerLaw: os << "power_law(gamma=" << gamma_ << ")"; break;
        case CoefficientKind::Tabulated: os << "tabulated(" << nodes_.size() << " samples)"; break;
        case CoefficientKind::ConstantOne: os << "constant_one"; break;
    }
    return os.str();
}

double eval_a(const DiffusionCoefficient& coeff, double x) { return coeff(x); }

double xi_a(const DiffusionCoefficient& coeff, double x, double rel_tol) {
    if (x < -1.0 - 1e-14 || x > 1.0 + 1e-14) {
        throw DomainError("xi_a evaluated outside [-1, 1]");
    }
    if (coeff.vanishes_at_boundary() && std::abs(x) >= 1.0) {
        const bool strongly = coeff.kind() == CoefficientKind::PowerLaw && coeff.gamma() >= 1.0;
        throw DomainError(strongly ? "xi_a diverges at the boundary for this coefficient"
                                   : "xi_a must be evaluated strictly inside (-1, 1)");
    }
    if (x == 0.0) return 0.0;
    return adaptive_simpson([&coeff](double s) { return 1.0 / coeff(s); }, 0.0, x, rel_tol);
}

namespace {

// One Aitken delta-squared pass; an empty result signals a sequence too
// flat for the transform (vanishing second differences).
std::vector<double> aitken_pass(const std::vector<double>& v) {
    std::vector<double> out;
    for (std::size_t j = 0; j + 2 < v.size(); ++j) {
        const double denom = v[j + 2] - 2.0 * v[j + 1] + v[j];
        if (std::abs(denom) < 1e-13 * std::max(1.0, std::abs(v[j + 2]))) return {};
        const double step = v[j + 2] - v[j + 1];
        out.push_back(v[j + 2] - step * step / denom);
    }
    return out;
}

// Iterated Aitken limit of a convergent truncation ladder. The first pass
// removes the leading geometric tail; the second removes the subdominant
// correction, which matters for nearly flat power tails. Falls back to the
// plain geometric-tail estimate when the transform degenerates.
double extrapolate_limit(std::span<const double> values, double geometric_fallback) {
    const std::size_t window = std::min<std::size_t>(7, values.size());
    std::vector<double> seq(values.end() - static_cast<std::ptrdiff_t>(window), values.end());
    const std::vector<double> first = aitken_pass(seq);
    if (first.empty()) return geometric_fallback;
    double limit = first.back();
    const std::vector<double> second = aitken_pass(first);
    if (!second.empty()) limit = second.back();
    // The ladder increases toward its limit; reject nonsense transforms.
    if (!std::isfinite(limit) || limit < values.back() - 1e-9 * std::max(1.0, std::abs(limit))) {
        return geometric_fallback;
    }
    return limit;
}

}  // namespace

RefinementDecision judge_refinement(std::span<const double> values, double growth_factor,
                                    double max_diff_ratio, double abs_tol) {
    RefinementDecision out;
    const std::size_t n = values.size();
    if (n < 2) throw DomainError("refinement judgment needs at least two values");

    std::vector<double> diffs(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) diffs[i] = values[i + 1] - values[i];

    // Convergence is tested first: geometric decay of the trailing
    // differences implies a finite tail even while the values themselves are
    // still growing fast (a nearly-critical power singularity grows by more
    // than any fixed factor per level long before it flattens out).
    const double scale = std::max(1.0, std::abs(values.back()));
    if (std::abs(diffs.back()) <= abs_tol * scale) {
        out.trend = RefinementTrend::Convergent;
        out.limit = values.back();
        out.last_diff_ratio = 0.0;
        return out;
    }
    const std::size_t m = diffs.size();
    const std::size_t ratio_window = std::min<std::size_t>(3, m - 1);
    bool converging = ratio_window >= 1;
    double last_ratio = 0.0;
    for (std::size_t i = m - ratio_window; i < m && converging; ++i) {
        const double prev = diffs[i - 1];
        if (std::abs(prev) <= 0.0) {
            converging = false;
            break;
        }
        const double r = diffs[i] / prev;
        if (!(r > 0.0) || r > max_diff_ratio) converging = false;
        last_ratio = r;
    }
    if (converging) {
        out.trend = RefinementTrend::Convergent;
        out.last_diff_ratio = last_ratio;
        const double geometric =
            values.back() + diffs.back() * last_ratio / (1.0 - last_ratio);
        out.limit = extrapolate_limit(values, geometric);
        return out;
    }

    // Divergence: trailing value ratios all at or above the growth factor.
    const std::size_t growth_window = std::min<std::size_t>(3, n - 1);
    bool diverging = true;
    for (std::size_t i = n - growth_window; i < n; ++i) {
        const double prev = values[i - 1];
        if (!(prev > 0.0) || values[i] < growth_factor * prev) {
            diverging = false;
            break;
        }
    }
    if (diverging) {
        out.trend = RefinementTrend::Divergent;
        out.limit = kInf;
        return out;
    }

    out.trend = RefinementTrend::Indeterminate;
    return out;
}

namespace {

// Subcell record of a cumulative xi table: xi is known at the left end,
// midpoint and right end of each cell, with cells ordered outward from 0.
struct XiCell {
    double x0, xm, x1;
    double xi0, xim, xi1;
    int level;  // truncation segment index; -1 for the core [0, 1 - delta_0]
    int side;   // +1 or -1
};

struct XiTable {
    std::vector<double> deltas;
    std::vector<XiCell> cells;
    int levels = 0;
};

// Cumulative quadrature of 1/a along one side, laid out so that every
// truncation boundary 1 - delta_j is a cell boundary.
void build_side(const DiffusionCoefficient& coeff, int side, const std::vector<double>& deltas,
                double rel_tol, XiTable& table) {
    const auto recip = [&coeff](double s) { return 1.0 / coeff(s); };
    std::vector<std::pair<double, int>> edges;  // (|x| position, level tag)
    const int core_cells = 64;
    const double core_edge = 1.0 - deltas.front();
    for (int i = 1; i <= core_cells; ++i) {
        edges.emplace_back(core_edge * i / core_cells, -1);
    }
    const int seg_cells = 32;
    for (std::size_t j = 0; j + 1 < deltas.size(); ++j) {
        const double a = 1.0 - deltas[j];
        const double b = 1.0 - deltas[j + 1];
        for (int i = 1; i <= seg_cells; ++i) {
            edges.emplace_back(a + (b - a) * i / seg_cells, static_cast<int>(j));
        }
    }
    double prev = 0.0;
    double xi_prev = 0.0;
    for (const auto& [pos, level] : edges) {
        const double x0 = side * prev;
        const double x1 = side * pos;
        const double xm = 0.5 * (x0 + x1);
        const double first = adaptive_simpson(recip, x0, xm, rel_tol, 32);
        const double second = adaptive_simpson(recip, xm, x1, rel_tol, 32);
        XiCell cell;
        cell.x0 = x0;
        cell.xm = xm;
        cell.x1 = x1;
        cell.xi0 = xi_prev;
        cell.xim = xi_prev + first;
        cell.xi1 = xi_prev + first + second;
        cell.level = level;
        cell.side = side;
        table.cells.push_back(cell);
        prev = pos;
        xi_prev = cell.xi1;
    }
}

XiTable build_xi_table(const DiffusionCoefficient& coeff, int levels, double rel_tol) {
    XiTable table;
    table.levels = levels;
    table.deltas.resize(static_cast<std::size_t>(levels));
    for (int j = 0; j < levels; ++j) table.deltas[static_cast<std::size_t>(j)] = 0.1 * std::pow(2.0, -j);
    build_side(coeff, +1, table.deltas, rel_tol, table);
    build_side(coeff, -1, table.deltas, rel_tol, table);
    return table;
}

// Truncated integrals of 1/a: I_j over [-1 + delta_j, 1 - delta_j].
std::vector<double> truncated_reciprocal_integrals(const XiTable& table) {
    std::vector<double> out(static_cast<std::size_t>(table.levels), 0.0);
    std::vector<double> core(2, 0.0);                    // per side
    std::vector<double> seg(2 * static_cast<std::size_t>(table.levels), 0.0);
    for (const auto& c : table.cells) {
        const std::size_t s = c.side > 0 ? 0 : 1;
        const double amount = std::abs(c.xi1 - c.xi0);
        if (c.level < 0) {
            core[s] += amount;
        } else {
            seg[2 * static_cast<std::size_t>(c.level) + s] += amount;
        }
    }
    double acc = core[0] + core[1];
    out[0] = acc;
    for (int j = 1; j < table.levels; ++j) {
        acc += seg[2 * static_cast<std::size_t>(j - 1)] + seg[2 * static_cast<std::size_t>(j - 1) + 1];
        out[static_cast<std::size_t>(j)] = acc;
    }
    return out;
}

// Truncated integrals of |xi|^q, Simpson per subcell on the cached xi values.
std::vector<double> truncated_xi_power_integrals(const XiTable& table, double q) {
    std::vector<double> core(2, 0.0);
    std::vector<double> seg(2 * static_cast<std::size_t>(table.levels), 0.0);
    for (const auto& c : table.cells) {
        const std::size_t s = c.side > 0 ? 0 : 1;
        const double h = std::abs(c.x1 - c.x0);
        const double v = h / 6.0 *
                         (std::pow(std::abs(c.xi0), q) + 4.0 * std::pow(std::abs(c.xim), q) +
                          std::pow(std::abs(c.xi1), q));
        if (c.level < 0) {
            core[s] += v;
        } else {
            seg[2 * static_cast<std::size_t>(c.level) + s] += v;
        }
    }
    std::vector<double> out(static_cast<std::size_t>(table.levels), 0.0);
    double acc = core[0] + core[1];
    out[0] = acc;
    for (int j = 1; j < table.levels; ++j) {
        acc += seg[2 * static_cast<std::size_t>(j - 1)] + seg[2 * static_cast<std::size_t>(j - 1) + 1];
        out[static_cast<std::size_t>(j)] = acc;
    }
    return out;
}

}  // namespace

DegeneracyReport classify(const DiffusionCoefficient& coeff, int refinement_levels) {
    if (refinement_levels < 3) {
        throw ConfigError("classification needs at least 3 refinement levels");
    }
    const XiTable table = build_xi_table(coeff, refinement_levels, 1e-11);
    DegeneracyReport report;
    report.refinement_deltas = table.deltas;
    report.refinement_values = truncated_reciprocal_integrals(table);
    report.satisfies_A4 = coeff.vanishes_at_boundary();

    const RefinementDecision decision = judge_refinement(report.refinement_values);
    if (decision.trend == RefinementTrend::Indeterminate) {
        throw IndeterminateError("refinement trend of the reciprocal integral is ambiguous",
                                 report.refinement_values);
    }
    const bool finite = decision.trend == RefinementTrend::Convergent;
    report.reciprocal_integral = finite ? decision.limit : kInf;
    report.k_constant = finite ? std::sqrt(decision.limit) : kInf;
    if (!report.satisfies_A4) {
        report.classification = Degeneracy::NonDegenerate;
    } else {
        report.classification =
            finite ? Degeneracy::WeaklyDegenerate : Degeneracy::StronglyDegenerate;
    }
    return report;
}

double a5_sd_exponent(double theta) {
    if (!(theta >= 1.0) || !(theta < 3.0)) {
        throw DomainError("the admissibility exponent needs theta in [1, 3)");
    }
    return std::max((1.0 + theta) / (3.0 - theta), 2.0 * theta - 1.0);
}

A5SDCheck check_A5_SD(const DiffusionCoefficient& coeff, double theta, int refinement_levels) {
    A5SDCheck out;
    out.q_theta = a5_sd_exponent(theta);
    if (refinement_levels < 3) {
        throw ConfigError("check_A5_SD needs at least 3 refinement levels");
    }
    const XiTable table = build_xi_table(coeff, refinement_levels, 1e-11);
    out.refinement_values = truncated_xi_power_integrals(table, out.q_theta);
    const RefinementDecision decision = judge_refinement(out.refinement_values);
    switch (decision.trend) {
        case RefinementTrend::Convergent:
            out.status = ConditionStatus::Holds;
            out.xi_lq_norm = std::pow(decision.limit, 1.0 / out.q_theta);
            break;
        case RefinementTrend::Divergent:
            out.status = ConditionStatus::Fails;
            out.xi_lq_norm = kInf;
            break;
        case RefinementTrend::Indeterminate:
            out.status = ConditionStatus::Indeterminate;
            out.xi_lq_norm = std::numeric_limits<double>::quiet_NaN();
            break;
    }
    return out;
}

}  // namespace degenlab
