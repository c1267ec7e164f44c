#include "degenlab/fields.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "degenlab/errors.hpp"

namespace degenlab {

namespace {

double eval_poly(const std::vector<double>& coeffs, double x) {
    double v = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
    return v;
}

std::vector<double> derivative_poly(const std::vector<double>& coeffs) {
    std::vector<double> d;
    for (std::size_t k = 1; k < coeffs.size(); ++k) d.push_back(coeffs[k] * static_cast<double>(k));
    return d;
}

double sampled_sup(const std::vector<double>& poly, double lo, double hi, int samples = 2048) {
    double m = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double x = lo + (hi - lo) * i / samples;
        m = std::max(m, std::abs(eval_poly(poly, x)));
    }
    return m;
}

std::size_t bracket(const std::vector<double>& nodes, double x) {
    const auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
    if (it == nodes.begin()) return 0;
    const std::size_t hi = static_cast<std::size_t>(it - nodes.begin());
    return std::min(hi, nodes.size() - 1) - 1;
}

}  // namespace

SpaceTimeField SpaceTimeField::constant(double value) {
    if (!std::isfinite(value)) throw ConfigError("field value must be finite", "(A.2)");
    SpaceTimeField f;
    f.kind_ = Kind::Constant;
    f.constant_ = value;
    return f;
}

SpaceTimeField SpaceTimeField::separable(std::vector<double> time_poly,
                                         std::vector<double> space_poly) {
    if (time_poly.empty() || space_poly.empty()) {
        throw ConfigError("separable field needs nonempty polynomial coefficients", "(A.2)");
    }
    for (double c : time_poly) {
        if (!std::isfinite(c)) throw ConfigError("field coefficients must be finite", "(A.2)");
    }
    for (double c : space_poly) {
        if (!std::isfinite(c)) throw ConfigError("field coefficients must be finite", "(A.2)");
    }
    SpaceTimeField f;
    f.kind_ = Kind::Separable;
    f.time_poly_ = std::move(time_poly);
    f.space_poly_ = std::move(space_poly);
    return f;
}

SpaceTimeField SpaceTimeField::tabulated(std::vector<double> t_nodes, std::vector<double> x_nodes,
                                         std::vector<std::vector<double>> values) {
    if (t_nodes.size() < 2 || x_nodes.size() < 2 || values.size() != t_nodes.size()) {
        throw ConfigError("tabulated field needs a (time x space) lattice", "(A.2)");
    }
    for (std::size_t i = 1; i < t_nodes.size(); ++i) {
        if (!(t_nodes[i] > t_nodes[i - 1])) throw ConfigError("field time nodes must increase", "(A.2)");
    }
    for (std::size_t i = 1; i < x_nodes.size(); ++i) {
        if (!(x_nodes[i] > x_nodes[i - 1])) throw ConfigError("field space nodes must increase", "(A.2)");
    }
    for (const auto& row : values) {
        if (row.size() != x_nodes.size()) throw ConfigError("field table row length mismatch", "(A.2)");
        for (double v : row) {
            if (!std::isfinite(v)) {
                throw ConfigError("tabulated field must be essentially bounded", "(A.2)");
            }
        }
    }
    SpaceTimeField f;
    f.kind_ = Kind::Tabulated;
    f.t_nodes_ = std::move(t_nodes);
    f.x_nodes_ = std::move(x_nodes);
    f.table_ = std::move(values);
    return f;
}

double SpaceTimeField::polynomial_time(double t) const { return eval_poly(time_poly_, t); }
double SpaceTimeField::polynomial_space(double x) const { return eval_poly(space_poly_, x); }

double SpaceTimeField::operator()(double t, double x) const {
    switch (kind_) {
        case Kind::Constant:
            return constant_;
        case Kind::Separable:
            return polynomial_time(t) * polynomial_space(x);
        case Kind::Tabulated: {
            const double tc = std::clamp(t, t_nodes_.front(), t_nodes_.back());
            const double xc = std::clamp(x, x_nodes_.front(), x_nodes_.back());
            const std::size_t it = bracket(t_nodes_, tc);
            const std::size_t ix = bracket(x_nodes_, xc);
            const double ft = (tc - t_nodes_[it]) / (t_nodes_[it + 1] - t_nodes_[it]);
            const double fx = (xc - x_nodes_[ix]) / (x_nodes_[ix + 1] - x_nodes_[ix]);
            const double a = table_[it][ix], b = table_[it][ix + 1];
            const double c = table_[it + 1][ix], d = table_[it + 1][ix + 1];
            return (1 - ft) * ((1 - fx) * a + fx * b) + ft * ((1 - fx) * c + fx * d);
        }
    }
    return 0.0;
}

double SpaceTimeField::sup_abs(double horizon) const {
    switch (kind_) {
        case Kind::Constant:
            return std::abs(constant_);
        case Kind::Separable:
            return sampled_sup(time_poly_, 0.0, horizon) * sampled_sup(space_poly_, -1.0, 1.0);
        case Kind::Tabulated: {
            double m = 0.0;
            for (const auto& row : table_) {
                for (double v : row) m = std::max(m, std::abs(v));
            }
            return m;
        }
    }
    return 0.0;
}

double SpaceTimeField::sup_positive_part(double horizon) const {
    switch (kind_) {
        case Kind::Constant:
            return std::max(constant_, 0.0);
        case Kind::Separable: {
            double m = 0.0;
            const int nt = 512, nx = 512;
            for (int i = 0; i <= nt; ++i) {
                const double pt = polynomial_time(horizon * i / nt);
                for (int j = 0; j <= nx; ++j) {
                    const double x = -1.0 + 2.0 * j / nx;
                    m = std::max(m, pt * polynomial_space(x));
                }
            }
            return m;
        }
        case Kind::Tabulated: {
            double m = 0.0;
            for (const auto& row : table_) {
                for (double v : row) m = std::max(m, v);
            }
            return m;
        }
    }
    return 0.0;
}

double SpaceTimeField::sup_time_derivative(double horizon) const {
    switch (kind_) {
        case Kind::Constant:
            return 0.0;
        case Kind::Separable:
            return sampled_sup(derivative_poly(time_poly_), 0.0, horizon) *
                   sampled_sup(space_poly_, -1.0, 1.0);
        case Kind::Tabulated: {
            double m = 0.0;
            for (std::size_t i = 0; i + 1 < t_nodes_.size(); ++i) {
                const double dt = t_nodes_[i + 1] - t_nodes_[i];
                for (std::size_t j = 0; j < x_nodes_.size(); ++j) {
                    m = std::max(m, std::abs(table_[i + 1][j] - table_[i][j]) / dt);
                }
            }
            return m;
        }
    }
    return 0.0;
}

bool SpaceTimeField::time_independent() const {
    switch (kind_) {
        case Kind::Constant:
            return true;
        case Kind::Separable:
            return time_poly_.size() <= 1;
        case Kind::Tabulated:
            return false;
    }
    return true;
}

std::string SpaceTimeField::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Constant: os << "constant(" << constant_ << ")"; break;
        case Kind::Separable:
            os << "separable(deg_t=" << time_poly_.size() - 1 << ", deg_x=" << space_poly_.size() - 1
               << ")";
            break;
        case Kind::Tabulated:
            os << "tabulated(" << t_nodes_.size() << "x" << x_nodes_.size() << ")";
            break;
    }
    return os.str();
}

}  // namespace degenlab
