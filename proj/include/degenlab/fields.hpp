#pragma once

#include <string>
#include <vector>

namespace degenlab {

/// Bounded space-time field on [0, T] x [-1, 1]: the reaction coefficient
/// alpha(t, x) and the coefficient c(t, x) of the built-in nonlinearity are
/// both instances. Constant and separable (polynomial-in-t times
/// polynomial-in-x) forms are closed-form; tabulated fields interpolate
/// bilinearly on a lattice.
class SpaceTimeField {
public:
    static SpaceTimeField constant(double value);
    static SpaceTimeField separable(std::vector<double> time_poly, std::vector<double> space_poly);
    static SpaceTimeField tabulated(std::vector<double> t_nodes, std::vector<double> x_nodes,
                                    std::vector<std::vector<double>> values);

    double operator()(double t, double x) const;

    /// sup |field| over [0, T] x [-1, 1]; exact for constant and tabulated
    /// fields, a dense sample for separable ones.
    double sup_abs(double horizon) const;

    /// sup of the positive part (the growth rate that enters the stability
    /// constant).
    double sup_positive_part(double horizon) const;

    /// sup |d field / dt|; 0 for constants, closed-form polynomial bound for
    /// separable fields, slope bound for tabulated ones.
    double sup_time_derivative(double horizon) const;

    bool time_independent() const;
    bool is_constant() const { return kind_ == Kind::Constant; }
    double constant_value() const { return constant_; }
    std::string describe() const;

private:
    enum class Kind { Constant, Separable, Tabulated };

    SpaceTimeField() = default;

    double polynomial_time(double t) const;
    double polynomial_space(double x) const;

    Kind kind_ = Kind::Constant;
    double constant_ = 0.0;
    std::vector<double> time_poly_;
    std::vector<double> space_poly_;
    std::vector<double> t_nodes_;
    std::vector<double> x_nodes_;
    std::vector<std::vector<double>> table_;
};

}  // namespace degenlab
