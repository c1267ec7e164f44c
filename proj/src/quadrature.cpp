#include "degenlab/quadrature.hpp"

#include <cmath>

namespace degenlab {
namespace {

struct Funnel {
    const std::function<double(double)>& f;
    double rel_tol;
};

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double recurse(const Funnel& q, double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = q.f(lm);
    const double frm = q.f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return recurse(q, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           recurse(q, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, int max_depth) {
    if (a == b) return 0.0;
    const Funnel q{f, rel_tol};
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = simpson(fa, fm, fb, b - a);
    const double tol = rel_tol * std::max(std::abs(whole), 1e-3) + 1e-300;
    return recurse(q, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace degenlab
