#include "stackgame/scalar_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "stackgame/errors.hpp"

namespace stackgame {

namespace {

double checked_eval(const std::function<double(double)>& objective, double x) {
    double v = objective(x);
    if (!std::isfinite(v))
        throw InvalidScenarioError("objective not finite at " + std::to_string(x));
    return v;
}

// tracks the incumbent; near-equal values resolve to the smaller argument
struct Incumbent {
    double x;
    double value;
    double tie;

    void offer(double cx, double cv) {
        if (cv > value + tie) {
            x = cx;
            value = cv;
        } else if (cv > value - tie && cx < x) {
            x = cx;
            value = std::max(value, cv);
        }
    }
};

}  // namespace

ScalarMaximum maximize_scalar(const std::function<double(double)>& objective,
                              double lo, double hi, double tol, double grid_step) {
    if (!(lo <= hi))
        throw InvalidScenarioError("empty search interval");
    if (lo == hi) return {lo, checked_eval(objective, lo)};

    auto cells = static_cast<std::size_t>(
        std::max(1.0, std::ceil((hi - lo) / grid_step)));
    double h = (hi - lo) / static_cast<double>(cells);

    std::vector<double> xs(cells + 1), vs(cells + 1);
    double vmax = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i <= cells; ++i) {
        xs[i] = (i == cells) ? hi : lo + static_cast<double>(i) * h;
        vs[i] = checked_eval(objective, xs[i]);
        vmax = std::max(vmax, vs[i]);
    }

    // a cell can hide a maximum above its endpoint samples by about
    // |f''| h^2 / 8; the largest second difference of the samples bounds that
    // overshoot, so widen the refinement margin by it
    double d2max = 0.0;
    for (std::size_t i = 1; i < cells; ++i)
        d2max = std::max(d2max, std::abs(vs[i - 1] - 2.0 * vs[i] + vs[i + 1]));
    // a few ulps: wide enough to catch genuinely equal peaks evaluated with
    // rounding noise, tight enough not to drift across a flat quadratic top
    double tie = 4e-15 * (1.0 + std::abs(vmax));
    double margin = d2max + tie;

    Incumbent best{xs[0], vs[0], tie};
    for (std::size_t i = 1; i <= cells; ++i) best.offer(xs[i], vs[i]);

    for (std::size_t i = 0; i < cells; ++i) {
        if (std::max(vs[i], vs[i + 1]) < vmax - margin) continue;
        double a = xs[i], b = xs[i + 1];
        constexpr double inv_phi = 0.6180339887498949;
        double x1 = b - inv_phi * (b - a);
        double x2 = a + inv_phi * (b - a);
        double f1 = checked_eval(objective, x1);
        double f2 = checked_eval(objective, x2);
        best.offer(x1, f1);
        best.offer(x2, f2);
        int guard = 0;
        while (b - a > tol && ++guard < 200) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + inv_phi * (b - a);
                f2 = checked_eval(objective, x2);
                best.offer(x2, f2);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - inv_phi * (b - a);
                f1 = checked_eval(objective, x1);
                best.offer(x1, f1);
            }
        }
    }
    return {best.x, best.value};
}

ScalarMaximum maximize_scalar(const std::function<double(double)>& objective,
                              const std::function<double(double)>& derivative,
                              double lo, double hi, double tol, double grid_step) {
    auto coarse = maximize_scalar(objective, lo, hi, tol, grid_step);

    // bisect the derivative across successively tighter brackets around the
    // coarse winner; the first bracketing sign change pins the stationary
    // point to machine precision
    for (double w = grid_step; w > tol * 0.25; w *= 0.25) {
        double a = std::max(lo, coarse.x - w);
        double b = std::min(hi, coarse.x + w);
        if (!(a < b)) break;
        double da = derivative(a);
        double db = derivative(b);
        if (!std::isfinite(da) || !std::isfinite(db)) return coarse;
        if (!(da >= 0.0 && db <= 0.0)) continue;
        for (int it = 0; it < 200 && b - a > 4e-16 * (1.0 + std::abs(a)); ++it) {
            double m = 0.5 * (a + b);
            double dm = derivative(m);
            if (!std::isfinite(dm)) return coarse;
            if (dm > 0.0)
                a = m;
            else
                b = m;
        }
        double x = 0.5 * (a + b);
        double v = checked_eval(objective, x);
        if (v >= coarse.value - 1e-12 * (1.0 + std::abs(coarse.value)))
            return {x, std::max(v, coarse.value)};
        break;
    }
    return coarse;
}

ScalarMaximum maximize_quadratic(double a, double b, double c, double lo, double hi) {
    auto q = [&](double x) { return (a * x + b) * x + c; };
    if (a < 0.0) {
        double x = std::clamp(-b / (2.0 * a), lo, hi);
        return {x, q(x)};
    }
    double vlo = q(lo), vhi = q(hi);
    return vhi > vlo ? ScalarMaximum{hi, vhi} : ScalarMaximum{lo, vlo};
}

}  // namespace stackgame
