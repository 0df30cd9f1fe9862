#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <type_traits>
#include <vector>

#include "qdev/errors.hpp"

namespace qdev {

/// Interval, absolute tolerance and recursion limit for adaptive Simpson.
///
/// `initial_panels` splits [lower, upper] before adapting so that narrow
/// features (transmission resonances) are not skipped by the first probes.
struct QuadratureSpec {
    double lower = 0.0;
    double upper = 1.0;
    double tolerance = 1e-10;
    int max_depth = 50;
    int initial_panels = 1;

    void validate() const;
};

template <class Value>
struct QuadratureResult {
    Value value{};
    bool depth_exceeded = false;
    std::size_t evaluations = 0;
};

namespace detail {

inline double norm_max(double v) { return std::abs(v); }
inline double norm_max(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double zero_like(double) { return 0.0; }
inline std::vector<double> zero_like(const std::vector<double>& v) { return std::vector<double>(v.size(), 0.0); }

// y += a * x
inline void axpy(double a, double x, double& y) { y += a * x; }
inline void axpy(double a, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

template <class Value>
Value simpson(double h, const Value& fa, const Value& fm, const Value& fb) {
    Value s = zero_like(fa);
    axpy(h / 6.0, fa, s);
    axpy(4.0 * h / 6.0, fm, s);
    axpy(h / 6.0, fb, s);
    return s;
}

template <class Value, class F>
class SimpsonRecursion {
public:
    SimpsonRecursion(F& f, int max_depth, QuadratureResult<Value>& result)
        : f_(f), max_depth_(max_depth), result_(result) {}

    // Adds the refined integral over [a, b] into `acc`.
    void run(double a, double b, const Value& fa, const Value& fm, const Value& fb, const Value& whole,
             double tol, int depth, Value& acc) {
        const double m = 0.5 * (a + b);
        const double h = b - a;
        const Value flm = f_(0.5 * (a + m));
        const Value frm = f_(0.5 * (m + b));
        result_.evaluations += 2;
        const Value left = simpson(0.5 * h, fa, flm, fm);
        const Value right = simpson(0.5 * h, fm, frm, fb);
        Value diff = left;
        axpy(1.0, right, diff);
        axpy(-1.0, whole, diff);
        const double err = norm_max(diff) / 15.0;
        if (err <= tol || depth >= max_depth_) {
            if (err > tol) result_.depth_exceeded = true;
            axpy(1.0, left, acc);
            axpy(1.0, right, acc);
            axpy(1.0 / 15.0, diff, acc);
            return;
        }
        run(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, acc);
        run(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, acc);
    }

private:
    F& f_;
    int max_depth_;
    QuadratureResult<Value>& result_;
};

}  // namespace detail

/// Adaptive Simpson quadrature with the Lyness estimate |S2 - S1| / 15 and
/// tolerance halving per level.
///
/// `Value` is `double` or `std::vector<double>`; vector integrands share every
/// function evaluation and the error is controlled in the max norm, so each
/// component meets the tolerance. Hitting `max_depth` sets `depth_exceeded` and
/// keeps the best estimate. Panels are visited left to right, so the sum is
/// accumulated in a fixed order.
template <class F>
auto adaptive_simpson(F&& f, const QuadratureSpec& spec) {
    using Value = std::decay_t<decltype(f(spec.lower))>;
    spec.validate();
    QuadratureResult<Value> result;
    detail::SimpsonRecursion<Value, std::remove_reference_t<F>> recursion(f, spec.max_depth, result);

    const int panels = spec.initial_panels;
    const double width = (spec.upper - spec.lower) / panels;
    const double panel_tol = spec.tolerance / panels;

    Value fa = f(spec.lower);
    result.evaluations = 1;
    Value total = detail::zero_like(fa);
    for (int p = 0; p < panels; ++p) {
        const double a = spec.lower + p * width;
        const double b = p + 1 == panels ? spec.upper : spec.lower + (p + 1) * width;
        Value fm = f(0.5 * (a + b));
        Value fb = f(b);
        result.evaluations += 2;
        const Value whole = detail::simpson(b - a, fa, fm, fb);
        recursion.run(a, b, fa, fm, fb, whole, panel_tol, 1, total);
        fa = std::move(fb);
    }
    result.value = std::move(total);
    return result;
}

/// Type-erased scalar overload.
QuadratureResult<double> adaptive_simpson(const std::function<double(double)>& f, const QuadratureSpec& spec);

}  // namespace qdev
