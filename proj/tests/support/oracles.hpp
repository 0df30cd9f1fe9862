#pragma once

// Independent reference computations. Nothing here calls into qdev.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

/// Dense Gaussian elimination with full row pivoting on a copy of A.
inline std::vector<cplx> dense_solve(std::vector<std::vector<cplx>> a, std::vector<cplx> b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
        if (std::abs(a[p][c]) == 0.0) throw std::runtime_error("dense_solve: singular");
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const cplx m = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= m * a[c][k];
            b[r] -= m * b[c];
        }
    }
    std::vector<cplx> x(n);
    for (std::size_t i = n; i-- > 0;) {
        cplx s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
        x[i] = s / a[i][i];
    }
    return x;
}

/// Composite Simpson rule with a fixed, even number of panels.
inline double composite_simpson(const std::function<double(double)>& f, double a, double b, long panels) {
    if (panels % 2) ++panels;
    const double h = (b - a) / static_cast<double>(panels);
    double odd = 0.0, even = 0.0;
    for (long i = 1; i < panels; ++i) (i % 2 ? odd : even) += f(a + static_cast<double>(i) * h);
    return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

/// Textbook transmission through a rectangular barrier of height v0 and width w
/// for a particle with hbar^2/2m = kinetic and energy e > 0 (same mass everywhere).
inline double square_barrier_transmission(double e, double v0, double w, double kinetic) {
    if (e == v0) {
        const double k2 = e / kinetic;
        return 1.0 / (1.0 + k2 * w * w / 4.0);
    }
    const double s2 = v0 * v0 / (4.0 * e * (e - v0));  // sign carries the sinh/sin switch
    if (e < v0) {
        const double kappa = std::sqrt((v0 - e) / kinetic);
        const double sh = std::sinh(kappa * w);
        return 1.0 / (1.0 - s2 * sh * sh);
    }
    const double q = std::sqrt((e - v0) / kinetic);
    const double sn = std::sin(q * w);
    return 1.0 / (1.0 + s2 * sn * sn);
}

/// Largest |y_i - (a + b x_i)| of the least-squares line through the points.
inline double line_fit_max_residual(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double a = (sy - b * sx) / n;
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(y[i] - (a + b * x[i])));
    return worst;
}

/// Slope of the least-squares line through (log x, log y).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Local maxima of a sampled curve, as indices.
inline std::vector<std::size_t> local_maxima(const std::vector<double>& y) {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < y.size(); ++i)
        if (y[i] > y[i - 1] && y[i] >= y[i + 1]) out.push_back(i);
    return out;
}

}  // namespace oracle
