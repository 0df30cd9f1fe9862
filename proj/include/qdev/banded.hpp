#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qdev/errors.hpp"

namespace qdev {

/// Square band matrix A with `lower` sub- and `upper` super-diagonals, plus a
/// right-hand side. Entries outside the band are zero and cannot be written.
template <class Scalar>
class BandedSystem {
public:
    BandedSystem(std::size_t dimension, std::size_t lower, std::size_t upper)
        : n_(dimension), kl_(lower), ku_(upper), width_(lower + upper + 1),
          band_(dimension * (lower + upper + 1)), rhs_(dimension) {
        if (dimension == 0) throw InvalidArgument("banded system dimension must be >= 1");
    }

    std::size_t dimension() const noexcept { return n_; }
    std::size_t lower() const noexcept { return kl_; }
    std::size_t upper() const noexcept { return ku_; }

    bool in_band(std::size_t i, std::size_t j) const noexcept {
        return i < n_ && j < n_ && j + kl_ >= i && j <= i + ku_;
    }

    Scalar operator()(std::size_t i, std::size_t j) const noexcept {
        return in_band(i, j) ? band_[i * width_ + (j + kl_ - i)] : Scalar{};
    }

    Scalar& at(std::size_t i, std::size_t j) {
        if (!in_band(i, j)) throw InvalidArgument("banded entry outside the band");
        return band_[i * width_ + (j + kl_ - i)];
    }

    std::span<Scalar> rhs() noexcept { return rhs_; }
    std::span<const Scalar> rhs() const noexcept { return rhs_; }

    /// Max absolute row sum.
    double norm_inf() const noexcept {
        double best = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            double row = 0.0;
            for (std::size_t k = 0; k < width_; ++k) row += std::abs(band_[i * width_ + k]);
            best = std::max(best, row);
        }
        return best;
    }

    std::vector<Scalar> multiply(std::span<const Scalar> x) const {
        std::vector<Scalar> y(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            const std::size_t j0 = i >= kl_ ? i - kl_ : 0;
            const std::size_t j1 = std::min(n_ - 1, i + ku_);
            Scalar acc{};
            for (std::size_t j = j0; j <= j1; ++j) acc += (*this)(i, j) * x[j];
            y[i] = acc;
        }
        return y;
    }

private:
    std::size_t n_, kl_, ku_, width_;
    std::vector<Scalar> band_;  // row-major, row i holds columns i-kl..i+ku
    std::vector<Scalar> rhs_;
};

using BandedComplexSystem = BandedSystem<std::complex<double>>;
using BandedRealSystem = BandedSystem<double>;

namespace detail_banded {
inline double reciprocal(double a) { return 1.0 / a; }
// pivots are far from over/underflow, so the textbook formula is safe
inline std::complex<double> reciprocal(std::complex<double> a) { return std::conj(a) / std::norm(a); }
}  // namespace detail_banded

/// Relative pivot threshold: |pivot| < kSingularPivot * ||A||_inf is singular.
inline constexpr double kSingularPivot = 1e-14;

/// Solves A x = b by LU with partial pivoting restricted to the band, followed
/// by one refinement step. Fill-in under pivoting widens the upper band by at
/// most `lower` diagonals.
///
/// Throws SingularSystem when a pivot falls below kSingularPivot * ||A||_inf.
template <class Scalar>
std::vector<Scalar> solve_banded(const BandedSystem<Scalar>& system) {
    using detail_banded::reciprocal;
    const std::size_t n = system.dimension();
    const std::size_t kl = system.lower();
    const std::size_t ku = system.upper();
    const std::size_t kv = kl + ku;     // upper bandwidth of U after pivoting
    const std::size_t ld = kl + kv + 1;  // LAPACK-style column-major band storage

    // ab[(kv + i - j) + j * ld] = A(i, j)
    std::vector<Scalar> ab(ld * n);
    auto A = [&](std::size_t i, std::size_t j) -> Scalar& { return ab[(kv + i - j) + j * ld]; };
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j0 = i >= kl ? i - kl : 0;
        const std::size_t j1 = std::min(n - 1, i + ku);
        for (std::size_t j = j0; j <= j1; ++j) A(i, j) = system(i, j);
    }

    const double threshold = kSingularPivot * system.norm_inf();
    std::vector<std::size_t> pivot(n);
    std::size_t ju = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t km = std::min(kl, n - 1 - j);
        // squared magnitudes: no hypot in the hot loop
        std::size_t jp = 0;
        double best = std::norm(A(j, j));
        for (std::size_t r = 1; r <= km; ++r) {
            const double mag = std::norm(A(j + r, j));
            if (mag > best) {
                best = mag;
                jp = r;
            }
        }
        pivot[j] = j + jp;
        if (!(best >= threshold * threshold) || best == 0.0) {
            throw SingularSystem("banded solve: pivot " + std::to_string(std::sqrt(best)) + " at column " +
                                 std::to_string(j) + " below threshold");
        }
        ju = std::max(ju, std::min(j + ku + jp, n - 1));
        if (jp != 0) {
            for (std::size_t c = j; c <= ju; ++c) std::swap(A(j, c), A(j + jp, c));
        }
        const Scalar inv = reciprocal(A(j, j));
        for (std::size_t r = 1; r <= km; ++r) A(j + r, j) *= inv;
        for (std::size_t c = j + 1; c <= ju; ++c) {
            const Scalar u = A(j, c);
            if (u == Scalar{}) continue;
            for (std::size_t r = 1; r <= km; ++r) A(j + r, c) -= A(j + r, j) * u;
        }
    }

    auto substitute = [&](std::vector<Scalar>& x) {
        for (std::size_t j = 0; j < n; ++j) {
            if (pivot[j] != j) std::swap(x[j], x[pivot[j]]);
            const std::size_t km = std::min(kl, n - 1 - j);
            for (std::size_t r = 1; r <= km; ++r) x[j + r] -= A(j + r, j) * x[j];
        }
        for (std::size_t jj = n; jj-- > 0;) {
            x[jj] *= reciprocal(A(jj, jj));
            const std::size_t i0 = jj >= kv ? jj - kv : 0;
            for (std::size_t i = i0; i < jj; ++i) x[i] -= A(i, jj) * x[jj];
        }
    };

    std::vector<Scalar> x(system.rhs().begin(), system.rhs().end());
    substitute(x);
    // one step of iterative refinement absorbs pivot growth on indefinite systems
    std::vector<Scalar> r = system.multiply(x);
    for (std::size_t i = 0; i < n; ++i) r[i] = system.rhs()[i] - r[i];
    substitute(r);
    for (std::size_t i = 0; i < n; ++i) x[i] += r[i];
    return x;
}

}  // namespace qdev
