#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qdev/banded.hpp"
#include "qdev/grid.hpp"
#include "qdev/quadrature.hpp"
#include "qdev/sbp.hpp"
#include "qdev/statistics.hpp"
#include "qdev/units.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace qdev;
using cplx = std::complex<double>;

namespace {

BandedComplexSystem to_banded(const gen::DenseTridiagonal& t) {
    const std::size_t n = t.b.size();
    BandedComplexSystem sys(n, 1, 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = (i ? i - 1 : 0); j <= std::min(n - 1, i + 1); ++j) sys.at(i, j) = t.a[i][j];
        sys.rhs()[i] = t.b[i];
    }
    return sys;
}

double max_rel_diff(const std::vector<cplx>& x, const std::vector<cplx>& y) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num = std::max(num, std::abs(x[i] - y[i]));
        den = std::max(den, std::abs(y[i]));
    }
    return num / den;
}

}  // namespace

TEST_CASE("grid coordinates and ghost layout") {
    const Grid g(30.0, 100, 2);
    CHECK(g.size() == 105u);
    CHECK(g.first() == -2);
    CHECK(g.last() == 102);
    CHECK(g.x(-2) == doctest::Approx(-0.6));
    CHECK(std::abs(g.x(100) - 30.0) <= 100 * std::numeric_limits<double>::epsilon() * 30.0);
    CHECK(g.lambda() == doctest::Approx(12.0 / (0.3 * 0.3)));

    RealGridFunction f(g, 1.5);
    CHECK(f.size() == g.size());
    CHECK(f.physical().size() == 101u);
    f[-2] = 7.0;
    CHECK(f.values()[0] == 7.0);
}

TEST_CASE("grid end coordinate reproduces the length for many sizes") {
    for (int n : {3, 7, 50, 99, 100, 270, 1600}) {
        for (double length : {1.0, 10.0, 30.0, 135.0}) {
            const Grid g(length, n);
            CHECK(std::abs(g.x(n) - length) <= n * std::numeric_limits<double>::epsilon() * length);
        }
    }
}

TEST_CASE("grid construction rejects bad input") {
    CHECK_THROWS_AS(Grid(0.0, 10), InvalidArgument);
    CHECK_THROWS_AS(Grid(1.0, 0), InvalidArgument);
    CHECK_THROWS_AS(Grid(1.0, 4, 0), InvalidArgument);
}

TEST_CASE("restriction onto nested grids") {
    const Grid fine(10.0, 8), coarse(10.0, 2), other(10.0, 3);
    RealGridFunction f(fine);
    for (int i = 0; i <= 8; ++i) f[i] = i;
    const auto r = restrict_to(f, coarse);
    CHECK(r == std::vector<double>{0.0, 4.0, 8.0});
    CHECK_THROWS_AS(restrict_to(f, other), InvalidArgument);
    CHECK(fine.refines(coarse));
    CHECK_FALSE(fine.refines(other));
}

TEST_CASE("banded solve of the identity returns the right-hand side") {
    BandedComplexSystem sys(5, 1, 1);
    for (std::size_t i = 0; i < 5; ++i) {
        sys.at(i, i) = 1.0;
        sys.rhs()[i] = cplx(static_cast<double>(i), -2.0 * static_cast<double>(i));
    }
    const auto x = solve_banded(sys);
    for (std::size_t i = 0; i < 5; ++i) CHECK(x[i] == sys.rhs()[i]);
}

TEST_CASE("banded solve matches dense elimination on a small random system") {
    gen::Rng rng(12);
    const auto t = gen::tridiagonal(rng, 12, true);
    const auto x = solve_banded(to_banded(t));
    CHECK(max_rel_diff(x, oracle::dense_solve(t.a, t.b)) <= 1e-12);
}

TEST_CASE("banded solve residual bound") {
    gen::Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const auto t = gen::tridiagonal(rng, static_cast<std::size_t>(rng.integer(1, 40)), false);
        const auto sys = to_banded(t);
        std::vector<cplx> x;
        try {
            x = solve_banded(sys);
        } catch (const SingularSystem&) {
            continue;
        }
        const auto ax = sys.multiply(x);
        double res = 0.0, xn = 0.0, bn = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            res = std::max(res, std::abs(ax[i] - sys.rhs()[i]));
            xn = std::max(xn, std::abs(x[i]));
            bn = std::max(bn, std::abs(sys.rhs()[i]));
        }
        CHECK(res <= 1e-12 * (sys.norm_inf() * xn + bn));
    }
}

TEST_CASE("banded solve needs pivoting and handles wider bands") {
    // zero leading diagonal entry: only solvable with a row swap
    BandedComplexSystem sys(3, 1, 1);
    sys.at(0, 0) = 0.0;
    sys.at(0, 1) = 1.0;
    sys.at(1, 0) = 2.0;
    sys.at(1, 1) = 1.0;
    sys.at(1, 2) = 1.0;
    sys.at(2, 1) = 1.0;
    sys.at(2, 2) = 3.0;
    sys.rhs()[0] = 1.0;
    sys.rhs()[1] = 4.0;
    sys.rhs()[2] = 7.0;
    const auto x = solve_banded(sys);
    CHECK(std::abs(x[0] - 0.5) < 1e-14);
    CHECK(std::abs(x[1] - 1.0) < 1e-14);
    CHECK(std::abs(x[2] - 2.0) < 1e-14);

    BandedRealSystem wide(6, 2, 2);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = (i >= 2 ? i - 2 : 0); j <= std::min<std::size_t>(5, i + 2); ++j)
            wide.at(i, j) = i == j ? 5.0 : 1.0 / (1.0 + static_cast<double>(i + j));
    for (std::size_t i = 0; i < 6; ++i) wide.rhs()[i] = 1.0;
    const auto y = solve_banded(wide);
    const auto ay = wide.multiply(y);
    for (std::size_t i = 0; i < 6; ++i) CHECK(ay[i] == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("banded solve reports singular systems") {
    BandedComplexSystem sys(3, 1, 1);
    sys.at(0, 0) = 1.0;
    sys.at(0, 1) = 1.0;
    sys.at(1, 0) = 1.0;
    sys.at(1, 1) = 1.0;
    sys.at(2, 2) = 1.0;
    CHECK_THROWS_AS(solve_banded(sys), SingularSystem);
    CHECK_THROWS_AS(BandedComplexSystem(0, 1, 1), InvalidArgument);
    CHECK_THROWS_AS(sys.at(0, 2), InvalidArgument);
    CHECK(sys(0, 2) == cplx{});
}

TEST_CASE("adaptive Simpson on polynomials and sin") {
    const auto sq = adaptive_simpson([](double x) { return x * x; }, QuadratureSpec{0.0, 1.0});
    CHECK(std::abs(sq.value - 1.0 / 3.0) <= 1e-15);
    CHECK_FALSE(sq.depth_exceeded);

    const auto s = adaptive_simpson([](double x) { return std::sin(x); }, QuadratureSpec{0.0, std::numbers::pi, 1e-10});
    CHECK(std::abs(s.value - 2.0) <= 1e-10);

    const std::function<double(double)> f = [](double x) { return std::exp(x); };
    const auto e = adaptive_simpson(f, QuadratureSpec{0.0, 1.0, 1e-12});
    CHECK(std::abs(e.value - (std::exp(1.0) - 1.0)) <= 1e-12);
}

TEST_CASE("adaptive Simpson flags the depth limit and keeps an estimate") {
    QuadratureSpec spec{0.0, 1.0, 1e-14, 3};
    const auto r = adaptive_simpson([](double x) { return std::sqrt(x); }, spec);
    CHECK(r.depth_exceeded);
    CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(1e-2));
}

TEST_CASE("adaptive Simpson with vector integrands and initial panels") {
    QuadratureSpec spec{0.0, 2.0, 1e-11, 50, 4};
    const auto r = adaptive_simpson([](double x) { return std::vector<double>{1.0, x, std::cos(x)}; }, spec);
    CHECK(std::abs(r.value[0] - 2.0) <= 1e-14);
    CHECK(std::abs(r.value[1] - 2.0) <= 1e-14);
    CHECK(std::abs(r.value[2] - std::sin(2.0)) <= 1e-11);
}

TEST_CASE("quadrature spec validation") {
    CHECK_THROWS_AS(QuadratureSpec({0.0, 1.0, 0.0}).validate(), InvalidArgument);
    CHECK_THROWS_AS(QuadratureSpec({1.0, 1.0}).validate(), InvalidArgument);
    CHECK_THROWS_AS(QuadratureSpec({0.0, 1.0, 1e-10, 0}).validate(), InvalidArgument);
    CHECK_THROWS_AS(QuadratureSpec({0.0, INFINITY}).validate(), InvalidArgument);
    CHECK_THROWS_AS(QuadratureSpec({0.0, 1.0, 1e-10, 50, 0}).validate(), InvalidArgument);
}

TEST_CASE("Fermi integral in k matches a dense composite Simpson rule") {
    const double kinetic = units::kinetic_prefactor(0.25);
    const ThermalContext th = ThermalContext::make(0.318, 300.0, kinetic);
    const double kmax = th.k_max();
    auto f = [&](double k) { return fermi_weight(kinetic * k * k, th.fermi_level, th); };
    const double reference = oracle::composite_simpson(f, 0.0, kmax, 1'000'000);
    const auto r = adaptive_simpson(f, QuadratureSpec{0.0, kmax, 1e-12});
    CHECK(std::abs(r.value - reference) <= 1e-8 * std::abs(reference));
}

TEST_CASE("summation-by-parts identity: constants and a linear function") {
    const Grid g(1.0, 4);
    ComplexGridFunction one(g, 1.0);
    CHECK(sbp_identity_residual(one, one) == 0.0);

    ComplexGridFunction u(g), v(g, 1.0);
    for (int j = g.first(); j <= g.last(); ++j) u[j] = static_cast<double>(j);
    CHECK(sbp_identity_residual(u, v) <= 1e-13);
}

TEST_CASE("summation-by-parts identity on random pairs") {
    gen::Rng rng(2024);
    const Grid g(3.0, 16);
    for (int trial = 0; trial < 100; ++trial) {
        ComplexGridFunction u(g), v(g);
        for (int j = g.first(); j <= g.last(); ++j) {
            u[j] = rng.complex(5.0);
            v[j] = rng.complex(5.0);
        }
        CHECK(sbp_identity_residual(u, v) <= 1e-12 * sbp_identity_scale(u, v));
    }
}
