#include "qdev/sbp.hpp"

#include <cmath>

namespace qdev {

namespace {

using cplx = std::complex<double>;

struct SbpTerms {
    cplx lhs;
    cplx rhs;
    double scale;
};

SbpTerms sbp_terms(const ComplexGridFunction& u, const ComplexGridFunction& v) {
    const Grid& g = u.grid();
    if (!(g == v.grid())) throw InvalidArgument("summation by parts needs both functions on one grid");
    const int n = g.intervals();
    const double dx = g.spacing();

    SbpTerms t{};
    for (int i = 0; i <= n; ++i) {
        const cplx d2u = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (dx * dx);
        const cplx term = -dx * d2u * v[i];
        t.lhs += term;
        t.scale += std::abs(term);
    }
    for (int i = 0; i <= n + 1; ++i) {
        const cplx du = (u[i] - u[i - 1]) / dx;
        const cplx dv = (v[i] - v[i - 1]) / dx;
        const cplx term = dx * du * dv;
        t.rhs += term;
        t.scale += std::abs(term);
    }
    const cplx left = (u[0] - u[-1]) / dx * v[-1];
    const cplx right = (u[n + 1] - u[n]) / dx * v[n + 1];
    t.rhs += left - right;
    t.scale += std::abs(left) + std::abs(right);
    return t;
}

}  // namespace

double sbp_identity_residual(const ComplexGridFunction& u, const ComplexGridFunction& v) {
    const SbpTerms t = sbp_terms(u, v);
    return std::abs(t.lhs - t.rhs);
}

double sbp_identity_scale(const ComplexGridFunction& u, const ComplexGridFunction& v) {
    return sbp_terms(u, v).scale;
}

}  // namespace qdev
