#include "qdev/quadrature.hpp"

namespace qdev {

void QuadratureSpec::validate() const {
    if (!(tolerance > 0.0)) throw InvalidArgument("quadrature tolerance must be > 0");
    if (max_depth < 1) throw InvalidArgument("quadrature depth must be >= 1");
    if (initial_panels < 1) throw InvalidArgument("quadrature needs at least one panel");
    if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper))
        throw InvalidArgument("quadrature endpoints must be finite with lower < upper");
}

QuadratureResult<double> adaptive_simpson(const std::function<double(double)>& f, const QuadratureSpec& spec) {
    return adaptive_simpson([&f](double x) { return f(x); }, spec);
}

}  // namespace qdev
