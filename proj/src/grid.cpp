#include "qdev/grid.hpp"

#include <cmath>

namespace qdev {

Grid::Grid(double length, int intervals, int ghosts) : intervals_(intervals), ghosts_(ghosts) {
    if (!(length > 0.0) || !std::isfinite(length)) throw InvalidArgument("grid length must be positive and finite");
    if (intervals < 1) throw InvalidArgument("grid needs at least one interval");
    if (ghosts < 1) throw InvalidArgument("grid needs at least one ghost node per side");
    spacing_ = length / intervals;
}

bool Grid::refines(const Grid& coarse) const noexcept {
    if (coarse.intervals_ == 0 || intervals_ % coarse.intervals_ != 0) return false;
    return std::abs(length() - coarse.length()) <= 1e-12 * length();
}

namespace {

template <class T>
std::vector<T> restrict_impl(const GridFunction<T>& fine, const Grid& coarse) {
    const Grid& g = fine.grid();
    if (!g.refines(coarse)) throw InvalidArgument("restriction requires nested grids");
    const int stride = g.intervals() / coarse.intervals();
    std::vector<T> out(static_cast<std::size_t>(coarse.intervals() + 1));
    for (int i = 0; i <= coarse.intervals(); ++i) out[static_cast<std::size_t>(i)] = fine[i * stride];
    return out;
}

}  // namespace

std::vector<double> restrict_to(const RealGridFunction& fine, const Grid& coarse) {
    return restrict_impl(fine, coarse);
}

std::vector<std::complex<double>> restrict_to(const ComplexGridFunction& fine, const Grid& coarse) {
    return restrict_impl(fine, coarse);
}

}  // namespace qdev
