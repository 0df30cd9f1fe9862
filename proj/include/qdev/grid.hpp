#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qdev/errors.hpp"

namespace qdev {

/// Uniform mesh x_i = i * dx on [0, L] with `ghosts` extra nodes on each side.
///
/// Node indices run from -ghosts to intervals + ghosts. The length is stored
/// implicitly as intervals * spacing so that x(intervals()) reproduces it.
class Grid {
public:
    Grid() = default;
    Grid(double length, int intervals, int ghosts = 1);

    int intervals() const noexcept { return intervals_; }
    int ghosts() const noexcept { return ghosts_; }
    double spacing() const noexcept { return spacing_; }
    double length() const noexcept { return spacing_ * intervals_; }

    int first() const noexcept { return -ghosts_; }
    int last() const noexcept { return intervals_ + ghosts_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(intervals_ + 1 + 2 * ghosts_); }

    double x(int i) const noexcept { return i * spacing_; }

    /// Compact-scheme parameter 12 / dx^2.
    double lambda() const noexcept { return 12.0 / (spacing_ * spacing_); }

    /// True when every node of `coarse` is a node of this grid.
    bool refines(const Grid& coarse) const noexcept;

    bool operator==(const Grid&) const = default;

private:
    int intervals_ = 1;
    int ghosts_ = 1;
    double spacing_ = 1.0;
};

/// Nodal values on a grid, including ghost slots, indexed by node number.
template <class T>
class GridFunction {
public:
    GridFunction() = default;
    explicit GridFunction(const Grid& grid, T fill = T{}) : grid_(grid), values_(grid.size(), fill) {}

    const Grid& grid() const noexcept { return grid_; }

    T& operator[](int i) { return values_[static_cast<std::size_t>(i + grid_.ghosts())]; }
    const T& operator[](int i) const { return values_[static_cast<std::size_t>(i + grid_.ghosts())]; }

    std::size_t size() const noexcept { return values_.size(); }

    /// All values, ghosts included, starting at node -ghosts.
    std::span<T> values() noexcept { return values_; }
    std::span<const T> values() const noexcept { return values_; }

    /// Values at the physical nodes 0..N_x.
    std::span<const T> physical() const noexcept {
        return std::span<const T>(values_).subspan(static_cast<std::size_t>(grid_.ghosts()),
                                                   static_cast<std::size_t>(grid_.intervals() + 1));
    }
    std::span<T> physical() noexcept {
        return std::span<T>(values_).subspan(static_cast<std::size_t>(grid_.ghosts()),
                                             static_cast<std::size_t>(grid_.intervals() + 1));
    }

private:
    Grid grid_;
    std::vector<T> values_;
};

using RealGridFunction = GridFunction<double>;
using ComplexGridFunction = GridFunction<std::complex<double>>;

/// Restriction of `fine` onto the nodes 0..N_x of `coarse`. Grids must nest.
std::vector<double> restrict_to(const RealGridFunction& fine, const Grid& coarse);
std::vector<std::complex<double>> restrict_to(const ComplexGridFunction& fine, const Grid& coarse);

}  // namespace qdev
