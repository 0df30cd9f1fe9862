#pragma once

// Seeded generators for the property tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <random>
#include <vector>

namespace gen {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
    bool coin() { return integer(0, 1) == 1; }
    std::complex<double> complex(double scale = 1.0) { return {uniform(-scale, scale), uniform(-scale, scale)}; }

    /// Log-uniform magnitude in [lo, hi].
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

    /// A double drawn from raw bits (finite values only).
    double any_double() {
        for (;;) {
            const std::uint64_t bits = engine_();
            double v;
            static_assert(sizeof v == sizeof bits);
            std::memcpy(&v, &bits, sizeof v);
            if (std::isfinite(v)) return v;
        }
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Random complex tridiagonal system stored densely, made diagonally heavy
/// when `dominant` so that it is comfortably nonsingular.
struct DenseTridiagonal {
    std::vector<std::vector<std::complex<double>>> a;
    std::vector<std::complex<double>> b;
};

inline DenseTridiagonal tridiagonal(Rng& rng, std::size_t n, bool dominant) {
    DenseTridiagonal t;
    t.a.assign(n, std::vector<std::complex<double>>(n));
    t.b.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) t.a[i][i - 1] = rng.complex();
        if (i + 1 < n) t.a[i][i + 1] = rng.complex();
        t.a[i][i] = rng.complex() + (dominant ? std::complex<double>(3.0, 0.0) : 0.0);
        t.b[i] = rng.complex(10.0);
    }
    return t;
}

/// Random piecewise-constant profile: `pieces` regions tiling [0, length].
struct Piecewise {
    std::vector<double> cuts;    // pieces + 1 values, 0 .. length
    std::vector<double> values;  // pieces values
};

inline Piecewise piecewise(Rng& rng, double length, int pieces, double lo, double hi) {
    Piecewise p;
    p.cuts.push_back(0.0);
    std::vector<double> inner;
    for (int i = 1; i < pieces; ++i) inner.push_back(rng.uniform(0.05, 0.95) * length);
    std::sort(inner.begin(), inner.end());
    for (double c : inner) p.cuts.push_back(c);
    p.cuts.push_back(length);
    for (int i = 0; i < pieces; ++i) p.values.push_back(rng.uniform(lo, hi));
    return p;
}

}  // namespace gen
