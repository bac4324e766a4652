#pragma once

#include <cstddef>
#include <numbers>
#include <stdexcept>

namespace mhdlab {

/// Uniform periodic lattice on [0, 2pi)^3 with n points per axis.
///
/// Spectral storage follows the FFT layout: along each axis, storage index
/// i in [0, n) holds wavenumber k = i for i <= n/2 and k = i - n otherwise.
/// The Nyquist rows (|k| = n/2) are kept structurally zero everywhere, so
/// every retained mode has a conjugate partner and fields stay real-valued.
struct Grid {
    int n = 0;

    static Grid make(int n) {
        if (n < 8 || (n & (n - 1)) != 0)
            throw std::invalid_argument("Grid: n must be a power of two, n >= 8");
        return Grid{n};
    }

    std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }

    /// Storage index -> signed wavenumber along one axis.
    int freq(int idx) const { return idx <= n / 2 ? idx : idx - n; }

    /// Signed wavenumber -> storage index. Requires -n/2 <= k < n/2.
    int index_of(int k) const {
        if (k < -n / 2 || k >= n / 2)
            throw std::out_of_range("Grid::index_of: wavenumber outside lattice");
        return k >= 0 ? k : k + n;
    }

    bool nyquist(int idx) const { return freq(idx) == -n / 2 || freq(idx) == n / 2; }

    /// Largest |k| per axis kept by the 2/3-rule mask.
    int dealias_limit() const { return n / 3; }

    double spacing() const { return 2.0 * std::numbers::pi / n; }

    std::size_t flat(int i1, int i2, int i3) const {
        return (static_cast<std::size_t>(i1) * n + i2) * n + i3;
    }

    bool operator==(const Grid&) const = default;
};

}  // namespace mhdlab
