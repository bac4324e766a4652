#include "mhdlab/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace mhdlab {
namespace {

// FFTW plans are cached per (n, sign) and reused with the new-array
// interface. FFTW_ESTIMATE keeps planning deterministic and cheap;
// FFTW_UNALIGNED lets plans run on any std::vector buffer.
class PlanCache {
  public:
    fftw_plan get(int n, int sign) {
        std::scoped_lock lock(mu_);
        auto key = std::pair{n, sign};
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<cplx> scratch(static_cast<std::size_t>(n) * n * n);
        fftw_plan p = fftw_plan_dft_3d(
            n, n, n, reinterpret_cast<fftw_complex*>(scratch.data()),
            reinterpret_cast<fftw_complex*>(scratch.data()), sign,
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) throw std::runtime_error("fftw: plan creation failed");
        plans_.emplace(key, p);
        return p;
    }

  private:
    std::mutex mu_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void execute(int n, int sign, std::vector<cplx>& buf) {
    fftw_execute_dft(cache().get(n, sign),
                     reinterpret_cast<fftw_complex*>(buf.data()),
                     reinterpret_cast<fftw_complex*>(buf.data()));
}

std::vector<cplx> inverse_padded(const SpectralField& f, int factor) {
    if (factor < 1) throw std::invalid_argument("oversample factor must be >= 1");
    const int n = f.grid.n;
    if (factor == 1) {
        std::vector<cplx> buf = f.c;
        execute(n, FFTW_BACKWARD, buf);
        return buf;
    }
    Grid fine{n * factor};
    std::vector<cplx> buf(fine.size());
    for (int i1 = 0; i1 < n; ++i1) {
        if (f.grid.nyquist(i1)) continue;
        const int k1 = f.grid.freq(i1);
        for (int i2 = 0; i2 < n; ++i2) {
            if (f.grid.nyquist(i2)) continue;
            const int k2 = f.grid.freq(i2);
            for (int i3 = 0; i3 < n; ++i3) {
                if (f.grid.nyquist(i3)) continue;
                const int k3 = f.grid.freq(i3);
                buf[fine.flat(fine.index_of(k1), fine.index_of(k2), fine.index_of(k3))] =
                    f.c[f.grid.flat(i1, i2, i3)];
            }
        }
    }
    execute(fine.n, FFTW_BACKWARD, buf);
    return buf;
}

PhysicalField realize(Grid g, const std::vector<cplx>& buf, const char* who) {
    PhysicalField out(g);
    double max_im = 0.0, max_re = 0.0;
    for (std::size_t i = 0; i < buf.size(); ++i) {
        out.v[i] = buf[i].real();
        max_im = std::max(max_im, std::abs(buf[i].imag()));
        max_re = std::max(max_re, std::abs(buf[i].real()));
    }
    if (max_im > 1e-8 * (1.0 + max_re))
        throw std::runtime_error(std::string(who) + ": field is not conjugate-symmetric");
    return out;
}

}  // namespace

SpectralField to_spectral(const PhysicalField& f) {
    const int n = f.grid.n;
    std::vector<cplx> buf(f.grid.size());
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = f.v[i];
    execute(n, FFTW_FORWARD, buf);
    SpectralField out(f.grid);
    const double scale = 1.0 / static_cast<double>(f.grid.size());
    for (std::size_t i = 0; i < buf.size(); ++i) out.c[i] = scale * buf[i];
    return out;
}

PhysicalField to_physical(const SpectralField& f) {
    return realize(f.grid, inverse_padded(f, 1), "to_physical");
}

PhysicalField to_physical_oversampled(const SpectralField& f, int factor) {
    if (factor == 1) return to_physical(f);
    return realize(Grid{f.grid.n * factor}, inverse_padded(f, factor),
                   "to_physical_oversampled");
}

std::vector<cplx> to_physical_complex(const SpectralField& f) {
    return inverse_padded(f, 1);
}

std::vector<cplx> to_physical_complex_oversampled(const SpectralField& f, int factor) {
    return inverse_padded(f, factor);
}

double l2_norm(const SpectralField& f) {
    double s = 0.0;
    for (const auto& v : f.c) s += std::norm(v);
    return std::sqrt(s);
}

double l2_norm(const VectorField& f) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (const auto& v : f[i].c) s += std::norm(v);
    return std::sqrt(s);
}

double max_coefficient(const SpectralField& f) {
    double m = 0.0;
    for (const auto& v : f.c) m = std::max(m, std::abs(v));
    return m;
}

double max_coefficient(const VectorField& f) {
    double m = 0.0;
    for (int i = 0; i < 3; ++i) m = std::max(m, max_coefficient(f[i]));
    return m;
}

}  // namespace mhdlab
