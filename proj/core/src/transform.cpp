#include "aqg/transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace aqg {
namespace {

// FFTW planning is not thread-safe; execution on fresh arrays is.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(const GridSpec& grid, int sign) {
        std::lock_guard lock(mutex_);
        const auto key = std::make_tuple(grid.n1, grid.n2, sign);
        if (auto it = plans_.find(key); it != plans_.end()) {
            return it->second;
        }
        auto* in = fftw_alloc_complex(grid.size());
        auto* out = fftw_alloc_complex(grid.size());
        // ESTIMATE keeps the algorithm choice, and so the rounding, reproducible.
        fftw_plan plan = fftw_plan_dft_2d(grid.n1, grid.n2, in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(in);
        fftw_free(out);
        if (plan == nullptr) {
            throw std::runtime_error("FFTW planning failed for grid " + to_string(grid));
        }
        plans_.emplace(key, plan);
        return plan;
    }

    PlanCache(const PlanCache&) = delete;
    PlanCache& operator=(const PlanCache&) = delete;

  private:
    PlanCache() = default;
    ~PlanCache() {
        for (auto& [key, plan] : plans_) {
            fftw_destroy_plan(plan);
        }
    }

    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

void execute(const GridSpec& grid, int sign, const Complex* in, Complex* out) {
    fftw_plan plan = PlanCache::instance().get(grid, sign);
    // std::complex<double> is layout-compatible with fftw_complex.
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

std::vector<double> to_physical(const SpectralField& f) {
    const auto& grid = f.grid();
    std::vector<Complex> out(grid.size());
    execute(grid, FFTW_BACKWARD, f.coeffs().data(), out.data());
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = out[i].real();
    }
    return values;
}

SpectralField to_spectral(const GridSpec& grid, std::span<const double> values) {
    if (values.size() != grid.size()) {
        throw std::invalid_argument("physical data size does not match grid " + to_string(grid));
    }
    std::vector<Complex> in(values.begin(), values.end());
    std::vector<Complex> out(grid.size());
    execute(grid, FFTW_FORWARD, in.data(), out.data());
    const double scale = 1.0 / static_cast<double>(grid.size());
    for (auto& c : out) {
        c *= scale;
    }
    SpectralField f(grid, std::move(out));
    f.make_hermitian();
    return f;
}

std::pair<std::vector<double>, std::vector<double>> to_physical_pair(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid() == b.grid())) {
        throw std::invalid_argument("to_physical_pair: grid mismatch");
    }
    const auto& grid = a.grid();
    std::vector<Complex> in(grid.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        in[i] = a[i] + Complex(0.0, 1.0) * b[i];
    }
    std::vector<Complex> out(grid.size());
    execute(grid, FFTW_BACKWARD, in.data(), out.data());
    std::vector<double> va(grid.size());
    std::vector<double> vb(grid.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        va[i] = out[i].real();
        vb[i] = out[i].imag();
    }
    return {std::move(va), std::move(vb)};
}

std::pair<SpectralField, SpectralField> to_spectral_pair(const GridSpec& grid, std::span<const double> a,
                                                         std::span<const double> b) {
    if (a.size() != grid.size() || b.size() != grid.size()) {
        throw std::invalid_argument("physical data size does not match grid " + to_string(grid));
    }
    std::vector<Complex> in(grid.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        in[i] = Complex(a[i], b[i]);
    }
    std::vector<Complex> z(grid.size());
    execute(grid, FFTW_FORWARD, in.data(), z.data());
    const double scale = 0.5 / static_cast<double>(grid.size());
    SpectralField fa(grid);
    SpectralField fb(grid);
    for (std::size_t i = 0; i < z.size(); ++i) {
        const Complex zc = std::conj(z[grid.conjugate_index(i)]);
        fa[i] = scale * (z[i] + zc);
        // (z - zc) / (2i)
        const Complex d = z[i] - zc;
        fb[i] = scale * Complex(d.imag(), -d.real());
    }
    return {std::move(fa), std::move(fb)};
}

SpectralField resample(const SpectralField& f, const GridSpec& target) {
    SpectralField out(target);
    const auto& src = f.grid();
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto k = src.wavenumber_at(i);
        if (2 * k.k1 == src.n1 || 2 * k.k2 == src.n2) {
            continue;
        }
        if (target.contains(k) && target.contains(Wavenumber{-k.k1, -k.k2})) {
            out[target.index_of(k)] = f[i];
        }
    }
    return out;
}

}  // namespace aqg
