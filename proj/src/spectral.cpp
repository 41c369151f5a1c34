#include "torusdamp/spectral.hpp"

#include <cstring>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "torusdamp/errors.hpp"

namespace torusdamp {

namespace {
// the FFTW planner is not re-entrant
std::mutex planner_mutex;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void validate_grid(const Grid& grid) {
    validate_lattice(grid.lattice);
    if (!is_power_of_two(grid.nx) || grid.nx < 16 || !is_power_of_two(grid.ny) || grid.ny < 16)
        throw InvalidArgument("grid sizes must be powers of two >= 16");
}

struct Spectral::Plans {
    double* real = nullptr;
    fftw_complex* spec = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    std::vector<double> symbol;  // -|xi|^2 / (nx*ny) on the half spectrum
};

Spectral::Spectral(const Grid& grid) : grid_(grid), plans_(std::make_unique<Plans>()) {
    validate_grid(grid);
    const std::size_t nh = static_cast<std::size_t>(grid.ny) * half_width();
    plans_->real = fftw_alloc_real(grid.size());
    plans_->spec = fftw_alloc_complex(nh);
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        plans_->fwd = fftw_plan_dft_r2c_2d(grid.ny, grid.nx, plans_->real, plans_->spec, FFTW_ESTIMATE);
        plans_->bwd = fftw_plan_dft_c2r_2d(grid.ny, grid.nx, plans_->spec, plans_->real, FFTW_ESTIMATE);
    }
    plans_->symbol.resize(nh);
    const double n = static_cast<double>(grid.size());
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < half_width(); ++i) plans_->symbol[static_cast<std::size_t>(j) * half_width() + i] = -xi_squared(i, j) / n;
}

Spectral::~Spectral() {
    std::lock_guard<std::mutex> lock(planner_mutex);
    fftw_destroy_plan(plans_->fwd);
    fftw_destroy_plan(plans_->bwd);
    fftw_free(plans_->real);
    fftw_free(plans_->spec);
}

double Spectral::xi_squared(int i, int j) const {
    const double kx = 2.0 * std::numbers::pi * k1_of(i) / grid_.lattice.A;
    const double ky = 2.0 * std::numbers::pi * k2_of(j) / grid_.lattice.B;
    return kx * kx + ky * ky;
}

void Spectral::forward(const Field& in, ComplexField& half_spectrum) {
    std::memcpy(plans_->real, in.data(), grid_.size() * sizeof(double));
    fftw_execute(plans_->fwd);
    const std::size_t nh = static_cast<std::size_t>(grid_.ny) * half_width();
    half_spectrum.resize(nh);
    for (std::size_t k = 0; k < nh; ++k) half_spectrum[k] = {plans_->spec[k][0], plans_->spec[k][1]};
}

void Spectral::inverse(const ComplexField& half_spectrum, Field& out) {
    const std::size_t nh = static_cast<std::size_t>(grid_.ny) * half_width();
    const double n = static_cast<double>(grid_.size());
    for (std::size_t k = 0; k < nh; ++k) {
        plans_->spec[k][0] = half_spectrum[k].real() / n;
        plans_->spec[k][1] = half_spectrum[k].imag() / n;
    }
    fftw_execute(plans_->bwd);
    out.assign(plans_->real, plans_->real + grid_.size());
}

void Spectral::laplacian(const Field& in, Field& out) {
    std::memcpy(plans_->real, in.data(), grid_.size() * sizeof(double));
    fftw_execute(plans_->fwd);
    const std::size_t nh = plans_->symbol.size();
    for (std::size_t k = 0; k < nh; ++k) {
        plans_->spec[k][0] *= plans_->symbol[k];
        plans_->spec[k][1] *= plans_->symbol[k];
    }
    fftw_execute(plans_->bwd);
    out.assign(plans_->real, plans_->real + grid_.size());
}

void Spectral::laplacian(const ComplexField& in, ComplexField& out) {
    Field re(grid_.size()), im(grid_.size()), lre, lim;
    for (std::size_t k = 0; k < in.size(); ++k) {
        re[k] = in[k].real();
        im[k] = in[k].imag();
    }
    laplacian(re, lre);
    laplacian(im, lim);
    out.resize(in.size());
    for (std::size_t k = 0; k < in.size(); ++k) out[k] = {lre[k], lim[k]};
}

double Spectral::gradient_energy(const Field& u) {
    std::memcpy(plans_->real, u.data(), grid_.size() * sizeof(double));
    fftw_execute(plans_->fwd);
    const int hw = half_width();
    double s = 0.0;
    for (int j = 0; j < grid_.ny; ++j)
        for (int i = 0; i < hw; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * hw + i;
            const double w = (i == 0 || 2 * i == grid_.nx) ? 1.0 : 2.0;
            const double mag2 = plans_->spec[k][0] * plans_->spec[k][0] + plans_->spec[k][1] * plans_->spec[k][1];
            s += w * xi_squared(i, j) * mag2;
        }
    return s * grid_.cell_area() / static_cast<double>(grid_.size());
}

}  // namespace torusdamp
