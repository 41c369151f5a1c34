#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "torusdamp/torus_geometry.hpp"

namespace torusdamp {

using Mode = std::array<int, 2>;

struct FrequencyShell {
    double h = 0.0;
    double w = 0.0;
    std::vector<Mode> modes;
};

struct ObservabilityReport {
    double h = 0.0;
    double w = 0.0;
    FrequencyShell shell;
    double mu_min = 0.0;
    Eigen::VectorXcd quasimode;
};

struct SpectrumReport {
    int K = 0;
    std::vector<Mode> modes;
    std::vector<std::complex<double>> eigenvalues;
    std::vector<std::complex<double>> excluded;
    double abscissa = 0.0;
    // |Delta w + lambda^2 w - ... | / |w| per eigenpair, in eigenvalue order
    std::vector<double> stationary_residuals;
    // displacement block of the eigenvector attaining the abscissa
    Eigen::VectorXcd slowest_mode;
};

// (1/AB) * integral over the polygon of exp(-i xi_k . x)
std::complex<double> polygon_fourier_coefficient(const Polygon& poly, Mode k, const TorusLattice& lattice);
// Fourier coefficient of the damping function a
std::complex<double> damping_fourier(const DampingBoard& board, Mode k);

FrequencyShell shell(const TorusLattice& lattice, double h, double w);

// Hermitian matrix M[k, k'] = a_hat(k - k') on a list of modes.
Eigen::MatrixXcd damping_matrix(const DampingBoard& board, const std::vector<Mode>& modes);

ObservabilityReport min_observability(const DampingBoard& board, double h, double w = 0.5);

// Mass fraction of the synthesized quasimode inside strips |offset distance| < width/2
// around the closed geodesic (dir, offset).
std::vector<std::pair<double, double>> strip_mass_profile(const ObservabilityReport& report, const TorusLattice& lattice,
                                                          const ClosedDirection& dir, double offset,
                                                          const std::vector<double>& widths);

SpectrumReport generator_spectrum(const DampingBoard& board, double mass, int K);

// Hermitian eigen-decomposition (ascending), and general complex eigenproblem with right vectors.
void hermitian_eigen(const Eigen::MatrixXcd& m, Eigen::VectorXd& values, Eigen::MatrixXcd& vectors);
void general_eigen(Eigen::MatrixXcd m, Eigen::VectorXcd& values, Eigen::MatrixXcd& vectors);

}  // namespace torusdamp
