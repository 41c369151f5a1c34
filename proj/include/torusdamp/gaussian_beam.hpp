#pragma once

#include <complex>
#include <utility>

#include "torusdamp/spectral.hpp"
#include "torusdamp/torus_geometry.hpp"

namespace torusdamp {

struct BeamSpec {
    Geodesic geodesic;
    double h = 0.05;
    double cutoff_radius = 0.25;
    int order = 1;
};

struct BeamField {
    ComplexField values;
    double t = 0.0;
};

void validate_beam(const BeamSpec& spec);

// g(t) = 1 / (1 - 2 i t)
std::complex<double> beam_g(double t);
// t - x1 + i((t - x1)^2 + g(t) xperp^2)
std::complex<double> phase(double t, double x1, double xperp);

// Largest admissible grid spacing for a beam of parameter h.
double beam_max_spacing(double h);
// Smallest power-of-two grid on `lattice` resolving a beam of parameter h.
Grid beam_grid(double h, const TorusLattice& lattice);
void check_beam_resolution(const BeamSpec& spec, const Grid& grid);

BeamField beam_field(const BeamSpec& spec, double t, const Grid& grid);
// Analytic time derivative of the beam field.
ComplexField beam_time_derivative(const BeamSpec& spec, double t, const Grid& grid);

std::pair<Field, Field> beam_initial_data(const BeamSpec& spec, const Grid& grid);
double beam_energy(const BeamSpec& spec, const Grid& grid);
// L2 norm of (d_t^2 - Laplacian) Re v at time t.
double beam_residual(const BeamSpec& spec, const Grid& grid, double t);
double damping_observation(const BeamSpec& spec, const DampingBoard& board, double T, const Grid& grid, double dt);

}  // namespace torusdamp
