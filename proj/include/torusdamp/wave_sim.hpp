#pragma once

#include <cstdint>
#include <variant>

#include "torusdamp/gaussian_beam.hpp"
#include "torusdamp/spectral.hpp"

namespace torusdamp {

struct WaveState {
    Field u;
    Field v;
    double t = 0.0;
};

struct SimConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    Field damping_raster;
    double mass = 0.0;
    int stride = 1;  // record every stride-th step
};

struct TrajectoryReport {
    std::vector<double> times;
    std::vector<double> energies;
    std::vector<double> dissipated;
    double decay_rate = 0.0;
    // largest one-step energy increase over the run, relative to E(0)
    double max_energy_rise = 0.0;
    double dt = 0.0;
};

struct BroadbandInit {
    std::uint64_t seed = 1;
    int k_max = 0;  // 0 means nx/4
};

struct ModeInit {
    int k1 = 0;
    int k2 = 0;
    std::complex<double> u_coeff;  // u += Re(u_coeff e^{i xi.x})
    std::complex<double> v_coeff;
};

using InitialData = std::variant<BroadbandInit, BeamSpec, std::vector<ModeInit>, WaveState>;

// Largest stable time step for the spectral leapfrog on this grid.
double cfl_limit(const Grid& grid);

Field rasterize_damping(const DampingBoard& board, const Grid& grid, int subsamples = 8);

double energy(const WaveState& state, const Grid& grid, double mass);
double energy(const WaveState& state, Spectral& spectral, double mass);

WaveState broadband_state(const Grid& grid, std::uint64_t seed, int k_max, double mass);
WaveState modes_state(const Grid& grid, const std::vector<ModeInit>& modes);
WaveState initial_state(const InitialData& init, const Grid& grid, double mass);

class WaveSolver {
public:
    WaveSolver(const Grid& grid, SimConfig config);

    // One kick-drift-kick step: the half-step form of leapfrog with damping averaged over the step.
    void step(WaveState& state);
    TrajectoryReport run(WaveState state);
    Spectral& spectral() { return spectral_; }

private:
    void force(const Field& u, Field& out);

    Grid grid_;
    SimConfig config_;
    Spectral spectral_;
    Field lap_;
};

WaveState step(const WaveState& state, const SimConfig& config, const Grid& grid);

TrajectoryReport run(const DampingBoard& board, const InitialData& init, const Grid& grid, SimConfig config);

double dissipation_residual(const TrajectoryReport& report);
double decay_rate(const TrajectoryReport& report, double t0, double t1);

}  // namespace torusdamp
