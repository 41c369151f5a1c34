#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace torusdamp {

// One ODE (v'' + tau v = k on (-2, 2), v(-2) = left, v(2) = right) and its norms.
struct Lemma1dSolve {
    int degree = 0;
    double sup_inner = 0.0;     // |v| on [-1, 1]
    double l2_outer = 0.0;      // L2 over 1 <= |z| <= 2
    double l1_source = 0.0;     // L1 of k over (-2, 2)
    double ratio = 0.0;
};

struct Lemma1dTau {
    double tau = 0.0;
    int degree = 0;
    double max_ratio = 0.0;
};

struct Lemma1dReport {
    double max_ratio = 0.0;
    std::vector<Lemma1dTau> per_tau;
};

// Solves with Chebyshev collocation, doubling the degree from 64 until the solution on
// [-1, 1] changes by less than 1e-9 (relative).
Lemma1dSolve solve_1d(double tau, const std::function<double(double)>& k, double left, double right);

Lemma1dReport verify_1d_estimate(const std::vector<double>& taus, int trials, std::uint64_t seed);

}  // namespace torusdamp
