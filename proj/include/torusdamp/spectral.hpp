#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "torusdamp/board.hpp"

namespace torusdamp {

using Field = std::vector<double>;
using ComplexField = std::vector<std::complex<double>>;

// Uniform periodic grid; sample (i, j) sits at (i*A/nx, j*B/ny) and is stored at j*nx + i.
struct Grid {
    int nx = 16;
    int ny = 16;
    TorusLattice lattice;

    double hx() const { return lattice.A / nx; }
    double hy() const { return lattice.B / ny; }
    double cell_area() const { return hx() * hy(); }
    std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
    Vec2 point(int i, int j) const { return {i * hx(), j * hy()}; }
};

void validate_grid(const Grid& grid);
bool is_power_of_two(int n);

// Pseudospectral derivatives via real-to-complex FFTs. Not copyable; one instance per thread.
class Spectral {
public:
    explicit Spectral(const Grid& grid);
    ~Spectral();
    Spectral(const Spectral&) = delete;
    Spectral& operator=(const Spectral&) = delete;

    const Grid& grid() const { return grid_; }

    // out = Laplacian(in) with symbol -|xi_k|^2, xi_k = (2 pi k1 / A, 2 pi k2 / B)
    void laplacian(const Field& in, Field& out);
    void laplacian(const ComplexField& in, ComplexField& out);
    // integral of |grad u|^2 over the torus
    double gradient_energy(const Field& u);

    // forward transform of a real field into the half spectrum (ny rows of nx/2+1), unnormalized
    void forward(const Field& in, ComplexField& half_spectrum);
    // inverse of forward, including the 1/(nx*ny) factor; half_spectrum is not modified
    void inverse(const ComplexField& half_spectrum, Field& out);

    int half_width() const { return grid_.nx / 2 + 1; }
    int k1_of(int i) const { return i; }
    int k2_of(int j) const { return j <= grid_.ny / 2 ? j : j - grid_.ny; }
    double xi_squared(int i, int j) const;

private:
    struct Plans;
    Grid grid_;
    std::unique_ptr<Plans> plans_;
};

}  // namespace torusdamp
