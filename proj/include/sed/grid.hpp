#pragma once

// Uniform 1-D grids, Cartesian or radial (s-states). The radial volume
// element 4 pi r^2 dr lives in the quadrature weights; differential
// operators act on the raw axis.

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace sed {

enum class Geometry { Cartesian, Radial };

struct Grid1D {
    double x0 = 0.0;
    double h = 0.0;
    std::size_t n = 0;
    Geometry geometry = Geometry::Cartesian;

    double x(std::size_t i) const { return x0 + h * static_cast<double>(i); }
    double xmax() const { return x(n - 1); }
    bool same_as(const Grid1D& o) const {
        return x0 == o.x0 && h == o.h && n == o.n && geometry == o.geometry;
    }
};

inline Grid1D make_grid(double x0, double x1, std::size_t n,
                        Geometry geom = Geometry::Cartesian) {
    if (n < 3) throw std::invalid_argument("grid needs at least 3 points");
    return {x0, (x1 - x0) / static_cast<double>(n - 1), n, geom};
}

// Quadrature weights including the volume element (composite Simpson when the
// point count is odd, trapezoid otherwise).
std::vector<double> quadrature_weights(const Grid1D& g);

double integrate(const Grid1D& g, const std::vector<double>& f);

// Centered O(h^2) first derivative, one-sided second-order at the ends.
std::vector<double> gradient(const Grid1D& g, const std::vector<double>& f);

// Centered O(h^2) second derivative (one-sided at the ends).
std::vector<double> laplacian1d(const Grid1D& g, const std::vector<double>& f);

// Five-point O(h^4) first derivative, used where 1e-8 level agreement is needed.
std::vector<double> gradient4(const Grid1D& g, const std::vector<double>& f);

}  // namespace sed
