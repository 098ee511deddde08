#include "sed/grid.hpp"

#include <cmath>

namespace sed {

std::vector<double> quadrature_weights(const Grid1D& g) {
    std::vector<double> w(g.n, 0.0);
    if (g.n % 2 == 1) {
        // composite Simpson
        w[0] = w[g.n - 1] = g.h / 3.0;
        for (std::size_t i = 1; i + 1 < g.n; ++i)
            w[i] = (i % 2 == 1 ? 4.0 : 2.0) * g.h / 3.0;
    } else {
        w.assign(g.n, g.h);
        w[0] = w[g.n - 1] = 0.5 * g.h;
    }
    if (g.geometry == Geometry::Radial)
        for (std::size_t i = 0; i < g.n; ++i) {
            const double r = g.x(i);
            w[i] *= 4.0 * M_PI * r * r;
        }
    return w;
}

double integrate(const Grid1D& g, const std::vector<double>& f) {
    if (f.size() != g.n) throw std::invalid_argument("field size does not match grid");
    const std::vector<double> w = quadrature_weights(g);
    double s = 0.0;
    for (std::size_t i = 0; i < g.n; ++i)
        if (w[i] != 0.0) s += w[i] * f[i];
    return s;
}

std::vector<double> gradient(const Grid1D& g, const std::vector<double>& f) {
    if (f.size() != g.n) throw std::invalid_argument("field size does not match grid");
    std::vector<double> d(g.n);
    const double h = g.h;
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < g.n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    d[g.n - 1] = (3.0 * f[g.n - 1] - 4.0 * f[g.n - 2] + f[g.n - 3]) / (2.0 * h);
    return d;
}

std::vector<double> laplacian1d(const Grid1D& g, const std::vector<double>& f) {
    if (f.size() != g.n) throw std::invalid_argument("field size does not match grid");
    std::vector<double> d(g.n);
    const double h2 = g.h * g.h;
    d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
    for (std::size_t i = 1; i + 1 < g.n; ++i)
        d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
    d[g.n - 1] = (2.0 * f[g.n - 1] - 5.0 * f[g.n - 2] + 4.0 * f[g.n - 3] - f[g.n - 4]) / h2;
    return d;
}

std::vector<double> gradient4(const Grid1D& g, const std::vector<double>& f) {
    if (f.size() != g.n || g.n < 5)
        throw std::invalid_argument("gradient4 needs a matching grid with n >= 5");
    std::vector<double> d(g.n);
    const double h = g.h;
    // one-sided fourth-order stencils at the edges
    const auto edge = [&](std::size_t i, int s) {
        return s * (-25.0 * f[i] + 48.0 * f[i + s] - 36.0 * f[i + 2 * s] +
                    16.0 * f[i + 3 * s] - 3.0 * f[i + 4 * s]) / (12.0 * h);
    };
    d[0] = edge(0, 1);
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h);
    for (std::size_t i = 2; i + 2 < g.n; ++i)
        d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
    d[g.n - 2] = (3.0 * f[g.n - 1] + 10.0 * f[g.n - 2] - 18.0 * f[g.n - 3] +
                  6.0 * f[g.n - 4] - f[g.n - 5]) / (12.0 * h);
    d[g.n - 1] = edge(g.n - 1, -1);
    return d;
}

}  // namespace sed
