#pragma once

#include <functional>
#include <vector>

namespace freeknot {

// Nodes and weights of an n-point Gauss-Legendre rule on (-1, 1).
// Exact for polynomials of degree 2n-1.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

// Integral of f over [a, b], applying the rule on `panels` equal pieces.
double gl_integrate(const std::function<double(double)>& f, double a, double b,
                    const GaussLegendre& rule, int panels = 1);

// Composite rule over consecutive breakpoints (breaks must be sorted).
double gl_integrate_breaks(const std::function<double(double)>& f,
                           const std::vector<double>& breaks,
                           const GaussLegendre& rule, int panels_per_piece = 1);

}  // namespace freeknot
