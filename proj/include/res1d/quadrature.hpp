#ifndef RES1D_QUADRATURE_HPP
#define RES1D_QUADRATURE_HPP

#include <cstddef>
#include <vector>

namespace res1d {

struct GaussLegendre {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;  // sum = 2
};

// Nodes/weights by Newton iteration on P_n; accurate to machine precision.
GaussLegendre gauss_legendre(std::size_t n);

}  // namespace res1d

#endif
