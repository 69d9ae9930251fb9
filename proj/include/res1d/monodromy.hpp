#ifndef RES1D_MONODROMY_HPP
#define RES1D_MONODROMY_HPP

#include <vector>

#include "res1d/potential.hpp"
#include "res1d/types.hpp"

namespace res1d {

template <typename S>
using Mat2 = Eigen::Matrix<S, 2, 2>;

template <typename S>
Mat2<S> transfer_one(S E, double v) {
  Mat2<S> T;
  T << E - v, S(-1), S(1), S(0);
  return T;
}

// Entries of the partial products T_{m-1} ... T_0 = [[a_m, b_m],
// [a_{m-1}, b_{m-1}]] for m = 0..count (a_0 = 1, b_0 = 0).
template <typename S>
struct Partials {
  std::vector<S> a, b;
};

template <typename S>
Partials<S> partial_products(const std::vector<double>& vals, S E, int count) {
  Partials<S> out;
  out.a.resize(static_cast<std::size_t>(count) + 1);
  out.b.resize(static_cast<std::size_t>(count) + 1);
  Mat2<S> M = Mat2<S>::Identity();
  out.a[0] = S(1);
  out.b[0] = S(0);
  for (int m = 1; m <= count; ++m) {
    M = (transfer_one(E, vals[static_cast<std::size_t>((m - 1) % static_cast<int>(vals.size()))]) * M).eval();
    out.a[static_cast<std::size_t>(m)] = M(0, 0);
    out.b[static_cast<std::size_t>(m)] = M(0, 1);
  }
  return out;
}

// Monodromy over one period starting at offset k: T_{k+p-1} ... T_k.
template <typename S>
Mat2<S> monodromy_matrix(const PeriodicSpec& pot, int k, S E) {
  Mat2<S> M = Mat2<S>::Identity();
  const int p = pot.period;
  for (int j = 0; j < p; ++j) {
    M = (transfer_one(E, pot.values[static_cast<std::size_t>((k + j) % p)]) * M).eval();
  }
  return M;
}

template <typename S>
S discriminant_at(const PeriodicSpec& pot, S E) {
  return monodromy_matrix(pot, 0, E).trace();
}

// d(trace)/dE by the product rule over the period block.
template <typename S>
S discriminant_derivative_at(const PeriodicSpec& pot, S E) {
  const int p = pot.period;
  std::vector<Mat2<S>> prefix(static_cast<std::size_t>(p) + 1);
  prefix[0] = Mat2<S>::Identity();
  for (int j = 0; j < p; ++j) {
    prefix[static_cast<std::size_t>(j) + 1] =
        (transfer_one(E, pot.values[static_cast<std::size_t>(j % p)]) * prefix[static_cast<std::size_t>(j)]).eval();
  }
  Mat2<S> suffix = Mat2<S>::Identity();
  Mat2<S> dT;
  dT << S(1), S(0), S(0), S(0);
  Mat2<S> sum = Mat2<S>::Zero();
  for (int j = p - 1; j >= 0; --j) {
    sum += (suffix * dT * prefix[static_cast<std::size_t>(j)]).eval();
    suffix = (suffix * transfer_one(E, pot.values[static_cast<std::size_t>(j % p)])).eval();
  }
  return sum.trace();
}

}  // namespace res1d

#endif
