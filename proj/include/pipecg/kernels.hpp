#ifndef PIPECG_KERNELS_HPP
#define PIPECG_KERNELS_HPP

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>

namespace pipecg {

template <class Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using VectorXd = DenseVector<double>;

/// Inner product with strictly sequential left-to-right accumulation.
/// Repeated calls on identical inputs are bitwise identical; the rollback
/// machinery depends on that.
template <class Scalar>
Scalar dot(const DenseVector<Scalar>& x, const DenseVector<Scalar>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("dot: length mismatch");
  Scalar acc(0);
  for (Eigen::Index i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

/// Returns x + a*y, one multiply and one add per entry.
template <class Scalar>
DenseVector<Scalar> axpy(const DenseVector<Scalar>& x, const Scalar& a,
                         const DenseVector<Scalar>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("axpy: length mismatch");
  DenseVector<Scalar> out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = x[i] + a * y[i];
  return out;
}

inline double nrm2(const VectorXd& x) { return std::sqrt(dot(x, x)); }

}  // namespace pipecg

#endif  // PIPECG_KERNELS_HPP
