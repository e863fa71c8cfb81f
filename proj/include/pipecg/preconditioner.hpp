#ifndef PIPECG_PRECONDITIONER_HPP
#define PIPECG_PRECONDITIONER_HPP

#include "pipecg/kernels.hpp"

namespace pipecg {

/// Applies M^{-1} to a vector. Passing nullptr to the solvers selects the
/// unpreconditioned path, which skips the tilde recurrences entirely; a
/// non-null operator (even an identity) routes through the general
/// preconditioned recurrences.
template <class Scalar>
class Preconditioner {
 public:
  virtual ~Preconditioner() = default;
  virtual DenseVector<Scalar> apply(const DenseVector<Scalar>& v) const = 0;
};

template <class Scalar>
class IdentityPreconditioner final : public Preconditioner<Scalar> {
 public:
  DenseVector<Scalar> apply(const DenseVector<Scalar>& v) const override { return v; }
};

}  // namespace pipecg

#endif  // PIPECG_PRECONDITIONER_HPP
