#ifndef PIPECG_SOLVERS_HPP
#define PIPECG_SOLVERS_HPP

#include "pipecg/csr_matrix.hpp"
#include "pipecg/preconditioner.hpp"
#include "pipecg/solver_state.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace pipecg {

/// Exact-zero denominator (nu or mu). Distinct from overflow: it cannot be
/// reached by a fault-free SPD solve that has not already converged.
class BreakdownError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Step monitor that does nothing. A fault injector substitutes for it at
/// the scheduled iteration.
struct NoMonitor {
  template <class Scalar>
  void on_scalar(Variable, Scalar&) {}
  template <class Vec>
  void on_vector(Variable, Vec&) {}
};

struct StepOptions {
  bool duplicate_x = false;   // compute x twice and compare bitwise
  bool* x_mismatch = nullptr; // set when the duplicate comparison differed
};

template <class Scalar>
bool bitwise_equal(const DenseVector<Scalar>& a, const DenseVector<Scalar>& b) {
  if (a.size() != b.size()) return false;
  if constexpr (std::is_same_v<Scalar, double>) {
    return std::memcmp(a.data(), b.data(),
                       sizeof(double) * static_cast<std::size_t>(a.size())) == 0;
  } else {
    for (Eigen::Index i = 0; i < a.size(); ++i)
      if (!(a[i] == b[i])) return false;
    return true;
  }
}

template <class Scalar>
SolverState<Scalar> initialize_hscg(const SparseCsr<Scalar>& A,
                                    const Preconditioner<Scalar>* M,
                                    const DenseVector<Scalar>& b,
                                    const DenseVector<Scalar>& x0) {
  if (b.size() != A.n || x0.size() != A.n)
    throw std::invalid_argument("initialize_hscg: dimension mismatch");
  SolverState<Scalar> st;
  st.k = 0;
  st.preconditioned = (M != nullptr);
  st.r = axpy(b, Scalar(-1), matvec(A, x0));
  st.x = x0;
  if (M) st.r_tilde_v = M->apply(st.r);
  st.p = st.r_tilde();
  st.s = matvec(A, st.p);
  st.nu = dot(st.r_tilde(), st.r);
  st.mu = dot(st.p, st.s);
  st.norm_p_sq = dot(st.p, st.p);
  if (st.mu == Scalar(0))
    throw BreakdownError("initialize: <p0, s0> is zero (x0 already exact or A not SPD here)");
  st.alpha = st.nu / st.mu;
  return st;
}

template <class Scalar>
SolverState<Scalar> initialize_piped(const SparseCsr<Scalar>& A,
                                     const Preconditioner<Scalar>* M,
                                     const DenseVector<Scalar>& b,
                                     const DenseVector<Scalar>& x0) {
  if (b.size() != A.n || x0.size() != A.n)
    throw std::invalid_argument("initialize_piped: dimension mismatch");
  SolverState<Scalar> st;
  st.k = 0;
  st.preconditioned = (M != nullptr);
  st.x = x0;
  st.r = axpy(b, Scalar(-1), matvec(A, x0));
  if (M) st.r_tilde_v = M->apply(st.r);
  st.p = st.r_tilde();
  st.s = matvec(A, st.p);
  if (M) st.s_tilde_v = M->apply(st.s);
  st.u = matvec(A, st.s_tilde());
  if (M) st.u_tilde_v = M->apply(st.u);
  st.w = matvec(A, st.r_tilde());
  if (M) st.w_tilde_v = M->apply(st.w);
  st.sigma = dot(st.r_tilde(), st.s);
  st.gamma = dot(st.s_tilde(), st.s);
  st.nu = dot(st.r_tilde(), st.r);
  st.mu = dot(st.p, st.s);
  st.phi = M ? dot(st.s_tilde(), st.r) : st.sigma;
  st.norm_p_sq = dot(st.p, st.p);
  if (st.mu == Scalar(0))
    throw BreakdownError("initialize: <p0, s0> is zero (x0 already exact or A not SPD here)");
  st.alpha = st.nu / st.mu;
  return st;
}

template <class Scalar>
SolverState<Scalar> hscg_step(const SolverState<Scalar>& prev,
                              const SparseCsr<Scalar>& A,
                              const Preconditioner<Scalar>* M) {
  if (prev.nu == Scalar(0)) throw BreakdownError("hscg_step: nu_{k-1} is zero");
  SolverState<Scalar> st;
  st.k = prev.k + 1;
  st.preconditioned = (M != nullptr);
  st.x = axpy(prev.x, prev.alpha, prev.p);
  st.r = axpy(prev.r, -prev.alpha, prev.s);
  if (M) st.r_tilde_v = M->apply(st.r);
  st.nu = dot(st.r_tilde(), st.r);
  st.beta = st.nu / prev.nu;
  st.p = axpy(st.r_tilde(), st.beta, prev.p);
  st.s = matvec(A, st.p);
  st.mu = dot(st.p, st.s);
  st.norm_p_sq = dot(st.p, st.p);
  if (st.mu == Scalar(0)) throw BreakdownError("hscg_step: mu_k is zero");
  st.alpha = st.nu / st.mu;
  st.prev_nu = prev.nu;
  st.prev_alpha = prev.alpha;
  return st;
}

/// One pipelined predict-and-recompute iteration. All inner products sit in
/// a single batch at the end, mirroring the one synchronization point. The
/// monitor is invoked right after each of the fourteen variables is
/// computed, which is where a transient fault lands.
template <class Scalar, class Monitor>
SolverState<Scalar> piped_step(const SolverState<Scalar>& prev,
                               const SparseCsr<Scalar>& A,
                               const Preconditioner<Scalar>* M, Monitor&& mon,
                               const StepOptions& opts = {}) {
  if (prev.nu == Scalar(0)) throw BreakdownError("piped_step: nu_{k-1} is zero");
  SolverState<Scalar> st;
  st.k = prev.k + 1;
  st.preconditioned = (M != nullptr);

  st.x = axpy(prev.x, prev.alpha, prev.p);
  mon.on_vector(Variable::X, st.x);
  if (opts.duplicate_x) {
    DenseVector<Scalar> x_hat = axpy(prev.x, prev.alpha, prev.p);
    if (!bitwise_equal(st.x, x_hat)) {
      if (opts.x_mismatch) *opts.x_mismatch = true;
      // Transient fault: recomputing both copies clears it.
      st.x = axpy(prev.x, prev.alpha, prev.p);
    }
  }

  st.r = axpy(prev.r, -prev.alpha, prev.s);
  mon.on_vector(Variable::R, st.r);
  if (M) st.r_tilde_v = axpy(prev.r_tilde(), -prev.alpha, prev.s_tilde());

  st.w_prime = axpy(prev.w, -prev.alpha, prev.u);
  mon.on_vector(Variable::WPrime, st.w_prime);
  if (M) st.w_prime_tilde_v = axpy(prev.w_tilde(), -prev.alpha, prev.u_tilde());

  if (M) {
    st.nu_prime = prev.nu - prev.alpha * prev.sigma - prev.alpha * prev.phi +
                  prev.alpha * prev.alpha * prev.gamma;
  } else {
    st.nu_prime = prev.nu - Scalar(2) * prev.alpha * prev.sigma +
                  prev.alpha * prev.alpha * prev.gamma;
  }
  mon.on_scalar(Variable::NuPrime, st.nu_prime);

  st.beta = st.nu_prime / prev.nu;
  mon.on_scalar(Variable::Beta, st.beta);

  st.p = axpy(st.r_tilde(), st.beta, prev.p);
  mon.on_vector(Variable::P, st.p);
  st.s = axpy(st.w_prime, st.beta, prev.s);
  mon.on_vector(Variable::S, st.s);
  if (M) st.s_tilde_v = axpy(st.w_prime_tilde_v, st.beta, prev.s_tilde());

  st.u = matvec(A, st.s_tilde());
  mon.on_vector(Variable::U, st.u);
  if (M) st.u_tilde_v = M->apply(st.u);
  st.w = matvec(A, st.r_tilde());
  mon.on_vector(Variable::W, st.w);
  if (M) st.w_tilde_v = M->apply(st.w);

  // Single reduction batch: the five iteration inner products plus the
  // three the detection criteria need.
  st.mu = dot(st.p, st.s);
  mon.on_scalar(Variable::Mu, st.mu);
  st.sigma = dot(st.r_tilde(), st.s);
  mon.on_scalar(Variable::Sigma, st.sigma);
  st.gamma = dot(st.s_tilde(), st.s);
  mon.on_scalar(Variable::Gamma, st.gamma);
  st.nu = dot(st.r_tilde(), st.r);
  mon.on_scalar(Variable::Nu, st.nu);
  st.phi = M ? dot(st.s_tilde(), st.r) : st.sigma;

  st.ip_p_prev_s = dot(prev.p, st.s);
  st.norm_p_sq = dot(st.p, st.p);
  if (prev.w_prime.size() == prev.w.size() && prev.w.size() > 0 && prev.k >= 1) {
    DenseVector<Scalar> d(prev.w.size());
    for (Eigen::Index i = 0; i < prev.w.size(); ++i)
      d[i] = prev.w[i] - prev.w_prime[i];
    st.w_gap_prev_sq = dot(d, d);
    st.has_w_gap_prev = true;
  }

  if (st.mu == Scalar(0)) throw BreakdownError("piped_step: mu_k is zero");
  st.alpha = st.nu / st.mu;
  mon.on_scalar(Variable::Alpha, st.alpha);

  st.prev_nu = prev.nu;
  st.prev_gamma = prev.gamma;
  st.prev_alpha = prev.alpha;
  return st;
}

template <class Scalar>
SolverState<Scalar> piped_step(const SolverState<Scalar>& prev,
                               const SparseCsr<Scalar>& A,
                               const Preconditioner<Scalar>* M) {
  NoMonitor mon;
  return piped_step(prev, A, M, mon);
}

inline bool all_finite(const VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i])) return false;
  return true;
}

inline bool state_is_finite(const SolverState<double>& st) {
  for (const VectorXd* v : {&st.x, &st.r, &st.w_prime, &st.p, &st.s, &st.u, &st.w})
    if (!all_finite(*v)) return false;
  for (double d : {st.nu_prime, st.beta, st.mu, st.sigma, st.gamma, st.nu,
                   st.alpha, st.ip_p_prev_s, st.norm_p_sq, st.w_gap_prev_sq})
    if (!std::isfinite(d)) return false;
  return true;
}

/// Residual norm for the stopping test, recomputed from the stored vector
/// rather than through nu so convergence stays independent of the
/// detection quantities.
inline double stopping_residual(const SolverState<double>& st) { return nrm2(st.r); }

enum class Method { HsCg, PipePrCg };

struct RunResult {
  SolverState<double> state;
  long iterations = 0;
  SolveStatus status = SolveStatus::MaxIterations;
  std::vector<double> residual_history;  // relative residual, index 0 = initial
};

RunResult run_to_convergence(const SparseMatrixD& A, const Preconditioner<double>* M,
                             const VectorXd& b, const VectorXd& x0,
                             const SolveConfig& cfg, Method method = Method::PipePrCg);

}  // namespace pipecg

#endif  // PIPECG_SOLVERS_HPP
