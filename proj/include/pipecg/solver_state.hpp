#ifndef PIPECG_SOLVER_STATE_HPP
#define PIPECG_SOLVER_STATE_HPP

#include "pipecg/kernels.hpp"
#include "pipecg/preconditioner.hpp"

#include <optional>
#include <string_view>

namespace pipecg {

/// The fourteen per-iteration variables of the pipelined
/// predict-and-recompute iteration, in the order they are computed.
enum class Variable : int {
  X = 0,
  R,
  WPrime,
  NuPrime,
  Beta,
  P,
  S,
  U,
  W,
  Mu,
  Sigma,
  Gamma,
  Nu,
  Alpha,
};

inline constexpr int kVariableCount = 14;

const char* variable_name(Variable v);
std::optional<Variable> parse_variable(std::string_view name);
bool variable_is_vector(Variable v);

/// Full iterate for one iteration, plus the handful of scalars the
/// detection criteria read. States are value types so a history ring can
/// snapshot them and a rollback can reinstall them unchanged.
template <class Scalar>
struct SolverState {
  long k = 0;

  DenseVector<Scalar> x, r, w_prime, p, s, u, w;
  Scalar nu_prime{}, beta{}, mu{}, sigma{}, gamma{}, nu{}, alpha{};
  Scalar phi{};  // equals sigma in the unpreconditioned iteration

  // Preconditioned companions; empty and aliased to the plain vectors when
  // the solve is unpreconditioned.
  bool preconditioned = false;
  DenseVector<Scalar> r_tilde_v, s_tilde_v, u_tilde_v, w_tilde_v, w_prime_tilde_v;

  const DenseVector<Scalar>& r_tilde() const { return preconditioned ? r_tilde_v : r; }
  const DenseVector<Scalar>& s_tilde() const { return preconditioned ? s_tilde_v : s; }
  const DenseVector<Scalar>& u_tilde() const { return preconditioned ? u_tilde_v : u; }
  const DenseVector<Scalar>& w_tilde() const { return preconditioned ? w_tilde_v : w; }

  // Detection inputs that share the iteration's reduction batch.
  Scalar ip_p_prev_s{};    // <p_{k-1}, s_k>
  Scalar norm_p_sq{};      // <p_k, p_k>
  Scalar w_gap_prev_sq{};  // <w_{k-1}-w'_{k-1}, w_{k-1}-w'_{k-1}>
  bool has_w_gap_prev = false;

  // Carried copies so bounds for iteration k-1 can be formed from the
  // (k, k-1) state pair alone.
  Scalar prev_nu{}, prev_gamma{}, prev_alpha{};
};

struct SolveConfig {
  double tol = 1e-10;
  long max_iters = 200000;
  const Preconditioner<double>* preconditioner = nullptr;  // nullptr = identity
};

enum class SolveStatus { Converged, MaxIterations, Overflow, Breakdown };

const char* to_string(SolveStatus s);

}  // namespace pipecg

#endif  // PIPECG_SOLVER_STATE_HPP
