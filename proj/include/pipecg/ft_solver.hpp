#ifndef PIPECG_FT_SOLVER_HPP
#define PIPECG_FT_SOLVER_HPP

#include "pipecg/detection.hpp"
#include "pipecg/fault.hpp"
#include "pipecg/history_ring.hpp"
#include "pipecg/solvers.hpp"

#include <functional>
#include <vector>

namespace pipecg {

inline constexpr unsigned kCritNu = 1u;
inline constexpr unsigned kCritW = 2u;
inline constexpr unsigned kCritMu = 4u;
inline constexpr unsigned kCritRel = 8u;

struct FtConfig {
  double threshold = 5e-1;  // T for the relative mu-gap/bound criterion
  double adapt = 0.5;       // a in (0,1); adaptive solve only
  BoundConstants consts;
  SolveConfig solve;
};

struct AlarmEvent {
  long evaluation_k = 0;   // iteration whose reduction batch raised it
  long attributed_k = 0;   // iteration the firing gap belongs to (w lags by 1)
  unsigned criteria = 0;   // kCrit* mask
  double threshold_at = 0.0;
  long resumed_from = 0;   // state index reinstalled by the rollback
};

class RollbackUnavailableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RecoveredPair {
  const SolverState<double>* current = nullptr;
  const SolverState<double>* previous = nullptr;
};

/// States two and three iterations before the alarm. The alarm either fired
/// at the fault iteration or one later, so these predate the corruption.
/// Throws RollbackUnavailableError when the ring no longer holds them; the
/// solvers then replay from initialization instead.
RecoveredPair recover(const HistoryRing& ring, long alarm_iteration);

struct FtResult {
  SolverState<double> state;
  long iterations = 0;  // final iteration index at exit
  long executed = 0;    // iterations actually computed, replays included
  SolveStatus status = SolveStatus::MaxIterations;
  std::vector<AlarmEvent> alarms;  // one entry per rollback
  long suppressed_alarms = 0;      // FT only: alarms on marked iterations
  long x_recomputes = 0;           // duplicate-compare mismatches repaired
  double final_threshold = 0.0;
  std::vector<double> residual_history;
};

/// Called after every committed iteration, replays included; observers key
/// off state.k when they want the final trajectory.
using StateObserver = std::function<void(const SolverState<double>&)>;

/// Detection-integrated solve with two-iteration rollback and iteration
/// marking against alarm loops. The x update is computed twice and compared
/// bitwise each iteration.
FtResult ft_solve(const SparseMatrixD& A, const VectorXd& b, const VectorXd& x0,
                  const FtConfig& cfg, const FaultSpec* fault = nullptr,
                  const StateObserver& observer = {});

/// Adaptive variant: no marking; every rollback-causing alarm that includes
/// the relative criterion first scales T by the adaptation factor, so
/// repeated false positives die out.
FtResult aft_solve(const SparseMatrixD& A, const VectorXd& b, const VectorXd& x0,
                   const FtConfig& cfg, const FaultSpec* fault = nullptr,
                   const StateObserver& observer = {});

}  // namespace pipecg

#endif  // PIPECG_FT_SOLVER_HPP
