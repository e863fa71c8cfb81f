#ifndef PIPECG_HARNESS_HPP
#define PIPECG_HARNESS_HPP

#include "pipecg/detection.hpp"
#include "pipecg/ft_solver.hpp"
#include "pipecg/rng.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace pipecg {

enum class RhsMode { Ae, Ones, Uniform };

const char* to_string(RhsMode mode);
std::optional<RhsMode> parse_rhs_mode(std::string_view name);

VectorXd make_rhs(const SparseMatrixD& A, RhsMode mode, Rng& rng);

inline constexpr long kNoAlarm = std::numeric_limits<long>::max();

/// Six-way run classification. tp/fn split on whether the run converged
/// within the 1.5*phi allowance; an alarm before the flip iteration counts
/// as a false positive even in a tainted run.
enum class RunOutcomeClass { Tp, Sp, Fp, Tn, Sn, Fn };

const char* to_string(RunOutcomeClass outcome);

RunOutcomeClass classify_run(long rho, long tau, bool converged, bool flip_occurred);

/// A loaded operator plus everything the bounds need.
struct MatrixInput {
  std::string name;
  SparseMatrixD A;
  BoundConstants consts;
};

MatrixInput load_matrix_input(const std::string& path);
MatrixInput make_matrix_input(std::string name, SparseMatrixD A);

struct ExperimentConfig {
  RhsMode rhs = RhsMode::Uniform;
  int tainted_trials = 50;     // per variable (800 at paper scale)
  int untainted_trials = 20;   // per variable (200 at paper scale)
  int sweep_vector_trials = 5; // per (bit, fraction) cell (20 at paper scale)
  bool paper_scale = false;
  std::vector<double> fractions = {0.3, 0.6, 0.9};
  int bit_lo = 1;
  int bit_hi = 64;
  std::uint64_t seed = 1;
  std::vector<double> thresholds = {5e-1, 1e-4};
  std::vector<double> adapt = {0.5, 0.1};
  double threshold0 = 5e-1;  // initial T for adaptive runs
  double tol = 1e-10;
  double convergence_factor = 1.5;
  long max_iters = 200000;

  int effective_tainted() const { return paper_scale ? 800 : tainted_trials; }
  int effective_untainted() const { return paper_scale ? 200 : untainted_trials; }
  int effective_sweep_trials() const { return paper_scale ? 20 : sweep_vector_trials; }
};

struct TraceRow {
  long k = 0;
  double rel_residual = 0.0;
  bool has_gaps = false;  // false for the initialization row
  double nu_gap = 0.0, nu_bound = 0.0;
  bool has_w = false;
  double w_gap = 0.0, w_bound = 0.0;
  double mu_gap = 0.0, mu_bound = 0.0, rel_mu_diff = 0.0;
  bool alarm_nu = false, alarm_w = false, alarm_mu = false, alarm_rel = false;
  double threshold = 0.0;
};

/// Plain pipelined run with the detection set evaluated every iteration and
/// an optional single transient flip. No rollback happens here; this is the
/// measurement path. Several thresholds are scored on identical data.
struct DetectRunResult {
  SolveStatus status = SolveStatus::MaxIterations;
  bool excluded = false;  // overflow or breakdown: not a silent failure
  long iterations = 0;
  bool converged = false;
  InjectionLog injection;
  std::vector<long> rho;          // first alarm per threshold, kNoAlarm if none
  std::vector<long> alarm_evals;  // alarming evaluations per threshold
};

DetectRunResult run_piped_with_detection(const SparseMatrixD& A,
                                         const BoundConstants& consts,
                                         const VectorXd& b, const VectorXd& x0,
                                         double tol, long cap_iters,
                                         const std::vector<double>& thresholds,
                                         const FaultSpec* fault = nullptr,
                                         std::vector<TraceRow>* trace = nullptr);

struct SweepRow {
  std::string matrix;
  std::string variable;  // one of the fourteen, or "average"
  double fraction = 0.0;
  int bit = 0;
  int trials = 0;
  int convergent = 0;
  double percent = 0.0;  // equal-weight mean of per-variable percentages on "average" rows
};

std::vector<SweepRow> sensitivity_sweep(const std::vector<MatrixInput>& matrices,
                                        const ExperimentConfig& cfg);

struct DetectRow {
  std::string matrix;
  std::string variable;  // per variable plus an "all" aggregate
  double threshold = 0.0;
  long tp = 0, sp = 0, fp = 0, tn = 0, sn = 0, fn = 0;
  long excluded = 0;
};

std::vector<DetectRow> detection_campaign(const std::vector<MatrixInput>& matrices,
                                          const ExperimentConfig& cfg);

struct AftRow {
  std::string matrix;
  double adapt = 0.0;
  std::string variable;  // per variable plus an "all" aggregate
  long positive = 0, sn = 0, fn = 0;
  long excluded = 0;
  double mean_alarms = 0.0;
};

std::vector<AftRow> aft_campaign(const std::vector<MatrixInput>& matrices,
                                 const ExperimentConfig& cfg);

std::string format_double(double v);  // shortest round-trippable decimal

std::string to_csv(const std::vector<SweepRow>& rows);
std::string to_csv(const std::vector<DetectRow>& rows);
std::string to_csv(const std::vector<AftRow>& rows);
std::string to_csv(const std::vector<TraceRow>& rows);

void write_file(const std::string& path, const std::string& content);
void emit_trace(const std::vector<TraceRow>& rows, const std::string& path);

}  // namespace pipecg

#endif  // PIPECG_HARNESS_HPP
