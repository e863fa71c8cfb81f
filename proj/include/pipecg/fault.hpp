#ifndef PIPECG_FAULT_HPP
#define PIPECG_FAULT_HPP

#include "pipecg/solver_state.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pipecg {

/// Flips one bit of the binary64 representation. Bits are numbered 1..64
/// big-endian: 1 is the sign, 2..12 the exponent, 13..64 the mantissa.
/// Involutive by construction.
inline double flip_bit(double v, int bit) {
  if (bit < 1 || bit > 64) throw std::out_of_range("flip_bit: bit must be in [1,64]");
  const std::uint64_t u = std::bit_cast<std::uint64_t>(v) ^ (std::uint64_t{1} << (64 - bit));
  return std::bit_cast<double>(u);
}

/// One transient bit flip: which variable, at which iteration, which bit,
/// and (for vectors) which entry.
struct FaultSpec {
  Variable target = Variable::Nu;
  long iteration = 1;   // tau
  int bit = 1;          // 1..64, big-endian
  Eigen::Index position = 0;  // ignored for scalars
};

struct InjectionLog {
  bool applied = false;
  double original_value = 0.0;
  double flipped_value = 0.0;
};

/// Applies the flip to the already-updated target inside `state`. Nothing
/// else is touched; downstream recomputation of the variable clears it.
InjectionLog inject(SolverState<double>& state, const FaultSpec& spec);

/// Step monitor that injects `spec` when the step's iteration matches.
/// Hand it to piped_step at the scheduled iteration.
struct FaultInjector {
  const FaultSpec* spec = nullptr;
  long iteration = 0;
  InjectionLog* log = nullptr;

  void on_scalar(Variable v, double& value) {
    if (!spec || iteration != spec->iteration || v != spec->target) return;
    record(value, flip_bit(value, spec->bit));
    value = flip_bit(value, spec->bit);
  }
  void on_vector(Variable v, VectorXd& vec) {
    if (!spec || iteration != spec->iteration || v != spec->target) return;
    if (spec->position < 0 || spec->position >= vec.size())
      throw std::out_of_range("inject: vector position out of range");
    double& value = vec[spec->position];
    record(value, flip_bit(value, spec->bit));
    value = flip_bit(value, spec->bit);
  }

 private:
  void record(double original, double flipped) {
    if (!log) return;
    log->applied = true;
    log->original_value = original;
    log->flipped_value = flipped;
  }
};

std::string fault_to_csv(const FaultSpec& spec);
FaultSpec fault_from_csv(const std::string& record);

}  // namespace pipecg

#endif  // PIPECG_FAULT_HPP
