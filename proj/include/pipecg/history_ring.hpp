#ifndef PIPECG_HISTORY_RING_HPP
#define PIPECG_HISTORY_RING_HPP

#include "pipecg/solver_state.hpp"

#include <deque>
#include <stdexcept>

namespace pipecg {

/// Last five committed states (iterations k .. k-4) with consecutive
/// indices. Five slots cover both the rollback pair and the lagged
/// w-criterion inputs.
class HistoryRing {
 public:
  static constexpr int kCapacity = 5;

  void push(SolverState<double> state) {
    if (!slots_.empty() && state.k != slots_.back().k + 1)
      throw std::logic_error("HistoryRing: iteration indices must be consecutive");
    slots_.push_back(std::move(state));
    if (slots_.size() > kCapacity) slots_.pop_front();
  }

  const SolverState<double>* find(long k) const {
    for (const auto& st : slots_)
      if (st.k == k) return &st;
    return nullptr;
  }

  bool empty() const { return slots_.empty(); }
  long newest() const { return slots_.empty() ? -1 : slots_.back().k; }
  long oldest() const { return slots_.empty() ? -1 : slots_.front().k; }

  /// Drops states newer than k; used when a rollback reinstalls state k.
  void truncate_to(long k) {
    while (!slots_.empty() && slots_.back().k > k) slots_.pop_back();
  }

  void clear() { slots_.clear(); }

 private:
  std::deque<SolverState<double>> slots_;
};

}  // namespace pipecg

#endif  // PIPECG_HISTORY_RING_HPP
