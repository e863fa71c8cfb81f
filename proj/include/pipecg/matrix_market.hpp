#ifndef PIPECG_MATRIX_MARKET_HPP
#define PIPECG_MATRIX_MARKET_HPP

#include "pipecg/csr_matrix.hpp"

#include <stdexcept>
#include <string>

namespace pipecg {

class MatrixMarketError : public std::runtime_error {
 public:
  MatrixMarketError(const std::string& path, long line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

/// Reads a "%%MatrixMarket matrix coordinate real symmetric" file and
/// assembles the full CSR operator (both triangles). The 2-norm estimate is
/// left unset. Anything other than coordinate/real/symmetric is rejected.
SparseMatrixD load_matrix_market(const std::string& path);

/// Writes the lower triangle in coordinate format with shortest
/// round-trippable decimal values, so load(save(A)) is bitwise A.
void save_matrix_market(const SparseMatrixD& A, const std::string& path);

}  // namespace pipecg

#endif  // PIPECG_MATRIX_MARKET_HPP
