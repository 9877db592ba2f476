#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace rbpdn {

/// Binary classification dataset: feature matrix W (m x N, row i = sample
/// w^i) and labels y in {-1, +1}^m. Rows of W are unit-normalized.
struct Dataset {
  Eigen::MatrixXd W;
  Eigen::VectorXd y;

  Eigen::Index samples() const { return W.rows(); }
  Eigen::Index dim() const { return W.cols(); }

  /// Checks unit row norms (1e-12 tolerance) and exact +-1 labels; throws
  /// std::invalid_argument on violation.
  void validate() const;
};

/// Synthetic data: features uniform on (0, 1), each row scaled to unit
/// Euclidean norm, labels +-1 with equal probability. Deterministic for a
/// fixed seed.
Dataset generate_dataset(Eigen::Index m, Eigen::Index dim, std::uint64_t seed);

/// Binary dataset container: magic "CSCD", u32 version = 1, u64 m, u64 N,
/// m*N little-endian f64 features row-major, then m labels as i8.
void save_dataset_binary(const Dataset& data, const std::string& path);
Dataset load_dataset_binary(const std::string& path);

/// CSV with header `y,w1,...,wN`; doubles serialized losslessly.
void save_dataset_csv(const Dataset& data, const std::string& path);
Dataset load_dataset_csv(const std::string& path);

/// Sniffs the format (CSCD magic vs. text) and dispatches.
Dataset load_dataset(const std::string& path);

}  // namespace rbpdn
