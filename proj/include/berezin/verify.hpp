#pragma once

#include "berezin/model.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace berezin {

/// Seeded complex Gaussian matrices/states for randomized checks.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  CMatrix matrix(int rows, int cols);
  OperatorMatrix operator_matrix(int dim) { return OperatorMatrix(matrix(dim, dim)); }
  /// B B* for Gaussian B.
  OperatorMatrix psd(int dim);
  /// Operator on a space of dimension `dim` with entries only in the leading
  /// `support` x `support` block.
  OperatorMatrix low_index(int dim, int support);
  /// Unit-norm state.
  HermiteState unit_state(int dim);
  std::size_t index(std::size_t upper);

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

enum class Relation { Less, LessEq, Greater, GreaterEq };

struct CheckResult {
  int criterion = 0;
  std::string name;
  std::string description;
  double value = 0.0;
  double threshold = 0.0;
  Relation relation = Relation::Less;
  bool passed = false;
};

const char* symbol(Relation r);

/// Runs every identity check at its pinned tolerance. Checks that need a
/// specific truncation (8x8 random operators, 6x6 on a 64x64 grid,
/// M = 1..4 for injectivity) derive it from `base`, capped by base.M.
std::vector<CheckResult> run_verification(const ModelConfig& base, std::uint64_t seed = 0);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace berezin
