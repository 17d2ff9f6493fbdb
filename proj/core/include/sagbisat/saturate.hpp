#pragma once

#include <atomic>
#include <functional>
#include <optional>
#include <vector>

#include "sagbisat/subalgebra.hpp"

namespace sagbisat {

enum class SaturationStatus { Stabilized, IterationLimit };

struct SaturationResult {
  SubalgebraPresentation algebra;
  SaturationStatus status = SaturationStatus::Stabilized;
  unsigned iterations = 0;
  /// The generators also form a (possibly truncated) SAGBI basis.
  bool sagbi = false;
  std::optional<long> truncation_degree;
};

struct Progress {
  long degree = 0;
  std::size_t basis_size = 0;
  std::size_t max_terms = 0;
};

struct SaturationOptions {
  unsigned max_iterations = 20;
  std::function<void(const Progress&)> on_progress;
  /// Checked between iterations; a set flag raises Cancelled.
  const std::atomic<bool>* cancel = nullptr;
};

/// Iterates S' <- E_g(S') until nothing new is added. Throws GNotInS.
SaturationResult subalgebra_saturation(const SubalgebraPresentation& s, const Polynomial& g,
                                       const SaturationOptions& opts = {});

/// SAGBI basis of S : a0^inf (a0 = first variable) for W-homogeneous
/// generators under an ordering of a0-DegRev type. a0 is added to the
/// generators if missing. Throws NotGraded, OrderingNotDegRevType.
SaturationResult sat_sagbi(const SubalgebraPresentation& s, const SaturationOptions& opts = {});

/// As sat_sagbi, truncated at first-row degree d. W must have first row
/// (0, d_1, ..., d_n) with d_i > 0 and second row starting with 1.
/// Throws BadGradingShape, NotGraded, OrderingNotDegRevType.
SaturationResult trunc_sat_sagbi(const SubalgebraPresentation& s, long d, const SaturationOptions& opts = {});

/// Single positive row w with every W-homogeneous polynomial w-homogeneous:
/// sum_k c^(m-1-k) W_k for the least c >= 1 that works. Throws NotGraded.
std::vector<long> positive_row(const Grading& w);

/// Minimal homogeneous generators, degree by degree under positive_row(W).
/// Throws NotGraded.
std::vector<Polynomial> min_gens(const SubalgebraPresentation& s);

/// Saturation of S[g] by g after checking f(g) in S for the univariate,
/// non-constant f. Throws WitnessNotInS.
SaturationResult weak_saturate_with_witness(const SubalgebraPresentation& s, const Polynomial& g,
                                            const Polynomial& f, const SaturationOptions& opts = {});

}  // namespace sagbisat
