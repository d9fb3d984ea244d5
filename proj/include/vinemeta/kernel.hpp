#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "vinemeta/model.hpp"

namespace vinemeta {

/// Cubature likelihood of the quadrivariate model for a fixed dataset.
///
/// Dependent quadrature nodes are built level by level (nq, nq^2, nq^3, nq^4
/// values) instead of once per 4-tuple, margin transforms and arm
/// log-probabilities are cached so that a change to one parameter only redoes
/// the arrays it touches, and the per-study sums run over contiguous arrays
/// with a vectorised exponential. Studies are evaluated in parallel with
/// OpenMP; their contributions are added in data order, so results do not
/// depend on the thread count.
///
/// Beta quantiles come from BetaQuantileTable (relative error ~1e-9), which
/// keeps the likelihood a smooth function of the parameters. The serial
/// per-tuple implementation in reference.hpp is the oracle for this class.
class QuadLikelihood {
 public:
  QuadLikelihood(std::vector<StudyTable> studies, MarginKind margin, std::size_t nq = 15);
  ~QuadLikelihood();
  QuadLikelihood(QuadLikelihood&&) noexcept;
  QuadLikelihood& operator=(QuadLikelihood&&) noexcept;

  /// Sum of study log pmfs; -inf outside the model space. Throws
  /// NumericError naming the study when a contribution is not finite.
  double loglik(const ModelParams& params);

  /// Per-study log pmfs in data order. Throws DomainError for invalid params.
  std::vector<double> study_log_pmfs(const ModelParams& params);

  std::size_t nq() const noexcept;
  MarginKind margin() const noexcept;
  const std::vector<StudyTable>& studies() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Cubature likelihood of the bivariate comparator (single pair-copula,
/// binomial arms after recoding).
class BivariateLikelihood {
 public:
  BivariateLikelihood(std::vector<StudyTable> studies, MarginKind margin, Handling handling,
                      std::size_t nq = 15);
  ~BivariateLikelihood();
  BivariateLikelihood(BivariateLikelihood&&) noexcept;
  BivariateLikelihood& operator=(BivariateLikelihood&&) noexcept;

  double loglik(const BivParams& params);
  std::vector<double> study_log_pmfs(const BivParams& params);

  std::size_t nq() const noexcept;
  MarginKind margin() const noexcept;
  Handling handling() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Thread cap for the OpenMP kernels (0 restores the runtime default).
void set_thread_count(int threads);

}  // namespace vinemeta
