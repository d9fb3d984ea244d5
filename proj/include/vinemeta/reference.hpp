#pragma once

#include <cstddef>
#include <vector>

#include "vinemeta/model.hpp"

namespace vinemeta::reference {

/// Straightforward serial cubature: for every 4-tuple of Gauss-Legendre
/// nodes, transport through the vine, apply the exact margin quantiles and
/// evaluate both trinomial pmfs; accumulate by log-sum-exp. Slow (exact beta
/// quantiles cost ~20 us each) and kept as the oracle for QuadLikelihood.
double study_log_pmf(const StudyTable& study, const ModelParams& params, MarginKind margin, std::size_t nq);

double loglik_quad(const std::vector<StudyTable>& data, const ModelParams& params, MarginKind margin,
                   std::size_t nq);

/// Serial bivariate cubature with exact margin quantiles.
double loglik_bivariate(const std::vector<StudyTable>& data, const BivParams& params, MarginKind margin,
                        Handling handling, std::size_t nq);

}  // namespace vinemeta::reference
