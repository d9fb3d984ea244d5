#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "vinemeta/copula.hpp"

namespace vinemeta {

/// Quadrivariate D-vine on the path 1-2-3-4.
///
/// level1 holds C12, C23, C34; level2 holds C13|2, C24|3; level3 is C14|23.
/// A truncated vine has independence copulas at levels 2 and 3.
struct DVineSpec {
  std::array<CopulaSpec, 3> level1{};
  std::array<CopulaSpec, 2> level2{};
  CopulaSpec level3{};
  bool truncated = false;

  /// Three level-1 pair-copulas with independence above.
  static DVineSpec truncated_vine(const std::array<CopulaSpec, 3>& level1);
  /// All six pair-copulas independent.
  static DVineSpec independent();

  friend bool operator==(const DVineSpec&, const DVineSpec&) = default;
};

using Point4 = std::array<double, 4>;

namespace dvine {

/// Pair labels in parameter order: 12, 23, 34, 13|2, 24|3, 14|23.
inline constexpr std::array<const char*, 6> kPairNames = {"12", "23", "34", "13|2", "24|3", "14|23"};

/// The six pair-copulas in parameter order.
std::array<CopulaSpec, 6> pair_copulas(const DVineSpec& spec);

/// Throws DomainError for an inadmissible pair-copula or a truncated vine
/// whose upper levels are not independence.
void validate(const DVineSpec& spec);

/// log c1234(u) as the product of the six pair densities.
double log_density(const DVineSpec& spec, const Point4& u);

/// Maps independent uniforms to a draw from the vine by successive inverse
/// h-functions (Rosenblatt inverse along the D-vine).
Point4 dependent_nodes(const DVineSpec& spec, const Point4& u);

/// n draws with a generator seeded by `seed`.
std::vector<Point4> sample(const DVineSpec& spec, std::size_t n, std::uint64_t seed);

/// Implied 4x4 correlation matrix of an all-BVN vine (latent normal scale),
/// from the partial-correlation recursion.
std::array<std::array<double, 4>, 4> bvn_implied_correlation(const DVineSpec& spec);

}  // namespace dvine
}  // namespace vinemeta
