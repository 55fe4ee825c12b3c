#ifndef NHF_VERIFY_HPP
#define NHF_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nhf/tensorprod.hpp"

namespace nhf {

enum class TheoremId { T2_4, T3_2, T3_5, T3_6, T3_9, T4_3, T4_4, T4_5a, T4_5b, T4_7, T4_8, T4_9 };

const char* to_string(TheoremId id);
/// Throws StructuralError for unknown ids.
TheoremId parse_theorem_id(std::string_view name);
const std::vector<TheoremId>& all_theorems();
/// True for the ids that need a right factor.
bool needs_tensor(TheoremId id);

/// Everything a theorem check may draw on. Single-space theorems read the
/// left bundle; optional operators override the defaults picked by the
/// verifier.
struct TheoremInput {
  FactorBundle left;
  std::optional<FactorBundle> right;
  std::optional<Subspace> subspace;       // Y for the local-atom theorems
  std::optional<Operator> isometry_left;  // T1, T2 for the isometry transform
  std::optional<Operator> isometry_right;
  std::optional<Operator> transform_left;  // L1, L2 for the left transform
  std::optional<Operator> transform_right;
};

/// Checks the theorem's hypothesis numerically (checks prefixed
/// "hypothesis."), then its conclusion ("conclusion.").
Report verify_theorem(TheoremId id, const TheoremInput& input, int trials, std::uint64_t seed,
                      double tol = tol::check);

/// Default Y: span of the projections of the first half of the sequence.
Subspace default_subspace(const Matrix& synthesis);

}  // namespace nhf

#endif  // NHF_VERIFY_HPP
