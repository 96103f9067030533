#pragma once

#include <vector>

#include "core/verify.hpp"

namespace gradlab {

/// Identity and convergence properties of the discretisation, one row per property.
/// Rows use case_id "selftest"; lhs_max is the measured quantity, rhs its limit.
std::vector<CheckReport> run_selftest();

}  // namespace gradlab
