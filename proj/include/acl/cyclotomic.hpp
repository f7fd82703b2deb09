#pragma once

#include "acl/numbers.hpp"

#include <cstdint>
#include <vector>

namespace acl {

// Evaluates sum_e counts[e] * zeta_m^e exactly when the result lies in Q(i),
// by reducing modulo the m-th cyclotomic polynomial; otherwise returns the
// complex double value. counts.size() must equal m.
[[nodiscard]] CoefficientValue root_of_unity_sum(const std::vector<BigInt>& counts, std::int64_t m);

// zeta_m^e, exact when it is one of 1, i, -1, -i.
[[nodiscard]] CoefficientValue root_of_unity(std::int64_t e, std::int64_t m);

}  // namespace acl
