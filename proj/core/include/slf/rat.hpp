// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace slf {

using Rat = mpq_class;

// Accepts "a", "a/b" and finite decimals "a.b"; never goes through binary floats.
// Throws std::invalid_argument on anything else.
Rat parse_rat(std::string_view text);

std::string to_string(const Rat& r);
double to_double(const Rat& r);

// ceil(1/eps) for eps in (0,1]
std::int64_t ceil_inverse(const Rat& eps);

mpz_class ceil_rat(const Rat& r);
mpz_class floor_rat(const Rat& r);

inline const Rat& min_rat(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& max_rat(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace slf
