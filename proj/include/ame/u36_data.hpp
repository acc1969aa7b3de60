#pragma once
// Structural transcription of the order-36 golden 2-unitary: one record per
// nonzero entry.  Each entry is mag * omega^pow with omega = exp(2*pi*i/20)
// and mag a product over the alphabet {a, b, c},
//
//   a = (5+sqrt(5))^(-1/2),  b = a*(1+sqrt(5))/2,  c = 1/sqrt(2).
//
// Indices are 0-based (row, col) in the 36x36 matrix, row = 6*i + j for the
// qudit pair (i, j).  The loader validates the nonzero count and the
// 2-unitarity deficit, so a mistyped record is caught at load time.

#include <array>
#include <cstdint>

namespace ame::u36data {

struct Cell {
    std::uint8_t row, col;
    std::int8_t pow;      // omega exponent, mod 20
    const char* mag;      // "a", "b", "c", or a product such as "ab"
};

// Placeholder: the transcription is installed by tools/gen_u36_table once the
// reconstruction pipeline certifies a table (see docs/u36.md).
inline constexpr std::array<Cell, 0> cells{};

}  // namespace ame::u36data
