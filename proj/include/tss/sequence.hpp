#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tss {

using Symbol = std::uint32_t;
using Sequence = std::vector<Symbol>;

// base^exp, throwing CapExceeded if the result does not fit in 63 bits.
std::uint64_t checked_power(std::uint64_t base, std::size_t exp);

// Mixed-radix code of a tuple, most significant symbol first, so numeric order
// of codes coincides with lexicographic order of tuples.
std::uint64_t sequence_code(std::span<const Symbol> seq, std::size_t alphabet);
void decode_sequence(std::uint64_t code, std::size_t alphabet, std::span<Symbol> out);
Sequence decode_sequence(std::uint64_t code, std::size_t alphabet, std::size_t n);

// Odometer step in lexicographic order. Returns false after wrapping to all
// zeros.
bool advance_odometer(std::span<Symbol> seq, std::size_t alphabet);

}  // namespace tss
