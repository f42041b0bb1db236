#include "tss/sequence.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "tss/errors.hpp"

namespace tss {

std::uint64_t checked_power(std::uint64_t base, std::size_t exp) {
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 63;
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && result > kLimit / base) {
      throw CapExceeded("checked_power: " + std::to_string(base) + "^" + std::to_string(exp) +
                        " does not fit in 63 bits");
    }
    result *= base;
  }
  return result;
}

std::uint64_t sequence_code(std::span<const Symbol> seq, std::size_t alphabet) {
  std::uint64_t code = 0;
  for (Symbol s : seq) {
    if (s >= alphabet) throw std::out_of_range("sequence_code: symbol outside alphabet");
    code = code * alphabet + s;
  }
  return code;
}

void decode_sequence(std::uint64_t code, std::size_t alphabet, std::span<Symbol> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<Symbol>(code % alphabet);
    code /= alphabet;
  }
}

Sequence decode_sequence(std::uint64_t code, std::size_t alphabet, std::size_t n) {
  Sequence out(n);
  decode_sequence(code, alphabet, out);
  return out;
}

bool advance_odometer(std::span<Symbol> seq, std::size_t alphabet) {
  for (std::size_t i = seq.size(); i-- > 0;) {
    if (++seq[i] < alphabet) return true;
    seq[i] = 0;
  }
  return false;
}

}  // namespace tss
