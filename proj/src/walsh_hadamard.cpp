#include "l1adm/walsh_hadamard.hpp"

namespace l1adm {

void fwht(std::span<Complex> data)
{
  auto const len = static_cast<Index>(data.size());
  if (!is_power_of_two(len)) { throw InvalidParameter("fwht: length must be a power of two"); }
  for (Index h = 1; h < len; h *= 2) {
    for (Index i = 0; i < len; i += 2 * h) {
      for (Index j = i; j < i + h; ++j) {
        Complex const a = data[static_cast<std::size_t>(j)];
        Complex const b = data[static_cast<std::size_t>(j + h)];
        data[static_cast<std::size_t>(j)] = a + b;
        data[static_cast<std::size_t>(j + h)] = a - b;
      }
    }
  }
}

}  // namespace l1adm
