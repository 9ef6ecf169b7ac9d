#include "orthofit/basis.hpp"

#include <cmath>

namespace orthofit {

BasisIndex degree_block(std::size_t t) {
  auto m = static_cast<std::size_t>((std::sqrt(8.0 * static_cast<double>(t) + 1.0) - 1.0) / 2.0);
  while (block_start(m) > t) --m;
  while (block_start(m + 1) <= t) ++m;
  return {t, m, t - block_start(m)};
}

std::vector<bool> odd_field_mask(std::size_t L) {
  std::vector<bool> mask(L + 1);
  for (std::size_t t = 0; t <= L; ++t) mask[t] = degree_block(t).x_power() % 2 == 1;
  return mask;
}

}  // namespace orthofit
