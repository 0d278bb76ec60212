#pragma once

#include "berezin/model.hpp"

#include <vector>

namespace berezin::detail {

/// In-place unnormalized multidimensional DFT over a row-major array of the
/// given shape. sign = -1 is exp(-2 pi i j.k / N), sign = +1 its inverse.
void dft_inplace(CVector& data, const std::vector<int>& shape, int sign);

}  // namespace berezin::detail
