#pragma once

#include <array>

namespace orlicz {

/// A point of the closure of the domain. 1D problems ignore the second coordinate.
using Point = std::array<double, 2>;

}  // namespace orlicz
