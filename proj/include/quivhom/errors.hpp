#pragma once

#include <stdexcept>

namespace quivhom {

/// Operand shapes do not fit together.
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Two representations or sheaves live over different quivers, twists or
/// fields, so no Hom/Ext between them is defined.
struct IncompatibleInstances : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

} // namespace quivhom
