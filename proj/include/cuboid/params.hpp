#pragma once

#include "cuboid/rational.hpp"

#include <string>

namespace cuboid {

// A point (b, c) of the parameter plane.
struct Params {
  Rational b;
  Rational c;

  friend bool operator==(const Params&, const Params&) = default;
  friend auto operator<=>(const Params&, const Params&) = default;

  std::string str() const { return "(" + b.str() + ", " + c.str() + ")"; }
};

}  // namespace cuboid
