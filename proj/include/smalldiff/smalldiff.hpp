#pragma once

#include "smalldiff/bounds.hpp"
#include "smalldiff/circle.hpp"
#include "smalldiff/constructions.hpp"
#include "smalldiff/discrete.hpp"
#include "smalldiff/errors.hpp"
#include "smalldiff/io.hpp"
#include "smalldiff/optimizer.hpp"
#include "smalldiff/phi.hpp"
#include "smalldiff/piecewise.hpp"
#include "smalldiff/random.hpp"
#include "smalldiff/sampling.hpp"
#include "smalldiff/verify.hpp"

namespace smalldiff {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace smalldiff
