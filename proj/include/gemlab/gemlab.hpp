#pragma once

#include "gemlab/arrangement.hpp"
#include "gemlab/construct.hpp"
#include "gemlab/energy.hpp"
#include "gemlab/gem.hpp"
#include "gemlab/hull.hpp"
#include "gemlab/io.hpp"
#include "gemlab/landscape.hpp"
#include "gemlab/random.hpp"
#include "gemlab/rational.hpp"

namespace gemlab {
inline constexpr const char* kVersion = "0.1.0";
}
