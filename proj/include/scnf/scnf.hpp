#pragma once

#include "scnf/convert.hpp"
#include "scnf/core.hpp"
#include "scnf/datagen.hpp"
#include "scnf/io.hpp"
#include "scnf/learn.hpp"
#include "scnf/markov.hpp"
#include "scnf/metrics.hpp"
#include "scnf/optimize.hpp"
#include "scnf/rng.hpp"
#include "scnf/simulate.hpp"

namespace scnf {
inline constexpr const char* kVersion = "0.1.0";
}
