#pragma once

// Umbrella header: exact arithmetic for wavelet sets and the tilings of the
// real line by integer translations and dyadic dilations.

#include "waveset/bigfloat.hpp"
#include "waveset/errors.hpp"
#include "waveset/extraction.hpp"
#include "waveset/fixtures.hpp"
#include "waveset/interval_set.hpp"
#include "waveset/matching.hpp"
#include "waveset/measure.hpp"
#include "waveset/measure_match.hpp"
#include "waveset/profile.hpp"
#include "waveset/quadratic.hpp"
#include "waveset/rational.hpp"
#include "waveset/step_function.hpp"
#include "waveset/tiling.hpp"
