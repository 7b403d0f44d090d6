#pragma once

/// Umbrella header for the library modules.

#include "kloos/arith.hpp"
#include "kloos/convolution.hpp"
#include "kloos/error.hpp"
#include "kloos/expsum.hpp"
#include "kloos/numeric.hpp"
#include "kloos/parallel.hpp"
#include "kloos/primesum.hpp"
#include "kloos/rational.hpp"
#include "kloos/sieve.hpp"
#include "kloos/singular.hpp"
#include "kloos/smooth.hpp"
