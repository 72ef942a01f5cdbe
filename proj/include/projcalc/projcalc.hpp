// Umbrella header.
#pragma once

#include "block.hpp"
#include "calculus.hpp"
#include "fixtures.hpp"
#include "geometry.hpp"
#include "homotopy.hpp"
#include "io.hpp"
#include "lifting.hpp"
#include "numeric.hpp"
#include "scalar_function.hpp"
#include "states.hpp"
#include "support.hpp"
#include "types.hpp"
#include "verify.hpp"
