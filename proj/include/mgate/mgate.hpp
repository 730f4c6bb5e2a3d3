// mgate.hpp
// Umbrella header.

#pragma once

#include "mgate/circuit.hpp"
#include "mgate/common.hpp"
#include "mgate/errors.hpp"
#include "mgate/figures.hpp"
#include "mgate/gates.hpp"
#include "mgate/io.hpp"
#include "mgate/matrix.hpp"
#include "mgate/measure.hpp"
#include "mgate/random.hpp"
#include "mgate/rewrite.hpp"
#include "mgate/state.hpp"
#include "mgate/verify.hpp"
