#pragma once

// Umbrella header: the whole library in dependency order.

#include "psifrac/errors.hpp"
#include "psifrac/special_functions.hpp"
#include "psifrac/psi_function.hpp"
#include "psifrac/fractional_order.hpp"
#include "psifrac/problem.hpp"
#include "psifrac/grid.hpp"
#include "psifrac/quadrature.hpp"
#include "psifrac/frac_integral.hpp"
#include "psifrac/mittag_leffler.hpp"
#include "psifrac/hilfer_derivative.hpp"
#include "psifrac/certificate.hpp"
#include "psifrac/solver.hpp"
#include "psifrac/bounds.hpp"
#include "psifrac/catalog.hpp"
#include "psifrac/run.hpp"
