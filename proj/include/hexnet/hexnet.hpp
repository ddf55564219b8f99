#pragma once

#include "hexnet/analytic.hpp"
#include "hexnet/antenna.hpp"
#include "hexnet/errors.hpp"
#include "hexnet/exclusion.hpp"
#include "hexnet/geometry.hpp"
#include "hexnet/jet.hpp"
#include "hexnet/lambert_w.hpp"
#include "hexnet/montecarlo.hpp"
#include "hexnet/params.hpp"
#include "hexnet/propagation.hpp"
#include "hexnet/quadrature.hpp"
#include "hexnet/random.hpp"
#include "hexnet/report.hpp"
#include "hexnet/sweep.hpp"
