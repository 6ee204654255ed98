#ifndef RPD_RPD_HPP
#define RPD_RPD_HPP

#include "rpd/comparators.hpp"
#include "rpd/core.hpp"
#include "rpd/curve_io.hpp"
#include "rpd/depth.hpp"
#include "rpd/directions.hpp"
#include "rpd/errors.hpp"
#include "rpd/pool_io.hpp"
#include "rpd/report_io.hpp"
#include "rpd/robust_stats.hpp"
#include "rpd/simulation.hpp"

#endif // RPD_RPD_HPP
