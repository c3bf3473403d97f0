#ifndef IVMC_IVMC_HPP
#define IVMC_IVMC_HPP

#include "ivmc/alias.hpp"
#include "ivmc/box.hpp"
#include "ivmc/csv.hpp"
#include "ivmc/diagnostics.hpp"
#include "ivmc/envelope.hpp"
#include "ivmc/errors.hpp"
#include "ivmc/expr.hpp"
#include "ivmc/interval.hpp"
#include "ivmc/quadrature.hpp"
#include "ivmc/rng.hpp"
#include "ivmc/sampler.hpp"
#include "ivmc/targets.hpp"

#endif
