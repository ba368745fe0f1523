#pragma once

#include "modspace/chain.hpp"
#include "modspace/checks.hpp"
#include "modspace/errors.hpp"
#include "modspace/map.hpp"
#include "modspace/modular.hpp"
#include "modspace/point.hpp"
#include "modspace/sampler.hpp"
#include "modspace/solver.hpp"
#include "modspace/tolerance.hpp"
