#pragma once

#include "brandsim/config.hpp"
#include "brandsim/dynamics.hpp"
#include "brandsim/errors.hpp"
#include "brandsim/harness.hpp"
#include "brandsim/io.hpp"
#include "brandsim/metrics.hpp"
#include "brandsim/model.hpp"
#include "brandsim/rng.hpp"
