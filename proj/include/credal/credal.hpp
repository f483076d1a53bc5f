#pragma once

#include "credal/exactla.hpp"
#include "credal/events.hpp"
#include "credal/cones.hpp"
#include "credal/polytope.hpp"
#include "credal/fanwalk.hpp"
#include "credal/lower_prevision.hpp"
#include "credal/two_monotone.hpp"
#include "credal/pri.hpp"
#include "credal/model_io.hpp"
