#pragma once

#include "fairkc/scalar.hpp"
#include "fairkc/metric_space.hpp"
#include "fairkc/instances.hpp"
#include "fairkc/generators.hpp"
#include "fairkc/instance_io.hpp"
#include "fairkc/matching.hpp"
#include "fairkc/solvers.hpp"
#include "fairkc/reductions.hpp"
#include "fairkc/verify.hpp"
#include "fairkc/report.hpp"
