#pragma once

#include "maxoutprobe/algorithms.hpp"
#include "maxoutprobe/community.hpp"
#include "maxoutprobe/error.hpp"
#include "maxoutprobe/estimators.hpp"
#include "maxoutprobe/generators.hpp"
#include "maxoutprobe/graph.hpp"
#include "maxoutprobe/harness.hpp"
#include "maxoutprobe/observed.hpp"
#include "maxoutprobe/probe.hpp"
#include "maxoutprobe/random.hpp"
#include "maxoutprobe/sampling.hpp"
#include "maxoutprobe/strategies.hpp"
