#pragma once

#include "graphlet/adaptive.hpp"
#include "graphlet/common.hpp"
#include "graphlet/estimator.hpp"
#include "graphlet/extremal.hpp"
#include "graphlet/generators.hpp"
#include "graphlet/gfd.hpp"
#include "graphlet/graph.hpp"
#include "graphlet/local_counts.hpp"
#include "graphlet/micro.hpp"
#include "graphlet/oracle.hpp"
#include "graphlet/sampling.hpp"
