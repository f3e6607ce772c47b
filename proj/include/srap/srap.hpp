#pragma once

#include "completion.hpp"
#include "core.hpp"
#include "dp.hpp"
#include "dropcalc.hpp"
#include "feasibility.hpp"
#include "generator.hpp"
#include "greedy.hpp"
#include "io.hpp"
#include "localsearch.hpp"
#include "maxflow.hpp"
#include "oracle.hpp"
#include "problems.hpp"
#include "reduction.hpp"
#include "rspecial.hpp"
#include "steiner.hpp"
