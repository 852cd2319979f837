#pragma once

// Umbrella header.

#include "cdnl/analyze.hpp"
#include "cdnl/bench.hpp"
#include "cdnl/heuristics.hpp"
#include "cdnl/hooks.hpp"
#include "cdnl/literal.hpp"
#include "cdnl/nogood_file.hpp"
#include "cdnl/nogoods.hpp"
#include "cdnl/oracle.hpp"
#include "cdnl/program.hpp"
#include "cdnl/propagate.hpp"
#include "cdnl/shuffle.hpp"
#include "cdnl/solve.hpp"
#include "cdnl/stats.hpp"
#include "cdnl/trail.hpp"
#include "cdnl/ufs.hpp"
