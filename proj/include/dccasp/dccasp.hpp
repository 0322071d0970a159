#pragma once

// Umbrella header: the full pipeline from program text to answers.

#include "dccasp/program.hpp"
#include "dccasp/parser.hpp"
#include "dccasp/dependency_graph.hpp"
#include "dccasp/checks.hpp"
#include "dccasp/splitting.hpp"
#include "dccasp/solver.hpp"
#include "dccasp/oracle.hpp"
#include "dccasp/report.hpp"
#include "dccasp/bench.hpp"
