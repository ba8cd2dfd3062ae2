#pragma once

#include "tracealg/rational.hpp"
#include "tracealg/linalg.hpp"
#include "tracealg/mpoly.hpp"
#include "tracealg/freetrace.hpp"
#include "tracealg/freetrace_io.hpp"
#include "tracealg/chident.hpp"
#include "tracealg/genmat.hpp"
#include "tracealg/findim.hpp"
#include "tracealg/generic_rank.hpp"
#include "tracealg/pseudochar.hpp"
#include "tracealg/strata.hpp"
#include "tracealg/json_io.hpp"
