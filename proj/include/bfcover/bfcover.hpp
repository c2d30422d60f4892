#pragma once

#include "bfcover/butterfly.hpp"
#include "bfcover/cover_construct.hpp"
#include "bfcover/edge_partition.hpp"
#include "bfcover/graph.hpp"
#include "bfcover/io.hpp"
#include "bfcover/solver.hpp"
