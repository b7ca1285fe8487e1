#pragma once

#include "supports/cycle_chords.hpp"
#include "supports/genus_support.hpp"
#include "supports/graph_system.hpp"
#include "supports/instances.hpp"
#include "supports/io.hpp"
#include "supports/outerplanar_support.hpp"
#include "supports/rotation_graph.hpp"
#include "supports/support_result.hpp"
#include "supports/tree_decomposition.hpp"
#include "supports/treewidth_support.hpp"
#include "supports/verify.hpp"
#include "supports/vertex_bypass.hpp"
