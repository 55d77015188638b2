#pragma once

#include "graphsim/dense_matrix.hpp"
#include "graphsim/error.hpp"
#include "graphsim/generators.hpp"
#include "graphsim/graph.hpp"
#include "graphsim/linalg.hpp"
#include "graphsim/similarity.hpp"
#include "graphsim/synonyms.hpp"
