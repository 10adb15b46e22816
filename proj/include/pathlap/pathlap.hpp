#pragma once

#include "pathlap/digraph.hpp"
#include "pathlap/eigen.hpp"
#include "pathlap/errors.hpp"
#include "pathlap/ingest.hpp"
#include "pathlap/laplacian.hpp"
#include "pathlap/linalg.hpp"
#include "pathlap/matrix.hpp"
#include "pathlap/path_complex.hpp"
#include "pathlap/persistence.hpp"
#include "pathlap/rational.hpp"
#include "pathlap/reduction.hpp"
