#pragma once

#include "khs/scalar.hpp"
#include "khs/vec.hpp"
#include "khs/sparse_matrix.hpp"
#include "khs/linalg.hpp"
#include "khs/smith.hpp"
#include "khs/complex.hpp"
#include "khs/link.hpp"
#include "khs/resolution.hpp"
#include "khs/laurent.hpp"
#include "khs/jones.hpp"
#include "khs/knot_table.hpp"
#include "khs/cube.hpp"
#include "khs/reduction.hpp"
#include "khs/homology_table.hpp"
#include "khs/steenrod.hpp"
#include "khs/filtered_reduce.hpp"
#include "khs/refined_s.hpp"
#include "khs/serialize.hpp"
