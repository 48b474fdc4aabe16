#pragma once

#include "xsep/complex.hpp"
#include "xsep/cones.hpp"
#include "xsep/context.hpp"
#include "xsep/dense.hpp"
#include "xsep/emit.hpp"
#include "xsep/errors.hpp"
#include "xsep/expr.hpp"
#include "xsep/io.hpp"
#include "xsep/lattice.hpp"
#include "xsep/linprog.hpp"
#include "xsep/oracle.hpp"
#include "xsep/sampling.hpp"
#include "xsep/scalar.hpp"
#include "xsep/slice.hpp"
#include "xsep/witness.hpp"
#include "xsep/xmatrix.hpp"
