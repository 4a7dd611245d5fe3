#pragma once

#include "toric/basis.hpp"
#include "toric/document.hpp"
#include "toric/errors.hpp"
#include "toric/exporters.hpp"
#include "toric/integrate.hpp"
#include "toric/lattice.hpp"
#include "toric/patch.hpp"
#include "toric/poly2.hpp"
#include "toric/rational.hpp"
#include "toric/solver.hpp"
