#pragma once

#include "cliffcone/clifford.hpp"
#include "cliffcone/cone_c4.hpp"
#include "cliffcone/division_algebra.hpp"
#include "cliffcone/errors.hpp"
#include "cliffcone/field.hpp"
#include "cliffcone/geometry.hpp"
#include "cliffcone/jet.hpp"
#include "cliffcone/matrix.hpp"
#include "cliffcone/poly.hpp"
#include "cliffcone/pullback.hpp"
#include "cliffcone/quadmap.hpp"
#include "cliffcone/rational.hpp"
#include "cliffcone/report.hpp"
#include "cliffcone/rng.hpp"
