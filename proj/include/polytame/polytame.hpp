#pragma once

#include "polytame/errors.hpp"
#include "polytame/integer_linalg.hpp"
#include "polytame/lattice_geometry.hpp"
#include "polytame/field.hpp"
#include "polytame/polynomial.hpp"
#include "polytame/polytopal_ring.hpp"
#include "polytame/factorization.hpp"
#include "polytame/discrete_form.hpp"
#include "polytame/tame_calculus.hpp"
#include "polytame/decomposition_engine.hpp"
#include "polytame/json_io.hpp"
