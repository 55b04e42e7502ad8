#pragma once

#include "lightcone/errors.hpp"
#include "lightcone/field_io.hpp"
#include "lightcone/greens.hpp"
#include "lightcone/hyperplane.hpp"
#include "lightcone/legendre.hpp"
#include "lightcone/minkowski.hpp"
#include "lightcone/scalar_field.hpp"
#include "lightcone/section_geometry.hpp"
#include "lightcone/short_pulse.hpp"
#include "lightcone/sphere_grid.hpp"
#include "lightcone/sphere_ops.hpp"
#include "lightcone/trapped_construction.hpp"
