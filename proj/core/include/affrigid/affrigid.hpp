#pragma once

#include "affrigid/channel2d.hpp"
#include "affrigid/errors.hpp"
#include "affrigid/group_geometry.hpp"
#include "affrigid/lanczos.hpp"
#include "affrigid/model.hpp"
#include "affrigid/nd_operator.hpp"
#include "affrigid/peter_weyl.hpp"
#include "affrigid/potential.hpp"
#include "affrigid/quadrature.hpp"
#include "affrigid/representations.hpp"
#include "affrigid/sector.hpp"
#include "affrigid/spectra.hpp"
#include "affrigid/text_io.hpp"
#include "affrigid/tridiagonal.hpp"

namespace affrigid {

/// Library version string.
const char* version();

} // namespace affrigid
