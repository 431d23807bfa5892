#pragma once

#include "rotsurf/errors.hpp"
#include "rotsurf/elliptic.hpp"
#include "rotsurf/spaceform.hpp"
#include "rotsurf/curvature.hpp"
#include "rotsurf/profile.hpp"
#include "rotsurf/surface.hpp"
#include "rotsurf/closure.hpp"
#include "rotsurf/verify.hpp"
#include "rotsurf/io.hpp"
