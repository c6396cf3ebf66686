#pragma once

// Everything except the JSON/CSV layer (br2d/io.hpp), which needs json.hpp.

#include "br2d/certificate.hpp"
#include "br2d/error.hpp"
#include "br2d/grid.hpp"
#include "br2d/identities.hpp"
#include "br2d/integrate.hpp"
#include "br2d/kernel.hpp"
#include "br2d/linalg.hpp"
#include "br2d/specfun.hpp"
#include "br2d/spectral.hpp"
#include "br2d/unbounded.hpp"
#include "br2d/version.hpp"
