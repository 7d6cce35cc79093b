#pragma once

#include "crpoly/crmap.hpp"
#include "crpoly/error.hpp"
#include "crpoly/polyroots.hpp"
#include "crpoly/rng.hpp"
#include "crpoly/symmetry.hpp"
#include "crpoly/verify.hpp"
#include "crpoly/volume.hpp"
#include "crpoly/wn_set.hpp"
