#pragma once

#include "covop/borel.hpp"
#include "covop/core.hpp"
#include "covop/diagnostics.hpp"
#include "covop/error.hpp"
#include "covop/gom.hpp"
#include "covop/io.hpp"
#include "covop/moments.hpp"
#include "covop/random.hpp"
#include "covop/reconstruct.hpp"
#include "covop/structure.hpp"
