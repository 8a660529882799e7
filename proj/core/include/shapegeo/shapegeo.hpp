#pragma once

#include "shapegeo/common.hpp"
#include "shapegeo/curvature.hpp"
#include "shapegeo/curves.hpp"
#include "shapegeo/dynamics.hpp"
#include "shapegeo/examples.hpp"
#include "shapegeo/geodesy.hpp"
#include "shapegeo/io.hpp"
#include "shapegeo/lift.hpp"
#include "shapegeo/matching.hpp"
