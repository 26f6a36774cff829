#pragma once

#include "cns.hpp"
#include "dynamics.hpp"
#include "geometry.hpp"
#include "rational.hpp"
#include "regions.hpp"
#include "stability.hpp"
#include "witness.hpp"
