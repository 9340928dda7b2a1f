#pragma once

#include "error.hpp"
#include "numerics.hpp"
#include "simplex.hpp"
#include "polytope.hpp"
#include "gbc.hpp"
#include "oracle.hpp"
#include "setvalued.hpp"
#include "io.hpp"
#include "fixtures.hpp"
#include "report.hpp"
#include "sweep.hpp"
