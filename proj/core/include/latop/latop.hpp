#pragma once

#include "latop/error.hpp"
#include "latop/lattice.hpp"
#include "latop/learn.hpp"
#include "latop/modelsel.hpp"
#include "latop/morphology.hpp"
#include "latop/params.hpp"
#include "latop/repr.hpp"
#include "latop/rng.hpp"
