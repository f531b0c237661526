#pragma once

#include "asphericity.hpp"
#include "complex.hpp"
#include "cycles.hpp"
#include "fixtures.hpp"
#include "homology.hpp"
#include "invariants.hpp"
#include "io.hpp"
#include "isoperimetry.hpp"
#include "linalg.hpp"
#include "random_model.hpp"
