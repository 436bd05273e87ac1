#pragma once
// Umbrella header for the library.

#include "linalg.hpp"
#include "report.hpp"
#include "algebra.hpp"
#include "module.hpp"
#include "bimodule.hpp"
#include "clifford.hpp"
#include "correspondence.hpp"
