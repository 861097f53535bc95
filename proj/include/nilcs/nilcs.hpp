#pragma once

#include "nilcs/catalog.hpp"
#include "nilcs/complex_structure.hpp"
#include "nilcs/io.hpp"
#include "nilcs/j_series.hpp"
#include "nilcs/lie_algebra.hpp"
#include "nilcs/linalg.hpp"
#include "nilcs/rational.hpp"
#include "nilcs/search.hpp"
#include "nilcs/stratification.hpp"
#include "nilcs/theorem_suite.hpp"
#include "nilcs/verdict.hpp"
