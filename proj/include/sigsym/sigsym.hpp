#pragma once

#include "sigsym/chaingroup.hpp"
#include "sigsym/deltamatroid.hpp"
#include "sigsym/error.hpp"
#include "sigsym/field.hpp"
#include "sigsym/graphs.hpp"
#include "sigsym/linalg.hpp"
#include "sigsym/matrix.hpp"
#include "sigsym/random.hpp"
#include "sigsym/subset.hpp"
#include "sigsym/verify.hpp"
#include "sigsym/width.hpp"
