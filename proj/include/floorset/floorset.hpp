#pragma once
// Umbrella header: prime statistics of the floor function set
// S(x) = { [x/n] : 1 <= n <= x }, exact and asymptotic.

#include "floorset/asym.hpp"
#include "floorset/blocks.hpp"
#include "floorset/exact.hpp"
#include "floorset/harness.hpp"
#include "floorset/primes.hpp"
#include "floorset/psisum.hpp"
#include "floorset/version.hpp"
#include "floorset/weights.hpp"
