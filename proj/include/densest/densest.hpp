#pragma once

#include "densest/circle.hpp"
#include "densest/conjecture_search.hpp"
#include "densest/exact_oracle.hpp"
#include "densest/gap_tracker.hpp"
#include "densest/sequences.hpp"
#include "densest/theorem_suite.hpp"
