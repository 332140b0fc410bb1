#pragma once

#include "divisor_lab/bigint.hpp"
#include "divisor_lab/catalog.hpp"
#include "divisor_lab/cli.hpp"
#include "divisor_lab/crossed_homs.hpp"
#include "divisor_lab/enumerate.hpp"
#include "divisor_lab/error.hpp"
#include "divisor_lab/explore.hpp"
#include "divisor_lab/group.hpp"
#include "divisor_lab/hom_verify.hpp"
#include "divisor_lab/int_matrix.hpp"
#include "divisor_lab/json_io.hpp"
#include "divisor_lab/random.hpp"
#include "divisor_lab/ring.hpp"
#include "divisor_lab/ring_equations.hpp"
#include "divisor_lab/solver.hpp"
#include "divisor_lab/system.hpp"
#include "divisor_lab/word.hpp"
