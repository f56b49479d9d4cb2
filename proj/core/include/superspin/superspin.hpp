#pragma once
#include "superspin/clifford.hpp"
#include "superspin/errors.hpp"
#include "superspin/grassmann.hpp"
#include "superspin/json_io.hpp"
#include "superspin/orthosymplectic.hpp"
#include "superspin/random.hpp"
#include "superspin/spin.hpp"
#include "superspin/supermatrix.hpp"
