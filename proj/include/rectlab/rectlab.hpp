#pragma once

#include "cli.hpp"
#include "comb_gf.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "htilde.hpp"
#include "macdonald.hpp"
#include "modular.hpp"
#include "partitions.hpp"
#include "paths.hpp"
#include "poly_gcd.hpp"
#include "qtpoly.hpp"
#include "qtrational.hpp"
#include "report.hpp"
#include "sweep.hpp"
#include "symfunc.hpp"
#include "transition_cache.hpp"
#include "verify.hpp"
