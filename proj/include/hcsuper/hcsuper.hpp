#pragma once

#include "rational.hpp"
#include "cyclo.hpp"
#include "grassmann.hpp"
#include "linalg.hpp"
#include "supermatrix.hpp"
#include "random.hpp"
#include "roots.hpp"
#include "liealg.hpp"
#include "weights.hpp"
#include "enveloping.hpp"
#include "osp.hpp"
#include "json_io.hpp"
