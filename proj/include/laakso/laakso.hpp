#pragma once

#include "laakso/compare.hpp"
#include "laakso/eigensolver.hpp"
#include "laakso/errors.hpp"
#include "laakso/graph.hpp"
#include "laakso/jsequence.hpp"
#include "laakso/json_io.hpp"
#include "laakso/laplacian.hpp"
#include "laakso/rational.hpp"
#include "laakso/spectrum.hpp"
#include "laakso/svg.hpp"
