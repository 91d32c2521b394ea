#pragma once

#include "qgs/bound_states.hpp"
#include "qgs/errors.hpp"
#include "qgs/graph.hpp"
#include "qgs/linalg.hpp"
#include "qgs/matrix.hpp"
#include "qgs/momentum.hpp"
#include "qgs/polynomial.hpp"
#include "qgs/scattering.hpp"
#include "qgs/spectral.hpp"
#include "qgs/tail_ops.hpp"
#include "qgs/tolerance.hpp"
