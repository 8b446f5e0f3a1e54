#pragma once

#include "dbubble/candidates.hpp"
#include "dbubble/cgc_ode.hpp"
#include "dbubble/equilibrium.hpp"
#include "dbubble/error.hpp"
#include "dbubble/geometry.hpp"
#include "dbubble/io.hpp"
#include "dbubble/measure.hpp"
#include "dbubble/quadrature.hpp"
#include "dbubble/transforms.hpp"
#include "dbubble/verify.hpp"
