#pragma once

#include "hilbertine/error.hpp"
#include "hilbertine/linalg.hpp"
#include "hilbertine/projective.hpp"
#include "hilbertine/domain.hpp"
#include "hilbertine/quadrature.hpp"
#include "hilbertine/busemann.hpp"
#include "hilbertine/dynamics.hpp"
#include "hilbertine/vinberg.hpp"
#include "hilbertine/surface.hpp"
#include "hilbertine/models.hpp"
