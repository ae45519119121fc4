#pragma once

#include "bjo/attainment.hpp"
#include "bjo/certify.hpp"
#include "bjo/distance.hpp"
#include "bjo/eig.hpp"
#include "bjo/errors.hpp"
#include "bjo/instances.hpp"
#include "bjo/io.hpp"
#include "bjo/matrix.hpp"
#include "bjo/numrad.hpp"
#include "bjo/optimize.hpp"
#include "bjo/oracle.hpp"
#include "bjo/rng.hpp"
#include "bjo/subspace.hpp"
