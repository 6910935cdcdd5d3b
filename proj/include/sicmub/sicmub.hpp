#pragma once

#include "sicmub/certificate.hpp"
#include "sicmub/coloring.hpp"
#include "sicmub/eisenstein.hpp"
#include "sicmub/incidence.hpp"
#include "sicmub/inequality.hpp"
#include "sicmub/operators.hpp"
#include "sicmub/rational.hpp"
#include "sicmub/rays.hpp"
#include "sicmub/serialization.hpp"
#include "sicmub/verify.hpp"
