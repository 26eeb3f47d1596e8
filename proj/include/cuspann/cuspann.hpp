#pragma once

#include "cuspann/adele.hpp"
#include "cuspann/classfield.hpp"
#include "cuspann/config.hpp"
#include "cuspann/curve_oracle.hpp"
#include "cuspann/eisenstein.hpp"
#include "cuspann/hecke.hpp"
#include "cuspann/legendre.hpp"
#include "cuspann/lfunction.hpp"
#include "cuspann/selftest.hpp"
