#pragma once

#include "specdisp/hill/factorization.hpp"
#include "specdisp/hill/functional_equation.hpp"
#include "specdisp/hill/gamma_forms.hpp"
#include "specdisp/hill/lattice.hpp"
#include "specdisp/hill/nested.hpp"
#include "specdisp/hill/two_adic.hpp"
