#pragma once

#include "zak/units.hpp"
#include "zak/quadrature.hpp"
#include "zak/series.hpp"
#include "zak/conventions.hpp"
#include "zak/line_state.hpp"
#include "zak/zakmap.hpp"
#include "zak/operators.hpp"
#include "zak/wigner.hpp"
#include "zak/qubits.hpp"
#include "zak/io.hpp"
#include "zak/checks.hpp"
