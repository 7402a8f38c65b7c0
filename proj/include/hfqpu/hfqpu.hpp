#pragma once

#include "hfqpu/algorithms.hpp"
#include "hfqpu/compiler.hpp"
#include "hfqpu/dynamics.hpp"
#include "hfqpu/errors.hpp"
#include "hfqpu/execute.hpp"
#include "hfqpu/gates.hpp"
#include "hfqpu/hamiltonian.hpp"
#include "hfqpu/pulse.hpp"
#include "hfqpu/spin_core.hpp"
