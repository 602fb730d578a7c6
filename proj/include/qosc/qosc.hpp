#pragma once

// q-deformed oscillator algebras su_q(1,1) and su_q(2): exact Laurent
// arithmetic, q-calculus, truncated Fock-space realizations, coherent
// states and resolution-of-unity verification.

#include "qosc/rational.hpp"
#include "qosc/laurent.hpp"
#include "qosc/qnumbers.hpp"
#include "qosc/qcalc.hpp"
#include "qosc/fock.hpp"
#include "qosc/oscillators.hpp"
#include "qosc/algebra.hpp"
#include "qosc/coherent.hpp"
