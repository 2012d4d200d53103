#ifndef QCGIRTH_QCGIRTH_HPP
#define QCGIRTH_QCGIRTH_HPP

#include "qcgirth/annealing.hpp"
#include "qcgirth/bounds.hpp"
#include "qcgirth/cycle_engine.hpp"
#include "qcgirth/error.hpp"
#include "qcgirth/expansion.hpp"
#include "qcgirth/shift_matrix.hpp"
#include "qcgirth/theorem_verifier.hpp"

#endif  // QCGIRTH_QCGIRTH_HPP
