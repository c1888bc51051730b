// Shared helpers for the unit test suites.
#pragma once

#include <doctest.h>

#include "mirrorsim/errors.hpp"
#include "mirrorsim/params.hpp"

// Checks that an expression throws SimError with a specific error code.
#define CHECK_SIM_ERROR(expr, expected_code)                              \
  do {                                                                    \
    bool caught_sim_error_ = false;                                       \
    try {                                                                 \
      (void)(expr);                                                       \
    } catch (const mirrorsim::SimError& err_) {                           \
      caught_sim_error_ = true;                                           \
      CHECK_MESSAGE(err_.code() == (expected_code),                       \
                    "wrong error code, message was: " << err_.what());    \
    }                                                                     \
    CHECK_MESSAGE(caught_sim_error_, #expr " did not throw");             \
  } while (0)

namespace testutil {

// The asymmetrically driven atom used as the common reference point across
// suites: strong drive on 3-1, weaker repump on 3-2, slightly detuned.
inline mirrorsim::AtomParams reference_atom() {
  return {.omega1 = 10.0, .omega2 = 5.0, .delta1 = 2.0, .delta2 = 0.0,
          .gamma1 = 15.1, .gamma2 = 5.4};
}

}  // namespace testutil
