#pragma once

#include <doctest.h>

#include "rsm/error.hpp"

// Asserts that `expr` throws rsm::Error of the given kind.
#define CHECK_THROWS_KIND(expr, expected_kind)                  \
  do {                                                          \
    bool thrown_ = false;                                       \
    try {                                                       \
      (void)(expr);                                             \
    } catch (const rsm::Error& e_) {                            \
      thrown_ = true;                                           \
      CHECK_MESSAGE(e_.kind() == (expected_kind), e_.what());   \
    }                                                           \
    CHECK_MESSAGE(thrown_, "expected rsm::Error from " #expr);  \
  } while (false)
