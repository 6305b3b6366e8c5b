#pragma once

#include <gtest/gtest.h>

#include <functional>

#include "zsc/common/error.hpp"

namespace zsc::testing {

inline ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::Invariant;
}

}  // namespace zsc::testing
