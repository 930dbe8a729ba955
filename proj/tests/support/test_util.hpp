#pragma once

#include "conformal/errors.hpp"
#include "conformal/expr.hpp"
#include "conformal/geometry.hpp"

#include <doctest.h>

#include <random>
#include <string>
#include <vector>

namespace conformal::testing {

inline const std::vector<std::string> kUV{"u", "v"};

inline TensorField tensor(const std::string& xx, const std::string& xy, const std::string& yy,
                          TensorRole role = TensorRole::general) {
  return TensorField::from_expressions(
      role, {{expr::Expression::parse(xx, kUV), expr::Expression::parse(xy, kUV), expr::Expression::parse(yy, kUV)}});
}

inline EASection section(std::function<cplx(cplx)> f) {
  return EASection([f = std::move(f)](int, const Vec2& p) { return f(to_complex(p)); });
}

template <class F>
ErrorKind error_kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::config;
}

}  // namespace conformal::testing

#define CHECK_ERROR_KIND(expr, kind) CHECK(::conformal::testing::error_kind_of([&] { (void)(expr); }) == (kind))
