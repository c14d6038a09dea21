#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace tcp {

// All chain coefficients and matrix entries are arbitrary-precision:
// perturbation series and Smith normal form intermediates overflow
// any fixed width.
using Int = boost::multiprecision::cpp_int;

inline int sign_of(const Int& v) { return v.sign(); }

}  // namespace tcp
