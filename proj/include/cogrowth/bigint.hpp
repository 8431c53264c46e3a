#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace cogrowth {

/// Exact integer used for every count and coefficient in the library.
using BigInt = boost::multiprecision::cpp_int;

}  // namespace cogrowth
