#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace hpcalc {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational factorial(int n) {
    Integer r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return Rational(r);
}

// (-1)^n as a rational, n may be negative
inline Rational sign_pow(long long n) {
    return (n % 2 == 0) ? Rational(1) : Rational(-1);
}

} // namespace hpcalc
