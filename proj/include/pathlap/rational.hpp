#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace pathlap {

using bigint = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

inline double to_double(const rational& q) { return q.template convert_to<double>(); }

inline bigint numerator(const rational& q) { return boost::multiprecision::numerator(q); }
inline bigint denominator(const rational& q) { return boost::multiprecision::denominator(q); }

} // namespace pathlap
