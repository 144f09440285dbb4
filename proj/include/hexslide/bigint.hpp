#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace hexslide {

using BigInt = boost::multiprecision::cpp_int;

BigInt factorial(int n);
BigInt binomial(int n, int k);

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace hexslide
