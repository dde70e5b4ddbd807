#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string_view>

namespace mems {

using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& q);

// Parses "12", "-3/4", "2.8" or "1e-3" exactly.
Rational parse_rational(std::string_view text);

// (8/9)(N - 2/3)(N - 8/3)
Rational lambda_bar_exact(int N);
double lambda_bar(int N);

// N^2 (N-4)^2 / 16
Rational hardy_constant_exact(int N);
double hardy_constant(int N);

}  // namespace mems
