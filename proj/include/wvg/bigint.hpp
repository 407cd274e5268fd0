#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace wvg {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

BigInt pow2(int e);
BigInt pow10(int e);

/// ceil(log2 n) for n >= 1.
int ceil_log2(const BigInt& n);

/// floor(log2 n) for n >= 1.
int floor_log2(const BigInt& n);

BigInt factorial(int n);
BigInt binomial(int n, int k);

/// Exponents of the binary representation of v, strictly descending.
/// binary_exponents(11) == {3, 1, 0}; binary_exponents(0) == {}.
std::vector<int> binary_exponents(const BigInt& v);

BigRat ceil_rational(const BigRat& v);
BigRat floor_rational(const BigRat& v);

/// Strict decimal integer parser: optional leading '-', digits only,
/// no leading zeros (except "0" itself). Throws InvalidArgumentError.
BigInt parse_decimal(std::string_view text);

std::string to_decimal(const BigInt& v);

/// "num/den" with den > 0 and gcd(num, den) == 1; "3/4", "1/1", "0/1".
std::string to_fraction(const BigRat& v);

/// Inverse of to_fraction; also accepts a bare integer ("7" == "7/1").
BigRat parse_fraction(std::string_view text);

} // namespace wvg
