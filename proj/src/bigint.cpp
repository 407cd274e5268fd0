#include "wvg/bigint.hpp"

#include "wvg/errors.hpp"

#include <boost/multiprecision/integer.hpp>

namespace wvg {

BigInt pow2(int e) {
    if (e < 0)
        throw InvalidArgumentError("pow2: negative exponent");
    return BigInt(1) << e;
}

BigInt pow10(int e) {
    if (e < 0)
        throw InvalidArgumentError("pow10: negative exponent");
    BigInt r = 1;
    BigInt base = 10;
    int n = e;
    while (n > 0) {
        if (n & 1)
            r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

int floor_log2(const BigInt& n) {
    if (n <= 0)
        throw InvalidArgumentError("floor_log2: argument must be positive");
    return static_cast<int>(boost::multiprecision::msb(n));
}

int ceil_log2(const BigInt& n) {
    if (n <= 0)
        throw InvalidArgumentError("ceil_log2: argument must be positive");
    int f = floor_log2(n);
    return (pow2(f) == n) ? f : f + 1;
}

BigInt factorial(int n) {
    if (n < 0)
        throw InvalidArgumentError("factorial: negative argument");
    BigInt r = 1;
    for (int i = 2; i <= n; ++i)
        r *= i;
    return r;
}

BigInt binomial(int n, int k) {
    if (n < 0 || k < 0)
        throw InvalidArgumentError("binomial: negative argument");
    if (k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

std::vector<int> binary_exponents(const BigInt& v) {
    if (v < 0)
        throw InvalidArgumentError("binary_exponents: negative argument");
    std::vector<int> exps;
    for (int b = (v == 0) ? -1 : floor_log2(v); b >= 0; --b)
        if (boost::multiprecision::bit_test(v, static_cast<unsigned>(b)))
            exps.push_back(b);
    return exps;
}

BigRat floor_rational(const BigRat& v) {
    BigInt num = boost::multiprecision::numerator(v);
    BigInt den = boost::multiprecision::denominator(v);
    BigInt q = num / den;
    if (num < 0 && q * den != num)
        --q;
    return BigRat(q);
}

BigRat ceil_rational(const BigRat& v) {
    return -floor_rational(-v);
}

BigInt parse_decimal(std::string_view text) {
    std::string_view digits = text;
    bool neg = false;
    if (!digits.empty() && digits.front() == '-') {
        neg = true;
        digits.remove_prefix(1);
    }
    if (digits.empty())
        throw InvalidArgumentError("parse_decimal: empty input");
    for (char c : digits)
        if (c < '0' || c > '9')
            throw InvalidArgumentError("parse_decimal: non-digit in \"" + std::string(text) + "\"");
    if (digits.size() > 1 && digits.front() == '0')
        throw InvalidArgumentError("parse_decimal: leading zeros in \"" + std::string(text) + "\"");
    BigInt v{std::string(digits)};
    return neg ? BigInt(-v) : v;
}

std::string to_decimal(const BigInt& v) {
    return v.str();
}

std::string to_fraction(const BigRat& v) {
    return boost::multiprecision::numerator(v).str() + "/" +
           boost::multiprecision::denominator(v).str();
}

BigRat parse_fraction(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return BigRat(parse_decimal(text));
    BigInt num = parse_decimal(text.substr(0, slash));
    BigInt den = parse_decimal(text.substr(slash + 1));
    if (den <= 0)
        throw InvalidArgumentError("parse_fraction: denominator must be positive");
    return BigRat(num, den);
}

} // namespace wvg
