#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace compwalk {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Invalid inputs, violated preconditions, failed validation. CLI exit code 1.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requests exceeding the configured memory/size budget. CLI exit code 2.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// C(n, k), exact; 0 outside 0 <= k <= n.
BigInt binomial(long n, long k);

/// num/den as the nearest double, safe for operands far beyond double range.
double ratio_as_double(const BigInt& num, const BigInt& den);
double rat_as_double(const BigRat& r);

inline bool is_integer(const BigRat& r) { return boost::multiprecision::denominator(r) == 1; }

/// "p/q" (or plain "p" when q == 1), the canonical exact serialization.
std::string rat_to_string(const BigRat& r);

/// Parses "p/q" or "p"; rejects q == 0 and malformed text.
BigRat parse_rational(std::string_view s);

/// Shortest decimal that round-trips to the same double.
std::string double_to_string(double v);

/// Exact integer square root; throws DomainError if v is not a perfect square.
BigInt exact_sqrt(const BigInt& v);

/// Exact square root of a rational (numerator and denominator must be squares).
BigRat exact_sqrt(const BigRat& v);

}  // namespace compwalk
