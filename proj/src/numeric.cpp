#include "compwalk/numeric.hpp"

#include <charconv>

namespace compwalk {

namespace mp = boost::multiprecision;

BigInt binomial(long n, long k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (k > n - k) k = n - k;
    BigInt c = 1;
    for (long i = 1; i <= k; ++i) {
        c *= n - k + i;
        c /= i;  // exact: C(n-k+i, i) is an integer
    }
    return c;
}

double ratio_as_double(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("ratio_as_double: zero denominator");
    if (num == 0) return 0.0;
    int sign = (num < 0) != (den < 0) ? -1 : 1;
    BigInt n = abs(num), d = abs(den);
    // Shift so that n*2^s/d carries ~80 significant bits, then divide in doubles.
    long s = 80 + static_cast<long>(msb(d)) - static_cast<long>(msb(n));
    if (s > 0) n <<= s; else d <<= -s;
    BigInt q = n / d;
    double mant = q.convert_to<double>();
    double v = std::ldexp(mant, static_cast<int>(-s));
    return sign * v;
}

double rat_as_double(const BigRat& r) {
    return ratio_as_double(mp::numerator(r), mp::denominator(r));
}

std::string rat_to_string(const BigRat& r) {
    const BigInt& den = mp::denominator(r);
    std::string s = mp::numerator(r).str();
    if (den != 1) {
        s += '/';
        s += den.str();
    }
    return s;
}

BigRat parse_rational(std::string_view s) {
    if (s.empty()) throw DomainError("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) return BigRat(BigInt(std::string(s)));
        BigInt num{std::string(s.substr(0, slash))};
        BigInt den{std::string(s.substr(slash + 1))};
        if (den == 0) throw DomainError("zero denominator in rational literal");
        return BigRat(num, den);
    } catch (const DomainError&) {
        throw;
    } catch (const std::exception&) {
        throw DomainError("malformed rational literal: " + std::string(s));
    }
}

std::string double_to_string(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

BigInt exact_sqrt(const BigInt& v) {
    if (v < 0) throw DomainError("exact_sqrt of negative value");
    BigInt r = sqrt(v);
    if (r * r != v) throw DomainError("exact_sqrt: not a perfect square");
    return r;
}

BigRat exact_sqrt(const BigRat& v) {
    return BigRat(exact_sqrt(mp::numerator(v)), exact_sqrt(mp::denominator(v)));
}

}  // namespace compwalk
