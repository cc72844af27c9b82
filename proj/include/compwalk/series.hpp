#pragma once

#include "compwalk/numeric.hpp"

#include <vector>

namespace compwalk {

/// Truncated univariate formal power series with exact rational coefficients.
/// Arithmetic keeps coefficients through the minimum truncation order.
class Series1 {
  public:
    Series1() = default;
    explicit Series1(int order) : coeffs_(order + 1) {
        if (order < 0) throw DomainError("Series1: negative order");
    }
    static Series1 from_coeffs(std::vector<BigRat> coeffs);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const BigRat& coeff(int i) const { return coeffs_.at(i); }
    BigRat& at(int i) { return coeffs_.at(i); }

    Series1 operator+(const Series1& o) const;
    Series1 operator-(const Series1& o) const;
    Series1 operator*(const Series1& o) const;
    bool operator==(const Series1& o) const { return coeffs_ == o.coeffs_; }

  private:
    std::vector<BigRat> coeffs_;
};

/// a / b; requires b(0) != 0.
Series1 div(const Series1& a, const Series1& b);

/// Branch with s(0) = +sqrt(a(0)); requires a(0) to be a square rational != 0.
Series1 sqrt(const Series1& a);

/// Truncated bivariate series, rectangular truncation (x-degree, y-degree).
class Series2 {
  public:
    Series2() = default;
    Series2(int order_x, int order_y);
    static Series2 monomial(int dx, int dy, const BigRat& c, int order_x, int order_y);

    int order_x() const { return static_cast<int>(coeffs_.size()) - 1; }
    int order_y() const { return coeffs_.empty() ? -1 : static_cast<int>(coeffs_[0].size()) - 1; }
    const BigRat& coeff(int n, int k) const { return coeffs_.at(n).at(k); }
    BigRat& at(int n, int k) { return coeffs_.at(n).at(k); }

    Series2 operator+(const Series2& o) const;
    Series2 operator-(const Series2& o) const;
    Series2 operator*(const Series2& o) const;
    bool operator==(const Series2& o) const { return coeffs_ == o.coeffs_; }

  private:
    std::vector<std::vector<BigRat>> coeffs_;  // [x-degree][y-degree]
};

Series2 div(const Series2& a, const Series2& b);
Series2 sqrt(const Series2& a);

/// z / (sqrt(1-4z) + z); coefficient n is the irreducible-pair count f(n).
Series1 thm1_series(int order);

/// xy (sqrt(1 + x^2(1-y)^2 - 2x(1+y)) - xy) / (1 - 2x(1+y) + x^2(1-2y));
/// coefficient (n, k) is f(n, k).
Series2 thm1_series_2d(int order_x, int order_y);

/// Legendre polynomial P_n at a rational argument, by the three-term recurrence.
BigRat legendre_p(int n, const BigRat& x);

/// Exact check of sum_k C(n,k)^2 y^k == (1-y)^n P_n((1+y)/(1-y)).
/// At y == 1 the pole is sidestepped by checking sum_k C(n,k)^2 == C(2n,n).
bool legendre_identity_check(int n, const BigRat& y);

/// Expands F/(1-F) (F from thm1_series_2d) and xy/sqrt(1 - 2x(1+y) + x^2(1-y)^2)
/// and confirms both match C(n-1,k-1)^2 coefficientwise.
bool master_gf_check(int order_x, int order_y);

}  // namespace compwalk
