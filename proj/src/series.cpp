#include "compwalk/series.hpp"

#include <algorithm>

namespace compwalk {

namespace {

int min_order(int a, int b) { return std::min(a, b); }

}  // namespace

Series1 Series1::from_coeffs(std::vector<BigRat> coeffs) {
    if (coeffs.empty()) throw DomainError("Series1: empty coefficient list");
    Series1 s;
    s.coeffs_ = std::move(coeffs);
    return s;
}

Series1 Series1::operator+(const Series1& o) const {
    Series1 r(min_order(order(), o.order()));
    for (int i = 0; i <= r.order(); ++i) r.coeffs_[i] = coeffs_[i] + o.coeffs_[i];
    return r;
}

Series1 Series1::operator-(const Series1& o) const {
    Series1 r(min_order(order(), o.order()));
    for (int i = 0; i <= r.order(); ++i) r.coeffs_[i] = coeffs_[i] - o.coeffs_[i];
    return r;
}

Series1 Series1::operator*(const Series1& o) const {
    Series1 r(min_order(order(), o.order()));
    for (int i = 0; i <= r.order(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (int j = 0; i + j <= r.order(); ++j) {
            if (o.coeffs_[j] == 0) continue;
            r.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
        }
    }
    return r;
}

Series1 div(const Series1& a, const Series1& b) {
    if (b.coeff(0) == 0) throw DomainError("series division by series with zero constant term");
    Series1 q(min_order(a.order(), b.order()));
    for (int n = 0; n <= q.order(); ++n) {
        BigRat s = a.coeff(n);
        for (int j = 0; j < n; ++j) s -= q.coeff(j) * b.coeff(n - j);
        q.at(n) = s / b.coeff(0);
    }
    return q;
}

Series1 sqrt(const Series1& a) {
    if (a.coeff(0) == 0) throw DomainError("series sqrt with zero constant term");
    Series1 s(a.order());
    s.at(0) = exact_sqrt(a.coeff(0));
    const BigRat twice_s0 = 2 * s.coeff(0);
    for (int n = 1; n <= s.order(); ++n) {
        BigRat acc = a.coeff(n);
        for (int j = 1; j < n; ++j) acc -= s.coeff(j) * s.coeff(n - j);
        s.at(n) = acc / twice_s0;
    }
    return s;
}

Series2::Series2(int order_x, int order_y) {
    if (order_x < 0 || order_y < 0) throw DomainError("Series2: negative order");
    coeffs_.assign(order_x + 1, std::vector<BigRat>(order_y + 1));
}

Series2 Series2::monomial(int dx, int dy, const BigRat& c, int order_x, int order_y) {
    Series2 s(order_x, order_y);
    if (dx <= order_x && dy <= order_y) s.at(dx, dy) = c;
    return s;
}

Series2 Series2::operator+(const Series2& o) const {
    Series2 r(min_order(order_x(), o.order_x()), min_order(order_y(), o.order_y()));
    for (int n = 0; n <= r.order_x(); ++n)
        for (int k = 0; k <= r.order_y(); ++k) r.coeffs_[n][k] = coeffs_[n][k] + o.coeffs_[n][k];
    return r;
}

Series2 Series2::operator-(const Series2& o) const {
    Series2 r(min_order(order_x(), o.order_x()), min_order(order_y(), o.order_y()));
    for (int n = 0; n <= r.order_x(); ++n)
        for (int k = 0; k <= r.order_y(); ++k) r.coeffs_[n][k] = coeffs_[n][k] - o.coeffs_[n][k];
    return r;
}

Series2 Series2::operator*(const Series2& o) const {
    Series2 r(min_order(order_x(), o.order_x()), min_order(order_y(), o.order_y()));
    for (int i = 0; i <= r.order_x(); ++i)
        for (int j = 0; j <= r.order_y(); ++j) {
            if (coeffs_[i][j] == 0) continue;
            for (int m = 0; i + m <= r.order_x(); ++m)
                for (int l = 0; j + l <= r.order_y(); ++l) {
                    if (o.coeffs_[m][l] == 0) continue;
                    r.coeffs_[i + m][j + l] += coeffs_[i][j] * o.coeffs_[m][l];
                }
        }
    return r;
}

Series2 div(const Series2& a, const Series2& b) {
    if (b.coeff(0, 0) == 0) throw DomainError("series division by series with zero constant term");
    Series2 q(min_order(a.order_x(), b.order_x()), min_order(a.order_y(), b.order_y()));
    for (int n = 0; n <= q.order_x(); ++n)
        for (int k = 0; k <= q.order_y(); ++k) {
            BigRat s = a.coeff(n, k);
            for (int i = 0; i <= n; ++i)
                for (int j = 0; j <= k; ++j) {
                    if (i == n && j == k) continue;
                    if (q.coeff(i, j) == 0) continue;
                    s -= q.coeff(i, j) * b.coeff(n - i, k - j);
                }
            q.at(n, k) = s / b.coeff(0, 0);
        }
    return q;
}

Series2 sqrt(const Series2& a) {
    if (a.coeff(0, 0) == 0) throw DomainError("series sqrt with zero constant term");
    Series2 s(a.order_x(), a.order_y());
    s.at(0, 0) = exact_sqrt(a.coeff(0, 0));
    const BigRat twice_s00 = 2 * s.coeff(0, 0);
    for (int n = 0; n <= s.order_x(); ++n)
        for (int k = 0; k <= s.order_y(); ++k) {
            if (n == 0 && k == 0) continue;
            BigRat acc = a.coeff(n, k);
            for (int i = 0; i <= n; ++i)
                for (int j = 0; j <= k; ++j) {
                    if ((i == 0 && j == 0) || (i == n && j == k)) continue;
                    if (s.coeff(i, j) == 0) continue;
                    acc -= s.coeff(i, j) * s.coeff(n - i, k - j);
                }
            s.at(n, k) = acc / twice_s00;
        }
    return s;
}

Series1 thm1_series(int order) {
    if (order < 1) throw DomainError("thm1_series: need order >= 1");
    Series1 radicand(order);
    radicand.at(0) = 1;
    radicand.at(1) = -4;
    Series1 denom = sqrt(radicand);
    denom.at(1) += 1;  // sqrt(1-4z) + z
    Series1 num(order);
    num.at(1) = 1;
    return div(num, denom);
}

namespace {

// 1 - 2x(1+y) + x^2(1-y)^2, the shared radicand of both generating functions.
Series2 radicand_2d(int ox, int oy) {
    Series2 a(ox, oy);
    a.at(0, 0) = 1;
    if (ox >= 1) {
        a.at(1, 0) = -2;
        if (oy >= 1) a.at(1, 1) = -2;
    }
    if (ox >= 2) {
        a.at(2, 0) = 1;
        if (oy >= 1) a.at(2, 1) = -2;
        if (oy >= 2) a.at(2, 2) = 1;
    }
    return a;
}

}  // namespace

Series2 thm1_series_2d(int order_x, int order_y) {
    if (order_x < 1 || order_y < 1) throw DomainError("thm1_series_2d: need orders >= 1");
    const int ox = order_x, oy = order_y;
    Series2 num = sqrt(radicand_2d(ox, oy));
    if (oy >= 1) num.at(1, 1) -= 1;                         // sqrt(A) - xy
    num = num * Series2::monomial(1, 1, BigRat(1), ox, oy);  // xy (sqrt(A) - xy)
    Series2 den(ox, oy);  // 1 - 2x(1+y) + x^2(1-2y)
    den.at(0, 0) = 1;
    den.at(1, 0) = -2;
    if (oy >= 1) den.at(1, 1) = -2;
    if (ox >= 2) {
        den.at(2, 0) = 1;
        if (oy >= 1) den.at(2, 1) = -2;
    }
    return div(num, den);
}

BigRat legendre_p(int n, const BigRat& x) {
    if (n < 0) throw DomainError("legendre_p: need n >= 0");
    if (n == 0) return BigRat(1);
    BigRat prev(1), cur = x;
    for (int m = 1; m < n; ++m) {
        BigRat next = (BigRat(2 * m + 1) * x * cur - BigRat(m) * prev) / BigRat(m + 1);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

bool legendre_identity_check(int n, const BigRat& y) {
    if (n < 0) throw DomainError("legendre_identity_check: need n >= 0");
    BigRat lhs;
    BigRat ypow(1);
    for (int k = 0; k <= n; ++k) {
        BigInt b = binomial(n, k);
        lhs += BigRat(b * b) * ypow;
        ypow *= y;
    }
    if (y == 1) return lhs == BigRat(binomial(2 * n, n));
    BigRat one_minus = 1 - y;
    BigRat arg = (1 + y) / one_minus;
    BigRat rhs = legendre_p(n, arg);
    for (int i = 0; i < n; ++i) rhs *= one_minus;
    return lhs == rhs;
}

bool master_gf_check(int order_x, int order_y) {
    const int ox = order_x, oy = order_y;
    Series2 f = thm1_series_2d(ox, oy);
    Series2 one_minus_f(ox, oy);
    one_minus_f.at(0, 0) = 1;
    one_minus_f = one_minus_f - f;
    Series2 lhs = div(f, one_minus_f);

    Series2 xy = Series2::monomial(1, 1, BigRat(1), ox, oy);
    Series2 rhs = div(xy, sqrt(radicand_2d(ox, oy)));

    if (!(lhs == rhs)) return false;
    for (int n = 0; n <= ox; ++n)
        for (int k = 0; k <= oy; ++k) {
            BigInt expected = 0;
            if (n >= 1 && k >= 1) {
                BigInt b = binomial(n - 1, k - 1);
                expected = b * b;
            }
            if (rhs.coeff(n, k) != BigRat(expected)) return false;
        }
    return true;
}

}  // namespace compwalk
