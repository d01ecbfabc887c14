#include "orthoplex/taylor_series.hpp"

#include <cmath>
#include <stdexcept>

namespace orthoplex {

TaylorSeries::TaylorSeries(int order, double value, double slope) : c_(order + 1, 0.0) {
    if (order < 0) throw std::invalid_argument("TaylorSeries: negative order");
    c_[0] = value;
    if (order >= 1) c_[1] = slope;
}

TaylorSeries TaylorSeries::constant(int order, double value) {
    TaylorSeries t(order, value, 0.0);
    if (order >= 1) t.c_[1] = 0.0;
    return t;
}

double TaylorSeries::derivative(int i) const {
    double fact = 1.0;
    for (int j = 2; j <= i; ++j) fact *= j;
    return c_[i] * fact;
}

TaylorSeries operator+(const TaylorSeries& a, const TaylorSeries& b) {
    std::vector<double> c(a.c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.c_[i] + b.c_[i];
    return TaylorSeries(std::move(c));
}

TaylorSeries operator-(const TaylorSeries& a, const TaylorSeries& b) {
    std::vector<double> c(a.c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.c_[i] - b.c_[i];
    return TaylorSeries(std::move(c));
}

TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b) {
    std::vector<double> c(a.c_.size(), 0.0);
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; i + j < c.size() && j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return TaylorSeries(std::move(c));
}

TaylorSeries operator/(const TaylorSeries& a, const TaylorSeries& b) {
    if (b.c_[0] == 0.0) throw std::domain_error("TaylorSeries: division by zero constant term");
    std::vector<double> q(a.c_.size(), 0.0);
    for (size_t k = 0; k < q.size(); ++k) {
        double acc = a.c_[k];
        for (size_t j = 1; j <= k; ++j) acc -= b.c_[j] * q[k - j];
        q[k] = acc / b.c_[0];
    }
    return TaylorSeries(std::move(q));
}

TaylorSeries operator*(double a, const TaylorSeries& b) {
    std::vector<double> c(b.c_);
    for (double& x : c) x *= a;
    return TaylorSeries(std::move(c));
}

TaylorSeries operator+(double a, const TaylorSeries& b) {
    std::vector<double> c(b.c_);
    c[0] += a;
    return TaylorSeries(std::move(c));
}

TaylorSeries operator-(double a, const TaylorSeries& b) {
    std::vector<double> c(b.c_);
    for (double& x : c) x = -x;
    c[0] += a;
    return TaylorSeries(std::move(c));
}

TaylorSeries TaylorSeries::sqrt(const TaylorSeries& a) {
    if (!(a.c_[0] > 0.0)) throw std::domain_error("TaylorSeries: sqrt of non-positive constant term");
    std::vector<double> s(a.c_.size(), 0.0);
    s[0] = std::sqrt(a.c_[0]);
    for (size_t k = 1; k < s.size(); ++k) {
        double acc = a.c_[k];
        for (size_t j = 1; j < k; ++j) acc -= s[j] * s[k - j];
        s[k] = acc / (2.0 * s[0]);
    }
    return TaylorSeries(std::move(s));
}

TaylorSeries TaylorSeries::log(const TaylorSeries& a) {
    if (!(a.c_[0] > 0.0)) throw std::domain_error("TaylorSeries: log of non-positive constant term");
    // (ln a)' = a' / a, integrated term by term.
    std::vector<double> c(a.c_.size(), 0.0);
    c[0] = std::log(a.c_[0]);
    for (size_t k = 1; k < c.size(); ++k) {
        double acc = k * a.c_[k];
        for (size_t j = 1; j < k; ++j) acc -= static_cast<double>(j) * c[j] * a.c_[k - j];
        c[k] = acc / (static_cast<double>(k) * a.c_[0]);
    }
    return TaylorSeries(std::move(c));
}

TaylorSeries TaylorSeries::exp(const TaylorSeries& a) {
    std::vector<double> e(a.c_.size(), 0.0);
    e[0] = std::exp(a.c_[0]);
    for (size_t k = 1; k < e.size(); ++k) {
        double acc = 0.0;
        for (size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * a.c_[j] * e[k - j];
        e[k] = acc / static_cast<double>(k);
    }
    return TaylorSeries(std::move(e));
}

TaylorSeries TaylorSeries::cos(const TaylorSeries& a) {
    std::vector<double> c(a.c_.size(), 0.0), s(a.c_.size(), 0.0);
    c[0] = std::cos(a.c_[0]);
    s[0] = std::sin(a.c_[0]);
    for (size_t k = 1; k < c.size(); ++k) {
        double ac = 0.0, as = 0.0;
        for (size_t j = 1; j <= k; ++j) {
            ac -= static_cast<double>(j) * a.c_[j] * s[k - j];
            as += static_cast<double>(j) * a.c_[j] * c[k - j];
        }
        c[k] = ac / static_cast<double>(k);
        s[k] = as / static_cast<double>(k);
    }
    return TaylorSeries(std::move(c));
}

TaylorSeries TaylorSeries::pow_int(const TaylorSeries& a, long n) {
    if (n < 0) return TaylorSeries::constant(a.order(), 1.0) / pow_int(a, -n);
    TaylorSeries result = TaylorSeries::constant(a.order(), 1.0);
    TaylorSeries base = a;
    for (long e = n; e > 0; e >>= 1) {
        if (e & 1) result = result * base;
        base = base * base;
    }
    return result;
}

std::vector<double> entropy_slice_derivatives(double m, int max_order) {
    const TaylorSeries x(max_order, m, 1.0);
    const TaylorSeries w = 1.0 - x * x;
    const TaylorSeries r = TaylorSeries::sqrt(w);
    const TaylorSeries s = 1.0 + TaylorSeries::log(1.0 + r);
    std::vector<double> d(max_order + 1);
    for (int i = 0; i <= max_order; ++i) d[i] = s.derivative(i);
    return d;
}

}  // namespace orthoplex
