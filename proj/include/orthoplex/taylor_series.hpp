#pragma once

#include <vector>

namespace orthoplex {

/// Truncated Taylor series about a point: c[i] holds f^(i)(x0) / i!.
/// Arithmetic on these yields derivatives of composite smooth functions to
/// roundoff accuracy, without symbolic manipulation or finite differences.
class TaylorSeries {
public:
    TaylorSeries(int order, double value, double slope);  // the variable itself
    static TaylorSeries constant(int order, double value);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    double coeff(int i) const { return c_[i]; }
    double derivative(int i) const;  // i! * c[i]

    friend TaylorSeries operator+(const TaylorSeries& a, const TaylorSeries& b);
    friend TaylorSeries operator-(const TaylorSeries& a, const TaylorSeries& b);
    friend TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b);
    friend TaylorSeries operator/(const TaylorSeries& a, const TaylorSeries& b);
    friend TaylorSeries operator*(double a, const TaylorSeries& b);
    friend TaylorSeries operator+(double a, const TaylorSeries& b);
    friend TaylorSeries operator-(double a, const TaylorSeries& b);

    static TaylorSeries sqrt(const TaylorSeries& a);  // requires a(x0) > 0
    static TaylorSeries log(const TaylorSeries& a);   // requires a(x0) > 0
    static TaylorSeries exp(const TaylorSeries& a);
    static TaylorSeries cos(const TaylorSeries& a);
    static TaylorSeries pow_int(const TaylorSeries& a, long n);

private:
    explicit TaylorSeries(std::vector<double> c) : c_(std::move(c)) {}
    std::vector<double> c_;
};

/// Derivatives of the limiting entropy slice s(m, 1) = 1 + ln(1 + sqrt(1 - m^2))
/// at an interior point, orders 0..max_order.
std::vector<double> entropy_slice_derivatives(double m, int max_order);

}  // namespace orthoplex
