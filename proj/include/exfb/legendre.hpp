#pragma once

#include <vector>

namespace exfb {

struct GaussRule {
    std::vector<double> nodes;   // ascending in (-1, 1)
    std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1]. Rules are cached; the reference stays valid.
const GaussRule& gauss_legendre(int n);

// Gauss-Legendre rule mapped to [a, b].
GaussRule gauss_legendre(int n, double a, double b);

// P_0..P_L at x, and optionally first and second derivatives in x.
void legendre_values(int L, double x, double* p, double* dp = nullptr, double* ddp = nullptr);

struct SeriesValue {
    double f = 0, df = 0, ddf = 0;
};

// Sum c_l P_l(x) with derivatives in x.
SeriesValue legendre_series(const std::vector<double>& c, double x);

// Sum c_l P_l(x) without derivatives.
double legendre_sum(const std::vector<double>& c, double x);

// Barycentric interpolation on the nodes of a Gauss rule.
class GaussInterpolant {
public:
    explicit GaussInterpolant(int n);
    int size() const { return static_cast<int>(nodes_.size()); }
    const std::vector<double>& nodes() const { return nodes_; }
    // Row of interpolation weights: f(x) = sum_j row[j] f_j.
    void weights_at(double x, double* row) const;
    double operator()(const double* values, double x) const;

private:
    std::vector<double> nodes_;
    std::vector<double> lambda_;
};

} // namespace exfb
