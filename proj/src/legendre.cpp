#include "exfb/legendre.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "exfb/errors.hpp"

namespace exfb {

namespace {

GaussRule build_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
        }
        const double w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0;
    return rule;
}

// Recurrence factors (2l+1)/(l+1) and l/(l+1), so the hot loops avoid division.
struct RecurrenceTable {
    static constexpr int size = 4096;
    double a[size], b[size];
    RecurrenceTable() {
        for (int l = 0; l < size; ++l) {
            a[l] = (2.0 * l + 1) / (l + 1);
            b[l] = double(l) / (l + 1);
        }
    }
};

const RecurrenceTable& table() {
    static const RecurrenceTable t;
    return t;
}

} // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 1) throw InvalidArgument("gauss_legendre: need at least one node");
    static std::mutex lock;
    static std::map<int, std::unique_ptr<GaussRule>> cache;
    std::lock_guard guard(lock);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<GaussRule>(build_rule(n));
    return *slot;
}

GaussRule gauss_legendre(int n, double a, double b) {
    GaussRule rule = gauss_legendre(n);
    const double h = 0.5 * (b - a), m = 0.5 * (a + b);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = m + h * rule.nodes[i];
        rule.weights[i] *= h;
    }
    return rule;
}

void legendre_values(int L, double x, double* p, double* dp, double* ddp) {
    if (L >= RecurrenceTable::size) throw InvalidArgument("legendre_values: degree too large");
    const RecurrenceTable& t = table();
    p[0] = 1;
    if (dp) dp[0] = 0;
    if (ddp) ddp[0] = 0;
    if (L == 0) return;
    p[1] = x;
    for (int l = 1; l < L; ++l) p[l + 1] = t.a[l] * x * p[l] - t.b[l] * p[l - 1];
    if (dp) {
        // P'_{l+1} = P'_{l-1} + (2l+1) P_l, and the same one level up for P''.
        dp[1] = 1;
        for (int l = 1; l < L; ++l) dp[l + 1] = dp[l - 1] + (2 * l + 1) * p[l];
    }
    if (ddp) {
        ddp[1] = 0;
        for (int l = 1; l < L; ++l) ddp[l + 1] = ddp[l - 1] + (2 * l + 1) * dp[l];
    }
}

SeriesValue legendre_series(const std::vector<double>& c, double x) {
    SeriesValue s;
    if (c.empty()) return s;
    const RecurrenceTable& t = table();
    const int L = static_cast<int>(c.size()) - 1;
    double p0 = 1, p1 = x, d0 = 0, d1 = 1, e0 = 0, e1 = 0;
    s.f = c[0];
    if (L >= 1) {
        s.f += c[1] * x;
        s.df += c[1];
    }
    for (int l = 1; l < L; ++l) {
        const double p2 = t.a[l] * x * p1 - t.b[l] * p0;
        const double d2 = d0 + (2 * l + 1) * p1;
        const double e2 = e0 + (2 * l + 1) * d1;
        s.f += c[l + 1] * p2;
        s.df += c[l + 1] * d2;
        s.ddf += c[l + 1] * e2;
        p0 = p1; p1 = p2;
        d0 = d1; d1 = d2;
        e0 = e1; e1 = e2;
    }
    return s;
}

double legendre_sum(const std::vector<double>& c, double x) {
    if (c.empty()) return 0;
    const RecurrenceTable& t = table();
    double p0 = 1, p1 = x, v = c[0];
    if (c.size() > 1) v += c[1] * x;
    for (std::size_t l = 1; l + 1 < c.size(); ++l) {
        const double p2 = t.a[l] * x * p1 - t.b[l] * p0;
        v += c[l + 1] * p2;
        p0 = p1;
        p1 = p2;
    }
    return v;
}

GaussInterpolant::GaussInterpolant(int n) {
    const GaussRule& rule = gauss_legendre(n);
    nodes_ = rule.nodes;
    lambda_.resize(n);
    for (int j = 0; j < n; ++j) {
        const double x = rule.nodes[j];
        lambda_[j] = ((j % 2) ? -1.0 : 1.0) * std::sqrt((1 - x * x) * rule.weights[j]);
    }
}

void GaussInterpolant::weights_at(double x, double* row) const {
    const int n = size();
    double total = 0;
    for (int j = 0; j < n; ++j) {
        const double d = x - nodes_[j];
        if (d == 0) {
            for (int k = 0; k < n; ++k) row[k] = 0;
            row[j] = 1;
            return;
        }
        row[j] = lambda_[j] / d;
        total += row[j];
    }
    for (int j = 0; j < n; ++j) row[j] /= total;
}

double GaussInterpolant::operator()(const double* values, double x) const {
    const int n = size();
    double num = 0, den = 0;
    for (int j = 0; j < n; ++j) {
        const double d = x - nodes_[j];
        if (d == 0) return values[j];
        const double t = lambda_[j] / d;
        num += t * values[j];
        den += t;
    }
    return num / den;
}

} // namespace exfb
