#include "procaab/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "procaab/errors.hpp"

namespace procaab::bessel {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kEulerGamma = std::numbers::egamma;
constexpr int kMaxTerms = 500;

void require_nonnegative(double x, const char* name) {
    if (!(x >= 0.0)) throw InvalidInput(std::string(name) + ": argument must be >= 0");
}

void require_positive(double x, const char* name) {
    if (!(x > 0.0)) throw InvalidInput(std::string(name) + ": argument must be > 0");
}

// sum_{k>=k0} (x^2/4)^k / (k! (k+order)!), order in {0, 1}.
double i_series_tail(double x, int order, int first_k) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    for (int k = 1; k <= first_k; ++k) term *= q / (k * (k + order));
    double sum = 0.0;
    for (int k = first_k; k < first_k + kMaxTerms; ++k) {
        sum += term;
        if (term <= kEps * sum) break;
        term *= q / ((k + 1) * (k + 1 + order));
    }
    return sum;
}

// e^{-x} sqrt(2 pi x) I_nu(x) ~ sum_k (-1)^k prod_{i<=k} (mu - (2i-1)^2) / (k! (8x)^k)
double i_asymptotic_scaled(double x, int order) {
    const double mu = 4.0 * order * order;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < kMaxTerms; ++k) {
        const double next = -term * (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
        if (std::abs(next) >= std::abs(term)) break;  // series has started to diverge
        term = next;
        sum += term;
        if (std::abs(term) <= kEps * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

struct KPair {
    double k0;
    double k1;
};

// Small-argument series. k1 is returned without its leading 1/x.
KPair k_series_reduced(double x) {
    const double q = 0.25 * x * x;
    const double log_half = std::log(0.5 * x);

    // K_0 = -(ln(x/2) + gamma) I_0 + sum_{k>=1} H_k q^k / (k!)^2
    double term = 1.0;
    double harmonic = 0.0;
    double k0_sum = 0.0;
    // K_1 - 1/x = ln(x/2) I_1 - (x/4) sum_{k>=0} (H_k + H_{k+1} - 2 gamma) q^k / (k! (k+1)!)
    double term1 = 1.0;
    double k1_sum = 0.0;
    for (int k = 0; k < kMaxTerms; ++k) {
        const double h_next = harmonic + 1.0 / (k + 1);
        const double c0 = harmonic * term;
        const double c1 = (harmonic + h_next - 2.0 * kEulerGamma) * term1;
        k0_sum += c0;
        k1_sum += c1;
        if (k > 0 && std::abs(c0) <= kEps * std::abs(k0_sum) && std::abs(c1) <= kEps * std::abs(k1_sum)) {
            break;
        }
        harmonic = h_next;
        term *= q / ((k + 1.0) * (k + 1.0));
        term1 *= q / ((k + 1.0) * (k + 2.0));
    }
    const double i0v = i_series_tail(x, 0, 0);
    const double i1v = 0.5 * x * i_series_tail(x, 1, 0);
    return {-(log_half + kEulerGamma) * i0v + k0_sum, log_half * i1v - 0.25 * x * k1_sum};
}

// Steed's CF2 (Temme's normalisation) for nu = 0; returns e^x K_0, e^x K_1.
KPair k_continued_fraction_scaled(double x) {
    constexpr double a1 = 0.25;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    int i = 2;
    for (; i <= kMaxTerms; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < kEps) break;
    }
    if (i > kMaxTerms) throw ConvergenceError("bessel K: continued fraction did not converge");
    h *= a1;
    const double k0s = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
    return {k0s, k0s * (x + 0.5 - h) / x};
}

KPair k_scaled(double x) {
    if (x <= kKSeriesCrossover) {
        const auto r = k_series_reduced(x);
        const double ex = std::exp(x);
        return {r.k0 * ex, (r.k1 + 1.0 / x) * ex};
    }
    return k_continued_fraction_scaled(x);
}

}  // namespace

double i0_scaled(double x) {
    require_nonnegative(x, "i0_scaled");
    if (x <= kIAsymptoticCrossover) return std::exp(-x) * i_series_tail(x, 0, 0);
    return i_asymptotic_scaled(x, 0);
}

double i1_scaled(double x) {
    require_nonnegative(x, "i1_scaled");
    if (x <= kIAsymptoticCrossover) return std::exp(-x) * 0.5 * x * i_series_tail(x, 1, 0);
    return i_asymptotic_scaled(x, 1);
}

double i0(double x) {
    require_nonnegative(x, "i0");
    if (x <= kIAsymptoticCrossover) return i_series_tail(x, 0, 0);
    return i_asymptotic_scaled(x, 0) * std::exp(x);
}

double i1(double x) {
    require_nonnegative(x, "i1");
    if (x <= kIAsymptoticCrossover) return 0.5 * x * i_series_tail(x, 1, 0);
    return i_asymptotic_scaled(x, 1) * std::exp(x);
}

double k0_scaled(double x) {
    require_positive(x, "k0_scaled");
    return k_scaled(x).k0;
}

double k1_scaled(double x) {
    require_positive(x, "k1_scaled");
    return k_scaled(x).k1;
}

double k0(double x) {
    require_positive(x, "k0");
    if (x <= kKSeriesCrossover) return k_series_reduced(x).k0;
    return k_continued_fraction_scaled(x).k0 * std::exp(-x);
}

double k1(double x) {
    require_positive(x, "k1");
    if (x <= kKSeriesCrossover) return k_series_reduced(x).k1 + 1.0 / x;
    return k_continued_fraction_scaled(x).k1 * std::exp(-x);
}

double i0_minus_one(double x) {
    require_nonnegative(x, "i0_minus_one");
    if (x <= kKSeriesCrossover) return i_series_tail(x, 0, 1);
    return i0(x) - 1.0;
}

double i1_ratio_minus_one(double x) {
    require_nonnegative(x, "i1_ratio_minus_one");
    if (x <= kKSeriesCrossover) return i_series_tail(x, 1, 1);
    return 2.0 * i1(x) / x - 1.0;
}

double k1_minus_reciprocal(double x) {
    require_positive(x, "k1_minus_reciprocal");
    if (x <= kKSeriesCrossover) return k_series_reduced(x).k1;
    return k1(x) - 1.0 / x;
}

}  // namespace procaab::bessel
