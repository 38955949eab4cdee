#pragma once
#include <optional>
#include <string>

#include "grid.hpp"
#include "linalg.hpp"
#include "types.hpp"

namespace pdm {

// Riskless rate, risky drifts and the volatility matrix of the market.
struct MarketParams {
    double r = 0.0;      // riskless rate, per year
    Vec mu;              // n risky drifts, per year
    SquareMatrix sigma;  // n x n volatility, per sqrt(year)

    std::size_t n() const { return mu.size(); }
};

struct Preferences {
    double rho = 0.0;    // subjective discount rate, per year
    double gamma = 0.0;  // relative risk aversion; gamma > 0, gamma != 1
    double k = 0.0;      // bequest weight
    double delta = 0.0;  // mortality intensity, per year
};

// Delay kernel on [-d, 0]. Named closed forms carry analytic integrals so the
// exact values can serve as test oracles; sampled kernels go through the
// shared trapezoid quadrature.
struct Kernel {
    enum class Type { Zero, Constant, Exponential, Sampled };

    Type type = Type::Zero;
    double value = 0.0;   // Constant: phi(s) = value
    double a = 0.0;       // Exponential: phi(s) = a * exp(lambda * s)
    double lambda = 0.0;
    Vec samples;          // Sampled: m+1 node values on the grid

    static Kernel zero() { return {}; }
    static Kernel constant(double v) {
        Kernel k; k.type = Type::Constant; k.value = v; return k;
    }
    static Kernel exponential(double a, double lambda) {
        Kernel k; k.type = Type::Exponential; k.a = a; k.lambda = lambda; return k;
    }
    static Kernel sampled(Vec values) {
        Kernel k; k.type = Type::Sampled; k.samples = std::move(values); return k;
    }

    bool is_zero() const { return type == Type::Zero; }
    bool analytic() const { return type != Type::Sampled; }
    double eval(double s) const;
    // Node values on the grid (samples themselves for sampled kernels).
    Vec on_grid(const DelayGrid& g) const;
    bool nonnegative_on_grid(const DelayGrid& g) const;
};

struct IncomeParams {
    double mu_y = 0.0;  // income drift, per year
    Vec sigma_y;        // n-vector income volatility loading, per sqrt(year)
    double d = 0.0;     // delay window length, years
    std::size_t m = 0;  // kernel/history grid resolution
    Kernel phi;

    DelayGrid grid() const { return DelayGrid(d, m); }
};

struct ValidationOptions {
    double hypothesis_margin = 1e-10;  // strict-inequality margin for the hypotheses
    double condition_threshold = 1e12; // sigma condition-number ceiling
    double gamma_exclusion = 1e-6;     // |gamma - 1| below this is rejected
};

struct ValidationIssue {
    ErrorCode code;
    std::string condition;  // the violated condition, human readable
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    // Values behind the hypothesis checks, for reporting.
    double beta = 0.0;
    double beta_inf = 0.0;
    double beta_bar_inf = 0.0;
    double nu_denominator = 0.0;
    double sigma_condition = 0.0;

    bool ok() const { return issues.empty(); }
    std::string to_text() const;
    void raise_if_failed() const;  // throws Error with the first issue's code
};

// Everything the closed-form solution needs, derived once per scenario and
// immutable afterwards. Shared read-only across simulation workers.
struct DerivedConstants {
    Vec kappa;               // market price of risk, sigma^{-1}(mu - r 1)
    double b = 0.0;          // 1 - 1/gamma
    double beta = 0.0;       // r + delta - mu_y + sigma_y' kappa
    double beta_inf = 0.0;
    double beta_bar_inf = 0.0;
    double g_inf = 0.0;      // 1 / (beta - beta_inf)
    Vec h_inf;               // m+1 node values on [-d, 0]
    double nu = 0.0;
    double f_inf = 0.0;      // (1 + delta k^{-b}) nu
    double gamma_star_drift = 0.0;  // r + delta + kappa'kappa/gamma - 1/nu
    Vec gamma_star_vol;      // kappa / gamma
    double kappa_sq = 0.0;   // kappa' kappa

    DelayGrid grid;
    Vec phi_grid;            // kernel sampled on the grid (drives the SDDE drift)
    double k_neg_b = 0.0;               // k^{-b}
    double delta_bequest_weight = 0.0;  // delta * k^{-b}
};

Vec compute_kappa(const MarketParams& market);

// (beta_inf, beta_bar_inf): discounted kernel mass with phi and |phi|.
// Analytic for named kernels, composite trapezoid on the m-grid otherwise.
std::pair<double, double> compute_beta_infinity(const IncomeParams& income, double r,
                                                double delta);

// g_inf = 1/(beta - beta_inf) and the h_inf grid; boundary values
// h(-d) = 0 exactly and h(0) = beta*g_inf - 1 up to quadrature.
std::pair<double, Vec> compute_g_h_infinity(const IncomeParams& income, double r,
                                            double delta, double beta, double beta_inf);

// (nu, f_inf, gamma_star_drift, gamma_star_vol).
struct NuF {
    double nu;
    double f_inf;
    double gamma_star_drift;
    Vec gamma_star_vol;
};
NuF compute_nu_f(const Preferences& prefs, const Vec& kappa, double r);

ValidationReport validate(const MarketParams& market, const Preferences& prefs,
                          const IncomeParams& income,
                          const ValidationOptions& opts = {});

// validate() first (throwing on failure), then assemble every constant.
DerivedConstants derive_constants(const MarketParams& market, const Preferences& prefs,
                                  const IncomeParams& income,
                                  const ValidationOptions& opts = {});

} // namespace pdm
