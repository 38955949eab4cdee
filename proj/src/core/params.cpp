#include "params.hpp"

#include <cmath>
#include <sstream>
#include <tuple>

namespace pdm {

double Kernel::eval(double s) const {
    switch (type) {
        case Type::Zero: return 0.0;
        case Type::Constant: return value;
        case Type::Exponential: return a * std::exp(lambda * s);
        case Type::Sampled:
            throw Error(ErrorCode::InvalidArgument,
                        "sampled kernels are defined on the grid only");
    }
    return 0.0;
}

Vec Kernel::on_grid(const DelayGrid& g) const {
    if (type == Type::Sampled) {
        if (samples.size() != g.nodes())
            throw Error(ErrorCode::GridMismatch, "sampled kernel must have m+1 values");
        return samples;
    }
    Vec out(g.nodes());
    for (std::size_t j = 0; j < g.nodes(); ++j) out[j] = eval(g.node(j));
    return out;
}

bool Kernel::nonnegative_on_grid(const DelayGrid& g) const {
    for (double v : on_grid(g))
        if (v < 0.0) return false;
    return true;
}

namespace {

// Discounted mass of an exponential-family kernel: integral over [-d,0] of
// amp * e^{rate*s} * e^{(r+delta)*s} ds.
double exp_kernel_mass(double amp, double rate, double r_delta, double d) {
    return amp * discounted_window_mass(rate + r_delta, d);
}

} // namespace

std::pair<double, double> compute_beta_infinity(const IncomeParams& income, double r,
                                                double delta) {
    const double rd = r + delta;
    const DelayGrid g = income.grid();
    switch (income.phi.type) {
        case Kernel::Type::Zero:
            return {0.0, 0.0};
        case Kernel::Type::Constant: {
            double b = exp_kernel_mass(income.phi.value, 0.0, rd, income.d);
            return {b, std::abs(b)};
        }
        case Kernel::Type::Exponential: {
            double b = exp_kernel_mass(income.phi.a, income.phi.lambda, rd, income.d);
            return {b, std::abs(b)};
        }
        case Kernel::Type::Sampled: {
            const Vec phi = income.phi.on_grid(g);
            Vec disc(g.nodes()), disc_abs(g.nodes());
            for (std::size_t j = 0; j < g.nodes(); ++j) {
                double w = std::exp(rd * g.node(j));
                disc[j] = w * phi[j];
                disc_abs[j] = w * std::abs(phi[j]);
            }
            return {trapezoid_integral(g, disc), trapezoid_integral(g, disc_abs)};
        }
    }
    return {0.0, 0.0};
}

std::pair<double, Vec> compute_g_h_infinity(const IncomeParams& income, double r,
                                            double delta, double beta, double beta_inf) {
    if (!(beta - beta_inf > 0.0))
        throw Error(ErrorCode::DegenerateDiscount, "beta - beta_inf must be positive");
    const double g_inf = 1.0 / (beta - beta_inf);
    const double rd = r + delta;
    const DelayGrid g = income.grid();
    Vec h(g.nodes(), 0.0);

    switch (income.phi.type) {
        case Kernel::Type::Zero:
            break;
        case Kernel::Type::Constant: {
            // h(s) = g_inf * phi * (1 - e^{-(r+delta)(s+d)}) / (r+delta)
            for (std::size_t j = 0; j <= g.m; ++j)
                h[j] = g_inf * income.phi.value * discounted_window_mass(rd, g.node(j) + income.d);
            break;
        }
        case Kernel::Type::Exponential: {
            // h(s) = g_inf * a * e^{-(r+delta)s} * (e^{qs} - e^{-qd})/q, q = lambda+r+delta
            const double q = income.phi.lambda + rd;
            for (std::size_t j = 0; j <= g.m; ++j) {
                double s = g.node(j);
                double inner;
                if (std::abs(q * income.d) < 1e-12) {
                    inner = s + income.d;
                } else {
                    inner = (std::exp(q * s) - std::exp(-q * income.d)) / q;
                }
                h[j] = g_inf * income.phi.a * std::exp(-rd * s) * inner;
            }
            break;
        }
        case Kernel::Type::Sampled: {
            // Partial trapezoid sums of e^{(r+delta)tau} phi(tau); then
            // h_j = g_inf * e^{-(r+delta)s_j} * T_j. This makes
            // h(0) = g_inf * beta_inf hold exactly for the sampled route too.
            const Vec phi = income.phi.on_grid(g);
            Vec psi(g.nodes());
            for (std::size_t j = 0; j < g.nodes(); ++j)
                psi[j] = std::exp(rd * g.node(j)) * phi[j];
            double partial = 0.0;
            h[0] = 0.0;
            for (std::size_t j = 1; j <= g.m; ++j) {
                partial += 0.5 * g.ds() * (psi[j - 1] + psi[j]);
                h[j] = g_inf * std::exp(-rd * g.node(j)) * partial;
            }
            break;
        }
    }
    h[0] = 0.0;  // h(-d) = 0 holds exactly in every branch; keep it literal
    return {g_inf, std::move(h)};
}

Vec compute_kappa(const MarketParams& market) {
    if (market.n() == 0)
        throw Error(ErrorCode::InvalidArgument, "market must have at least one risky asset");
    if (market.sigma.size() != market.n())
        throw Error(ErrorCode::GridMismatch, "sigma dimension does not match mu");
    LuFactorization lu(market.sigma);
    Vec excess(market.n());
    for (std::size_t i = 0; i < market.n(); ++i) excess[i] = market.mu[i] - market.r;
    return lu.solve(excess);
}

NuF compute_nu_f(const Preferences& prefs, const Vec& kappa, double r) {
    const double gamma = prefs.gamma;
    const double ksq = dot(kappa, kappa);
    const double denom =
        prefs.rho + prefs.delta - (1.0 - gamma) * (r + prefs.delta + ksq / (2.0 * gamma));
    if (!(denom > 0.0))
        throw Error(ErrorCode::HypothesisIIViolated,
                    "rho + delta - (1-gamma)(r + delta + kappa'kappa/(2 gamma)) must be > 0");
    NuF out;
    out.nu = gamma / denom;
    const double b = 1.0 - 1.0 / gamma;
    out.f_inf = (1.0 + prefs.delta * std::pow(prefs.k, -b)) * out.nu;
    out.gamma_star_drift = r + prefs.delta + ksq / gamma - 1.0 / out.nu;
    out.gamma_star_vol.resize(kappa.size());
    for (std::size_t i = 0; i < kappa.size(); ++i) out.gamma_star_vol[i] = kappa[i] / gamma;
    return out;
}

namespace {

void check_positive(std::vector<ValidationIssue>& issues, double v, const char* name) {
    if (!(v > 0.0)) {
        issues.push_back({ErrorCode::NonPositiveParameter,
                          std::string(name) + " must be > 0 (got " + std::to_string(v) + ")"});
    }
}

} // namespace

ValidationReport validate(const MarketParams& market, const Preferences& prefs,
                          const IncomeParams& income, const ValidationOptions& opts) {
    ValidationReport rep;

    // Market: sigma invertible with finite condition number, n >= 1.
    bool sigma_ok = false;
    if (market.n() == 0 || market.sigma.size() != market.n()) {
        rep.issues.push_back({ErrorCode::SigmaSingular,
                              "sigma must be n x n with n >= 1 matching mu"});
    } else {
        try {
            LuFactorization lu(market.sigma);
            rep.sigma_condition = lu.condition();
            if (!(rep.sigma_condition < opts.condition_threshold)) {
                std::ostringstream os;
                os << "sigma condition number " << rep.sigma_condition
                   << " exceeds threshold " << opts.condition_threshold;
                rep.issues.push_back({ErrorCode::SigmaSingular, os.str()});
            } else {
                sigma_ok = true;
            }
        } catch (const Error&) {
            rep.issues.push_back({ErrorCode::SigmaSingular, "sigma is singular"});
        }
    }

    check_positive(rep.issues, prefs.rho, "rho");
    check_positive(rep.issues, prefs.k, "k");
    check_positive(rep.issues, prefs.delta, "delta");
    if (!(prefs.gamma > 0.0)) {
        rep.issues.push_back({ErrorCode::NonPositiveParameter, "gamma must be > 0"});
    } else if (std::abs(prefs.gamma - 1.0) < opts.gamma_exclusion) {
        rep.issues.push_back({ErrorCode::GammaExcluded,
                              "gamma in (0,1) or (1,inf) required; gamma = 1 is excluded"});
    }

    if (!(income.d > 0.0))
        rep.issues.push_back({ErrorCode::NonPositiveParameter, "delay window d must be > 0"});
    if (income.m < 2)
        rep.issues.push_back({ErrorCode::NonPositiveParameter, "grid resolution m must be >= 2"});
    if (income.phi.type == Kernel::Type::Sampled && income.phi.samples.size() != income.m + 1)
        rep.issues.push_back({ErrorCode::GridMismatch, "sampled kernel must have m+1 values"});
    if (income.sigma_y.size() != market.n())
        rep.issues.push_back({ErrorCode::GridMismatch, "sigma_y must have n components"});

    if (!rep.issues.empty()) return rep;

    // Hypotheses need kappa and the kernel integrals.
    const Vec kappa = sigma_ok ? compute_kappa(market) : Vec(market.n(), 0.0);
    rep.beta = market.r + prefs.delta - income.mu_y + dot(income.sigma_y, kappa);
    auto [bi, bbi] = compute_beta_infinity(income, market.r, prefs.delta);
    rep.beta_inf = bi;
    rep.beta_bar_inf = bbi;
    if (!(rep.beta - rep.beta_bar_inf > opts.hypothesis_margin)) {
        std::ostringstream os;
        os << "beta - beta_bar_inf > 0 violated: beta = " << rep.beta
           << ", beta_bar_inf = " << rep.beta_bar_inf;
        rep.issues.push_back({ErrorCode::HypothesisIViolated, os.str()});
    }

    const double ksq = dot(kappa, kappa);
    rep.nu_denominator = prefs.rho + prefs.delta -
                         (1.0 - prefs.gamma) * (market.r + prefs.delta + ksq / (2.0 * prefs.gamma));
    if (!(rep.nu_denominator > opts.hypothesis_margin)) {
        std::ostringstream os;
        os << "rho + delta - (1-gamma)(r + delta + kappa'kappa/(2 gamma)) > 0 violated: "
           << "denominator = " << rep.nu_denominator;
        rep.issues.push_back({ErrorCode::HypothesisIIViolated, os.str()});
    }
    return rep;
}

std::string ValidationReport::to_text() const {
    std::ostringstream os;
    if (ok()) {
        os << "validation: OK\n";
    } else {
        os << "validation: FAILED\n";
        for (const auto& issue : issues)
            os << "  [" << error_code_name(issue.code) << "] " << issue.condition << "\n";
    }
    return os.str();
}

void ValidationReport::raise_if_failed() const {
    if (ok()) return;
    throw Error(issues.front().code, to_text());
}

DerivedConstants derive_constants(const MarketParams& market, const Preferences& prefs,
                                  const IncomeParams& income, const ValidationOptions& opts) {
    validate(market, prefs, income, opts).raise_if_failed();

    DerivedConstants c;
    c.grid = income.grid();
    c.kappa = compute_kappa(market);
    c.kappa_sq = dot(c.kappa, c.kappa);
    c.b = 1.0 - 1.0 / prefs.gamma;
    c.beta = market.r + prefs.delta - income.mu_y + dot(income.sigma_y, c.kappa);
    std::tie(c.beta_inf, c.beta_bar_inf) = compute_beta_infinity(income, market.r, prefs.delta);
    std::tie(c.g_inf, c.h_inf) =
        compute_g_h_infinity(income, market.r, prefs.delta, c.beta, c.beta_inf);
    NuF nf = compute_nu_f(prefs, c.kappa, market.r);
    c.nu = nf.nu;
    c.f_inf = nf.f_inf;
    c.gamma_star_drift = nf.gamma_star_drift;
    c.gamma_star_vol = nf.gamma_star_vol;
    c.phi_grid = income.phi.on_grid(c.grid);
    c.k_neg_b = std::pow(prefs.k, -c.b);
    c.delta_bequest_weight = prefs.delta * c.k_neg_b;
    return c;
}

} // namespace pdm
