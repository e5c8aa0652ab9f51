#include "entflow/amplitudes.hpp"

#include "entflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace entflow {

namespace {

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw ValidationError("time must be finite and non-negative");
    }
}

bool finite_non_negative(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

SystemParams::SystemParams(double g, double omega, double detuning, double kappa)
    : g_(g), omega_(omega), detuning_(detuning), kappa_(kappa) {
    if (!finite_non_negative(g) || !finite_non_negative(omega) || !finite_non_negative(kappa)) {
        throw ValidationError("SystemParams: g, omega and kappa must be finite and >= 0");
    }
    if (!std::isfinite(detuning) || detuning <= 0.0) {
        throw ValidationError("SystemParams: detuning must be finite and > 0");
    }
}

SystemParams SystemParams::from_effective(double g_eff, double kappa, double detuning) {
    if (!finite_non_negative(g_eff)) {
        throw ValidationError("SystemParams: g_eff must be finite and >= 0");
    }
    if (detuning <= 0.0) detuning = std::max(100.0 * g_eff, 1.0);
    const double coupling = std::sqrt(g_eff * detuning);
    return SystemParams(coupling, coupling, detuning, kappa);
}

Complex SystemParams::omega_bar() const noexcept {
    const double ge = g_eff();
    return std::sqrt(Complex(ge * ge - kappa_ * kappa_ / 16.0, 0.0));
}

double SystemParams::gamma() const noexcept {
    if (kappa_ == 0.0) return std::numeric_limits<double>::infinity();
    return g_eff() / kappa_;
}

bool SystemParams::weak_detuning() const noexcept {
    return detuning_ < 10.0 * std::max(g_, omega_);
}

AmplitudeTriple amplitudes_exact(double t, const SystemParams& p) {
    require_time(t);
    const double ge = p.g_eff();
    const double k = p.kappa();
    const double disc = ge * ge - k * k / 16.0;

    // cos(Wt) and sin(Wt)/W, both carrying the e^{-kt/4} envelope. In the
    // overdamped branch W = i mu and the products are formed from exponentials
    // so that long horizons do not overflow cosh/sinh.
    double cos_env = 0.0;
    double sinc_env = 0.0;
    if (disc >= 0.0) {
        const double w = std::sqrt(disc);
        const double z = w * t;
        const double env = std::exp(-0.25 * k * t);
        cos_env = std::cos(z) * env;
        const double sinc = std::abs(z) < 1e-4 ? t * (1.0 - z * z / 6.0 + z * z * z * z / 120.0)
                                               : std::sin(z) / w;
        sinc_env = sinc * env;
    } else {
        const double mu = std::sqrt(-disc);
        const double z = mu * t;
        if (z < 1e-4) {
            const double env = std::exp(-0.25 * k * t);
            cos_env = (1.0 + z * z / 2.0 + z * z * z * z / 24.0) * env;
            sinc_env = t * (1.0 + z * z / 6.0 + z * z * z * z / 120.0) * env;
        } else {
            const double slow = std::exp((mu - 0.25 * k) * t);
            const double fast = std::exp(-(mu + 0.25 * k) * t);
            cos_env = 0.5 * (slow + fast);
            sinc_env = 0.5 * (slow - fast) / mu;
        }
    }

    const Complex e(cos_env + 0.25 * k * sinc_env, 0.0);
    const Complex g(0.0, ge * sinc_env);
    const double rest = 1.0 - std::norm(e) - std::norm(g);
    return {e, g, std::sqrt(std::max(0.0, rest))};
}

SquaredAmplitudes amplitudes_strong(double t, const SystemParams& p) {
    require_time(t);
    const double phase = p.g_eff() * t;
    const double decay = std::exp(-0.5 * p.kappa() * t);
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    return {c * c * decay, s * s * decay, 1.0 - decay};
}

SquaredAmplitudes amplitudes_weak(double t, const SystemParams& p) {
    require_time(t);
    if (p.kappa() <= 0.0) {
        throw ValidationError("amplitudes_weak: kappa must be > 0");
    }
    const double gamma = p.gamma();
    const double g4 = 4.0 * gamma * gamma;
    const double kt = p.kappa() * t;
    const double slow = std::exp(-g4 * kt);
    const double fast = std::exp(-kt + g4 * kt);
    const double mid = std::exp(-0.5 * kt);
    return {
        (1.0 + g4) * slow - g4 * fast,
        g4 * (slow + fast - 2.0 * mid),
        1.0 - (1.0 + 2.0 * g4) * slow + 2.0 * g4 * mid,
    };
}

SquaredAmplitudes squared(const AmplitudeTriple& a) noexcept {
    return {std::norm(a.E), std::norm(a.G), a.R * a.R};
}

SquaredAmplitudes squared_amplitudes(Regime regime, double t, const SystemParams& p) {
    switch (regime) {
        case Regime::Strong: return amplitudes_strong(t, p);
        case Regime::Weak: return amplitudes_weak(t, p);
        case Regime::Exact: break;
    }
    return squared(amplitudes_exact(t, p));
}

AmplitudeTriple from_squared(const SquaredAmplitudes& s) noexcept {
    return {Complex(std::sqrt(std::max(0.0, s.e2)), 0.0),
            Complex(0.0, std::sqrt(std::max(0.0, s.g2))),
            std::sqrt(std::max(0.0, s.r2))};
}

AmplitudeTriple amplitudes(Regime regime, double t, const SystemParams& p) {
    if (regime == Regime::Exact) return amplitudes_exact(t, p);
    return from_squared(squared_amplitudes(regime, t, p));
}

const char* to_string(Regime regime) noexcept {
    switch (regime) {
        case Regime::Exact: return "exact";
        case Regime::Strong: return "strong";
        case Regime::Weak: return "weak";
    }
    return "exact";
}

Regime parse_regime(const std::string_view name) {
    if (name == "exact") return Regime::Exact;
    if (name == "strong") return Regime::Strong;
    if (name == "weak") return Regime::Weak;
    throw ValidationError("unknown regime '" + std::string(name) + "'");
}

}  // namespace entflow
