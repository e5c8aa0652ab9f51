// amplitudes.hpp: closed-form single-chain amplitudes E_t, G_t, R_t.
//
// One chain is a Raman-driven three-level atom in a leaky cavity that feeds
// its own reservoir. With |c> adiabatically eliminated the chain state is
//   |psi_t> = E_t |e,0,0> + G_t |g,1,0> + R_t |g,0,1>
// where the last slot is the collective reservoir mode.

#pragma once

#include <complex>
#include <string_view>

namespace entflow {

using Complex = std::complex<double>;

/// Physical constants of one chain. Rates are angular (rad per unit time).
class SystemParams {
public:
    /// g: cavity coupling, omega: classical-field coupling, detuning: Delta =
    /// w_cg - w, kappa: cavity decay rate. Throws ValidationError unless all
    /// values are finite, g, omega, kappa >= 0 and detuning > 0.
    SystemParams(double g, double omega, double detuning, double kappa);

    /// g = omega = sqrt(g_eff * detuning); detuning defaults to 100 g_eff so
    /// that g_eff = 5 kappa reproduces g = omega = 50, Delta = 500.
    static SystemParams from_effective(double g_eff, double kappa, double detuning = 0.0);

    double g() const noexcept { return g_; }
    double omega() const noexcept { return omega_; }
    double detuning() const noexcept { return detuning_; }
    double kappa() const noexcept { return kappa_; }

    /// Two-photon detuning (g^2 - omega^2)/Delta that cancels the Stark shifts.
    double delta() const noexcept { return (g_ * g_ - omega_ * omega_) / detuning_; }
    double g_eff() const noexcept { return g_ * omega_ / detuning_; }
    /// sqrt(g_eff^2 - kappa^2/16); purely imaginary when overdamped.
    Complex omega_bar() const noexcept;
    /// g_eff / kappa (infinite for kappa = 0).
    double gamma() const noexcept;

    /// True when Delta < 10 max(g, omega), outside the high-detuning regime.
    bool weak_detuning() const noexcept;

private:
    double g_;
    double omega_;
    double detuning_;
    double kappa_;
};

/// E and G complex, R real and non-negative.
struct AmplitudeTriple {
    Complex E;
    Complex G;
    double R;
};

struct SquaredAmplitudes {
    double e2;
    double g2;
    double r2;
};

enum class Regime { Exact, Strong, Weak };

/// Closed forms with Omegabar continued to imaginary values in the overdamped
/// branch. R = sqrt(max(0, 1 - |E|^2 - |G|^2)). Throws ValidationError on t < 0.
AmplitudeTriple amplitudes_exact(double t, const SystemParams& p);

/// g_eff >> kappa: cos^2(g_eff t) e^{-kt/2}, sin^2(g_eff t) e^{-kt/2}, 1 - e^{-kt/2}.
SquaredAmplitudes amplitudes_strong(double t, const SystemParams& p);

/// g_eff << kappa, second order in gamma = g_eff/kappa. Requires kappa > 0.
SquaredAmplitudes amplitudes_weak(double t, const SystemParams& p);

SquaredAmplitudes squared(const AmplitudeTriple& a) noexcept;
SquaredAmplitudes squared_amplitudes(Regime regime, double t, const SystemParams& p);

/// Amplitudes with the phase convention of amplitudes_exact (E real, G = i|G|)
/// rebuilt from squared magnitudes. Negative inputs are clamped to zero.
AmplitudeTriple from_squared(const SquaredAmplitudes& s) noexcept;

/// Amplitudes in the requested regime, as a triple usable by the joint state.
AmplitudeTriple amplitudes(Regime regime, double t, const SystemParams& p);

const char* to_string(Regime regime) noexcept;
/// Throws ValidationError for unknown names ("exact", "strong", "weak").
Regime parse_regime(const std::string_view name);

}  // namespace entflow
