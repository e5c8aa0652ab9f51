// events.hpp: sudden death / birth / revival detection, closed-form event
// times, the dead window and the cavity entanglement phase diagram.
//
// Times are in the units of the supplied SystemParams (1/kappa when
// kappa = 1). Closed-form predictions that take no SystemParams are returned
// in units of 1/kappa.

#pragma once

#include "entflow/amplitudes.hpp"
#include "entflow/jointstate.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace entflow {

enum class EventKind { ESD, ESB, ESR };

const char* to_string(EventKind kind) noexcept;
/// Throws ValidationError for names other than "ESD", "ESB", "ESR".
EventKind parse_event_kind(std::string_view name);

struct EventRecord {
    EventKind kind;
    PairLabel pair;
    double time;
};

/// Concurrence below this counts as unentangled.
inline constexpr double kZeroConcurrence = 1e-12;

/// steps + 1 equally spaced points on [0, t_max]. Throws ValidationError
/// unless t_max > 0 and steps >= 1.
std::vector<double> uniform_grid(double t_max, int steps);

/// Wootters concurrence of `pair` at every grid point. Throws ValidationError
/// on an empty, negative or non-increasing grid.
std::vector<double> concurrence_series(PairLabel pair, const InitialAmplitudes& init,
                                       const SystemParams& p, std::span<const double> grid,
                                       Regime regime = Regime::Exact);

/// Smallest eigenvalue of the pair's partial transpose: the closed form for
/// a1a2, c1c2, r1r2 and the brute-force reduction for the other pairs.
double lambda_minus(PairLabel pair, double t, const InitialAmplitudes& init,
                    const SystemParams& p, Regime regime = Regime::Exact);

struct DetectOptions {
    Regime regime = Regime::Exact;
    /// Scan points on [0, horizon]; 0 picks the automatic density (>= 40 per
    /// 2 pi/|Omegabar|, >= 20 per 1/kappa, >= 400 total).
    int grid_points = 0;
    /// Bisection stops once the bracket is narrower than this.
    double time_tol = 1e-12;
};

/// All entanglement transitions of `pair` on (0, horizon], ordered in time.
/// Throws ValidationError for horizon <= 0 and ConfigError when an explicit
/// grid resolves the oscillation with fewer than 40 points per period.
std::vector<EventRecord> detect_events(PairLabel pair, const InitialAmplitudes& init,
                                       const SystemParams& p, double horizon,
                                       const DetectOptions& options = {});

/// Maximal entangled intervals of `pair` on [0, horizon] reconstructed from
/// detect_events. An interval still open at the horizon ends at the horizon.
std::vector<std::pair<double, double>> entangled_intervals(PairLabel pair,
                                                           const InitialAmplitudes& init,
                                                           const SystemParams& p, double horizon,
                                                           const DetectOptions& options = {});

/// 2 ln(beta/alpha) in units of 1/kappa; 0 at beta = alpha, empty when
/// beta < alpha (reservoirs entangled from t = 0+, no birth to predict).
std::optional<double> esb_time_strong(const InitialAmplitudes& init);

struct WeakEventTimes {
    std::optional<double> t_esd;
    std::optional<double> t_esb;
    std::optional<double> window;
};

/// Weak-coupling predictions in units of 1/kappa:
///   t_ESD = ln[beta/(beta - alpha)] / (4 gamma^2)
///   t_ESB = ln[beta/alpha] / (4 gamma^2)
///   window = ln[beta/alpha - 1] / (4 gamma^2), only for beta >= 2 alpha.
/// All fields empty when beta <= alpha. Throws ValidationError for gamma <= 0.
WeakEventTimes weak_event_times(const InitialAmplitudes& init, double gamma);

/// Weak: the second-order |G|^2 (the left side of the cavity condition).
/// Exact: closed-form |G|^2. Auto: Weak for gamma <= 0.1, Exact above.
enum class PhaseCriterion { Auto, Weak, Exact };

const char* to_string(PhaseCriterion criterion) noexcept;
PhaseCriterion parse_phase_criterion(std::string_view name);

struct PhaseBoundary {
    double ratio;  // min over t of 1 - |G_t|^2
    double time;   // minimizer, units of 1/kappa
};

/// Boundary ratio alpha/beta at coupling gamma: the cavities become entangled
/// for ratios above it. Throws ValidationError for gamma <= 0.
PhaseBoundary cavity_phase_boundary(double gamma, PhaseCriterion criterion = PhaseCriterion::Auto);

/// True when the cavity pair is entangled at some t for ratio alpha/beta.
/// Throws ValidationError unless 0 < ratio < 1 and gamma > 0.
bool cavity_phase(double gamma, double ratio, PhaseCriterion criterion = PhaseCriterion::Auto);

/// Number of maximal t-intervals where 1 - |G_t|^2 < ratio on the scan horizon.
int cavity_entangled_interval_count(double gamma, double ratio,
                                    PhaseCriterion criterion = PhaseCriterion::Auto);

struct PhaseDiagram {
    std::vector<double> gammas;
    std::vector<double> ratios;
    /// entangled[i][j] for ratios[i], gammas[j].
    std::vector<std::vector<bool>> entangled;
    /// Boundary ratio per gamma.
    std::vector<double> boundary;
};

/// cavity_phase on the product grid. Throws ValidationError on empty grids.
PhaseDiagram phase_diagram(std::span<const double> gammas, std::span<const double> ratios,
                           PhaseCriterion criterion = PhaseCriterion::Auto);

/// Longest interval inside (0, horizon) where a1a2, c1c2 and r1r2 are all
/// unentangled, closed on both sides by events.
std::optional<std::pair<double, double>> dead_window(const InitialAmplitudes& init,
                                                     const SystemParams& p, double horizon,
                                                     const DetectOptions& options = {});

}  // namespace entflow
