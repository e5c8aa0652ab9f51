#include "entflow/events.hpp"

#include "entflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace entflow {

namespace {

void require_grid(std::span<const double> grid) {
    if (grid.empty()) throw ValidationError("time grid is empty");
    if (!(grid[0] >= 0.0) || !std::isfinite(grid[0])) {
        throw ValidationError("time grid must start at t >= 0");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1]) || !std::isfinite(grid[i])) {
            throw ValidationError("time grid must be strictly increasing");
        }
    }
}

double same_kind_square(PairLabel pair, const SquaredAmplitudes& sq) {
    switch (pair) {
        case PairLabel::c1c2: return sq.g2;
        case PairLabel::r1r2: return sq.r2;
        default: return sq.e2;
    }
}

// Entanglement predicate of one pair. Same-kind pairs use the smooth factor
// f = beta (1 - x) - alpha of lambda_- = beta x f, so tangential zeros of x
// are not reported as transitions.
class Tracker {
public:
    Tracker(PairLabel pair, const InitialAmplitudes& init, const SystemParams& p, Regime regime)
        : pair_(pair), init_(init), p_(p), regime_(regime) {}

    bool entangled(double t) const {
        if (is_same_kind(pair_)) {
            const double x = same_kind_square(pair_, squared_amplitudes(regime_, t, p_));
            const double f = init_.beta() * (1.0 - x) - init_.alpha();
            return f < 0.0 && init_.beta() > 0.0 && (t > 0.0 || x > 0.0);
        }
        return lambda_minus(pair_, t, init_, p_, regime_) < -0.5 * kZeroConcurrence;
    }

private:
    PairLabel pair_;
    const InitialAmplitudes& init_;
    const SystemParams& p_;
    Regime regime_;
};

double oscillation_rate(const SystemParams& p, Regime regime) {
    const Complex w = p.omega_bar();
    double rate = std::abs(w.imag()) > 0.0 ? 0.0 : std::abs(w.real());
    if (regime == Regime::Strong) rate = std::max(rate, p.g_eff());
    return rate;
}

int auto_points(const SystemParams& p, Regime regime, double horizon) {
    const double periods = horizon * oscillation_rate(p, regime) / (2.0 * std::numbers::pi);
    const double n = std::max({400.0, 40.0 * periods, 20.0 * horizon * p.kappa()});
    return static_cast<int>(std::ceil(n)) + 1;
}

SystemParams phase_params(double gamma) {
    if (!std::isfinite(gamma) || gamma <= 0.0) {
        throw ValidationError("gamma must be finite and > 0");
    }
    return SystemParams::from_effective(gamma, 1.0);
}

bool use_weak(double gamma, PhaseCriterion criterion) {
    return criterion == PhaseCriterion::Weak ||
           (criterion == PhaseCriterion::Auto && gamma <= 0.1);
}

// 1 - |G_t|^2 with kappa = 1.
double cavity_lhs(double t, const SystemParams& p, bool weak) {
    const double g2 = weak ? amplitudes_weak(t, p).g2 : squared(amplitudes_exact(t, p)).g2;
    return 1.0 - g2;
}

double phase_horizon(const SystemParams& p) {
    const double w = std::abs(p.omega_bar());
    const double osc = w > 0.0 ? 10.0 * std::numbers::pi / w : 200.0;
    return std::max(20.0, std::min(osc, 200.0));
}

constexpr int kPhaseScanPoints = 4001;

}  // namespace

const char* to_string(EventKind kind) noexcept {
    switch (kind) {
        case EventKind::ESD: return "ESD";
        case EventKind::ESB: return "ESB";
        case EventKind::ESR: return "ESR";
    }
    return "ESD";
}

EventKind parse_event_kind(std::string_view name) {
    if (name == "ESD") return EventKind::ESD;
    if (name == "ESB") return EventKind::ESB;
    if (name == "ESR") return EventKind::ESR;
    throw ValidationError("unknown event kind '" + std::string(name) + "'");
}

std::vector<double> uniform_grid(double t_max, int steps) {
    if (!std::isfinite(t_max) || t_max <= 0.0) throw ValidationError("t_max must be > 0");
    if (steps < 1) throw ValidationError("steps must be >= 1");
    std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) grid[i] = t_max * i / steps;
    return grid;
}

std::vector<double> concurrence_series(PairLabel pair, const InitialAmplitudes& init,
                                       const SystemParams& p, std::span<const double> grid,
                                       Regime regime) {
    require_grid(grid);
    std::vector<double> out;
    out.reserve(grid.size());
    for (double t : grid) {
        out.push_back(pair_concurrence(joint_state(t, init, p, regime), pair));
    }
    return out;
}

double lambda_minus(PairLabel pair, double t, const InitialAmplitudes& init,
                    const SystemParams& p, Regime regime) {
    if (is_same_kind(pair)) {
        return lambda_minus_closed(pair, squared_amplitudes(regime, t, p), init);
    }
    const auto rho = reduced_pair(joint_state(t, init, p, regime), pair);
    const auto pt = qops::partial_transpose(rho.matrix(), qops::Subsystem::B, {2, 2});
    return qops::hermitian_eigenvalues(pt).minCoeff();
}

std::vector<EventRecord> detect_events(PairLabel pair, const InitialAmplitudes& init,
                                       const SystemParams& p, double horizon,
                                       const DetectOptions& options) {
    if (!std::isfinite(horizon) || horizon <= 0.0) {
        throw ValidationError("detect_events: horizon must be > 0");
    }
    int points = options.grid_points;
    if (points == 0) {
        points = auto_points(p, options.regime, horizon);
    } else {
        const double periods =
            horizon * oscillation_rate(p, options.regime) / (2.0 * std::numbers::pi);
        if (points < 2 || points - 1 < 40.0 * periods) {
            throw ConfigError("detect_events: grid of " + std::to_string(points) +
                              " points is too coarse; need >= 40 per oscillation period (" +
                              std::to_string(static_cast<int>(std::ceil(40.0 * periods)) + 1) +
                              " points)");
        }
    }

    const Tracker tracker(pair, init, p, options.regime);
    std::vector<EventRecord> events;
    bool state = tracker.entangled(0.0);
    bool ever = state;
    double t_prev = 0.0;
    for (int i = 1; i < points; ++i) {
        const double t = horizon * i / (points - 1);
        const bool now = tracker.entangled(t);
        if (now != state) {
            double lo = t_prev;
            double hi = t;
            while (hi - lo > options.time_tol) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                if (tracker.entangled(mid) == state) lo = mid; else hi = mid;
            }
            const double te = 0.5 * (lo + hi);
            EventKind kind = EventKind::ESD;
            if (now) kind = ever ? EventKind::ESR : EventKind::ESB;
            events.push_back({kind, pair, te});
            state = now;
            ever = ever || now;
        }
        t_prev = t;
    }
    return events;
}

std::vector<std::pair<double, double>> entangled_intervals(PairLabel pair,
                                                           const InitialAmplitudes& init,
                                                           const SystemParams& p, double horizon,
                                                           const DetectOptions& options) {
    const auto events = detect_events(pair, init, p, horizon, options);
    const Tracker tracker(pair, init, p, options.regime);
    std::vector<std::pair<double, double>> out;
    bool state = tracker.entangled(0.0);
    double start = 0.0;
    for (const auto& e : events) {
        if (e.kind == EventKind::ESD) {
            if (state) out.emplace_back(start, e.time);
            state = false;
        } else {
            start = e.time;
            state = true;
        }
    }
    if (state) out.emplace_back(start, horizon);
    return out;
}

std::optional<double> esb_time_strong(const InitialAmplitudes& init) {
    const double a = init.alpha();
    const double b = init.beta();
    if (b < a || a == 0.0) return std::nullopt;
    return 2.0 * std::log(b / a);
}

WeakEventTimes weak_event_times(const InitialAmplitudes& init, double gamma) {
    if (!std::isfinite(gamma) || gamma <= 0.0) {
        throw ValidationError("weak_event_times: gamma must be > 0");
    }
    const double a = init.alpha();
    const double b = init.beta();
    WeakEventTimes out;
    if (b <= a || a == 0.0) return out;
    const double scale = 1.0 / (4.0 * gamma * gamma);
    out.t_esd = scale * std::log(b / (b - a));
    out.t_esb = scale * std::log(b / a);
    if (b >= 2.0 * a) out.window = scale * std::log(std::max(1.0, b / a - 1.0));
    return out;
}

const char* to_string(PhaseCriterion criterion) noexcept {
    switch (criterion) {
        case PhaseCriterion::Auto: return "auto";
        case PhaseCriterion::Weak: return "weak";
        case PhaseCriterion::Exact: return "exact";
    }
    return "auto";
}

PhaseCriterion parse_phase_criterion(std::string_view name) {
    if (name == "auto") return PhaseCriterion::Auto;
    if (name == "weak") return PhaseCriterion::Weak;
    if (name == "exact") return PhaseCriterion::Exact;
    throw ValidationError("unknown phase criterion '" + std::string(name) + "'");
}

PhaseBoundary cavity_phase_boundary(double gamma, PhaseCriterion criterion) {
    const SystemParams p = phase_params(gamma);
    const bool weak = use_weak(gamma, criterion);
    const double horizon = phase_horizon(p);
    const double h = horizon / (kPhaseScanPoints - 1);

    int best = 0;
    double best_val = cavity_lhs(0.0, p, weak);
    for (int i = 1; i < kPhaseScanPoints; ++i) {
        const double v = cavity_lhs(h * i, p, weak);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }

    // Golden-section refinement on the bracketing cells.
    double a = h * std::max(0, best - 1);
    double b = h * std::min(kPhaseScanPoints - 1, best + 1);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = cavity_lhs(c, p, weak);
    double fd = cavity_lhs(d, p, weak);
    while (b - a > 1e-8 * std::max(1.0, std::abs(b))) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = cavity_lhs(c, p, weak);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = cavity_lhs(d, p, weak);
        }
    }
    const double t_min = 0.5 * (a + b);
    const double v = cavity_lhs(t_min, p, weak);
    if (v < best_val) return {v, t_min};
    return {best_val, h * best};
}

bool cavity_phase(double gamma, double ratio, PhaseCriterion criterion) {
    if (!std::isfinite(ratio) || ratio <= 0.0 || ratio >= 1.0) {
        throw ValidationError("cavity_phase: ratio alpha/beta must lie in (0, 1)");
    }
    return ratio > cavity_phase_boundary(gamma, criterion).ratio;
}

int cavity_entangled_interval_count(double gamma, double ratio, PhaseCriterion criterion) {
    if (!std::isfinite(ratio) || ratio <= 0.0 || ratio >= 1.0) {
        throw ValidationError("cavity_entangled_interval_count: ratio must lie in (0, 1)");
    }
    const SystemParams p = phase_params(gamma);
    const bool weak = use_weak(gamma, criterion);
    const double horizon = phase_horizon(p);
    int count = 0;
    bool inside = false;
    for (int i = 1; i < kPhaseScanPoints; ++i) {
        const double t = horizon * i / (kPhaseScanPoints - 1);
        const bool now = cavity_lhs(t, p, weak) < ratio;
        if (now && !inside) ++count;
        inside = now;
    }
    return count;
}

PhaseDiagram phase_diagram(std::span<const double> gammas, std::span<const double> ratios,
                           PhaseCriterion criterion) {
    if (gammas.empty() || ratios.empty()) {
        throw ValidationError("phase_diagram: grids must be non-empty");
    }
    for (double r : ratios) {
        if (!std::isfinite(r) || r <= 0.0 || r >= 1.0) {
            throw ValidationError("phase_diagram: ratios must lie in (0, 1)");
        }
    }
    PhaseDiagram out;
    out.gammas.assign(gammas.begin(), gammas.end());
    out.ratios.assign(ratios.begin(), ratios.end());
    out.boundary.reserve(gammas.size());
    for (double g : gammas) out.boundary.push_back(cavity_phase_boundary(g, criterion).ratio);
    out.entangled.assign(ratios.size(), std::vector<bool>(gammas.size(), false));
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        for (std::size_t j = 0; j < gammas.size(); ++j) {
            out.entangled[i][j] = ratios[i] > out.boundary[j];
        }
    }
    return out;
}

std::optional<std::pair<double, double>> dead_window(const InitialAmplitudes& init,
                                                     const SystemParams& p, double horizon,
                                                     const DetectOptions& options) {
    std::vector<std::pair<double, double>> live;
    for (PairLabel pair : {PairLabel::a1a2, PairLabel::c1c2, PairLabel::r1r2}) {
        const auto iv = entangled_intervals(pair, init, p, horizon, options);
        live.insert(live.end(), iv.begin(), iv.end());
    }
    std::sort(live.begin(), live.end());

    std::optional<std::pair<double, double>> best;
    double covered = -1.0;  // end of the union so far
    for (const auto& [s, e] : live) {
        if (covered >= 0.0 && s > covered) {
            if (!best || s - covered > best->second - best->first) best = {covered, s};
        }
        covered = std::max(covered, e);
    }
    return best;
}

}  // namespace entflow
