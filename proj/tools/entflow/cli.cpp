#include "cli.hpp"

#include "entflow/errors.hpp"
#include "entflow/lindblad.hpp"
#include "entflow/oracle.hpp"

#include "CLI11.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace entflow::cli {

namespace {

using json = nlohmann::json;

// ---- config <-> json -------------------------------------------------------

template <typename T>
void read_key(const json& j, const char* key, std::optional<T>& field) {
    if (!j.contains(key)) return;
    try {
        field = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

template <typename T>
void write_key(json& j, const char* key, const std::optional<T>& field) {
    if (field) j[key] = *field;
}

std::vector<std::string> split_pairs(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

template <typename T>
void take(std::optional<T>& dst, const std::optional<T>& src) {
    if (src) dst = src;
}

// ---- parameter assembly ----------------------------------------------------

double kappa_of(const RunConfig& c) {
    const double k = c.kappa.value_or(1.0);
    if (!std::isfinite(k) || k <= 0.0) throw ConfigError("--kappa must be > 0");
    return k;
}

SystemParams params_of(const RunConfig& c) {
    const double k = kappa_of(c);
    if (c.g || c.omega) {
        if (c.geff) throw ConfigError("give either --geff or --g/--omega, not both");
        if (!c.g || !c.omega || !c.delta_detuning) {
            throw ConfigError("--g and --omega require each other and --delta-detuning");
        }
        return SystemParams(*c.g * k, *c.omega * k, *c.delta_detuning * k, k);
    }
    const double geff = c.geff.value_or(5.0);
    return SystemParams::from_effective(geff * k, k, c.delta_detuning.value_or(0.0) * k);
}

InitialAmplitudes init_of(const RunConfig& c) {
    if (c.ratio) {
        if (c.alpha || c.beta) throw ConfigError("give either --ratio or --alpha/--beta");
        return InitialAmplitudes::from_ratio(*c.ratio);
    }
    if (c.alpha && c.beta) return InitialAmplitudes(*c.alpha, *c.beta);
    if (c.alpha) return InitialAmplitudes(*c.alpha, std::sqrt(std::max(0.0, 1.0 - *c.alpha * *c.alpha)));
    if (c.beta) return InitialAmplitudes(std::sqrt(std::max(0.0, 1.0 - *c.beta * *c.beta)), *c.beta);
    return InitialAmplitudes::from_ratio(1.0);
}

// Grid in units of 1/kappa.
std::vector<double> grid_of(const RunConfig& c, double default_t_max) {
    const double t_max = c.t_max.value_or(default_t_max);
    const int steps = c.steps.value_or(1000);
    if (!std::isfinite(t_max) || t_max <= 0.0) throw ConfigError("--t-max must be > 0");
    if (steps < 1) throw ConfigError("--steps must be >= 1");
    return uniform_grid(t_max, steps);
}

std::vector<PairLabel> pairs_of(const RunConfig& c) {
    const std::vector<std::string> names =
        c.pairs.value_or(std::vector<std::string>{"a1a2", "c1c2", "r1r2"});
    if (names.empty()) throw ConfigError("--pairs is empty");
    std::vector<PairLabel> out;
    for (const auto& n : names) out.push_back(parse_pair(n));
    return out;
}

Regime regime_of(const RunConfig& c) { return parse_regime(c.regime.value_or("exact")); }

std::vector<double> parse_grid_spec(const std::string& spec, const char* flag) {
    double lo = 0.0;
    double hi = 0.0;
    int n = 0;
    char tail = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d%c", &lo, &hi, &n, &tail) != 3 || n < 1 ||
        !std::isfinite(lo) || !std::isfinite(hi) || (n > 1 && !(hi > lo))) {
        throw ConfigError(std::string(flag) + " expects min:max:count, got '" + spec + "'");
    }
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return out;
}

// ---- commands ---------------------------------------------------------------

Report cmd_amplitudes(const RunConfig& c) {
    const SystemParams p = params_of(c);
    const Regime regime = regime_of(c);
    const double k = p.kappa();
    Report r;
    r.columns = {"t", "E2", "G2", "R2"};
    for (double tau : grid_of(c, 10.0)) {
        const SquaredAmplitudes s = squared_amplitudes(regime, tau / k, p);
        r.rows.push_back({tau, s.e2, s.g2, s.r2});
    }
    return r;
}

Report cmd_concurrence(const RunConfig& c) {
    const SystemParams p = params_of(c);
    const InitialAmplitudes init = init_of(c);
    const Regime regime = regime_of(c);
    const auto pairs = pairs_of(c);
    const double k = p.kappa();
    Report r;
    r.columns = {"t"};
    for (PairLabel pl : pairs) r.columns.push_back("C_" + std::string(to_string(pl)));
    for (double tau : grid_of(c, 10.0)) {
        const JointPureState psi = joint_state(tau / k, init, p, regime);
        std::vector<Cell> row{tau};
        for (PairLabel pl : pairs) row.emplace_back(pair_concurrence(psi, pl));
        r.rows.push_back(std::move(row));
    }
    return r;
}

Report cmd_events(const RunConfig& c) {
    const SystemParams p = params_of(c);
    const InitialAmplitudes init = init_of(c);
    const double k = p.kappa();
    DetectOptions opt;
    opt.regime = regime_of(c);
    const double horizon = c.t_max.value_or(10.0);
    if (!(horizon > 0.0)) throw ConfigError("--t-max must be > 0");
    Report r;
    r.columns = {"kind", "pair", "time"};
    for (PairLabel pl : pairs_of(c)) {
        for (const auto& e : detect_events(pl, init, p, horizon / k, opt)) {
            r.rows.push_back({std::string(to_string(e.kind)), std::string(to_string(e.pair)),
                              e.time * k});
        }
    }
    return r;
}

Report cmd_window(const RunConfig& c) {
    const SystemParams p = params_of(c);
    const InitialAmplitudes init = init_of(c);
    const double k = p.kappa();
    DetectOptions opt;
    opt.regime = regime_of(c);
    const double horizon = c.t_max.value_or(400.0);
    if (!(horizon > 0.0)) throw ConfigError("--t-max must be > 0");
    const auto w = dead_window(init, p, horizon / k, opt);
    std::optional<double> predicted;
    if (p.kappa() > 0.0) predicted = weak_event_times(init, p.gamma()).window;

    Report r;
    r.columns = {"present", "t_start", "t_end", "width", "predicted_width"};
    std::vector<Cell> row;
    row.emplace_back(w ? 1.0 : 0.0);
    if (w) {
        row.emplace_back(w->first * k);
        row.emplace_back(w->second * k);
        row.emplace_back((w->second - w->first) * k);
    } else {
        row.insert(row.end(), 3, Cell(std::string()));
    }
    if (predicted) row.emplace_back(*predicted); else row.emplace_back(std::string());
    r.rows.push_back(std::move(row));
    return r;
}

Report cmd_phase_diagram(const RunConfig& c) {
    const auto gammas = parse_grid_spec(c.gamma_grid.value_or("0.02:1:50"), "--gamma-grid");
    const auto ratios = parse_grid_spec(c.ratio_grid.value_or("0.01:0.99:99"), "--ratio-grid");
    const PhaseCriterion crit = parse_phase_criterion(c.criterion.value_or("auto"));
    const PhaseDiagram d = phase_diagram(gammas, ratios, crit);
    Report r;
    r.columns = {"gamma", "ratio", "entangled", "boundary"};
    for (std::size_t j = 0; j < d.gammas.size(); ++j) {
        for (std::size_t i = 0; i < d.ratios.size(); ++i) {
            r.rows.push_back({d.gammas[j], d.ratios[i], d.entangled[i][j] ? 1.0 : 0.0,
                              d.boundary[j]});
        }
    }
    return r;
}

Report cmd_validate(const RunConfig& c) {
    const SystemParams p = params_of(c);
    const double k = p.kappa();
    const double horizon = c.t_max.value_or(10.0) / k;
    const ReservoirDiscretization d(c.n_modes.value_or(2000), c.bandwidth.value_or(200.0) * k, k);
    const OracleComparison oc = compare_with_closed_form(p, d, horizon, c.steps.value_or(1000));
    const LindbladComparison lc =
        compare_lindblad(p, uniform_grid(horizon, std::min(c.steps.value_or(1000), 200)));

    Report r;
    r.columns = {"check", "value", "threshold", "pass"};
    auto add = [&r](const std::string& name, double value, double threshold) {
        const bool ok = value < threshold;
        r.passed = r.passed && ok;
        r.rows.push_back({name, value, threshold, ok ? 1.0 : 0.0});
    };
    add("oracle_max_err_E2", oc.max_err_e2, 0.02);
    add("oracle_max_err_G2", oc.max_err_g2, 0.02);
    add("oracle_max_err_R2", oc.max_err_r2, 0.02);
    add("oracle_norm_defect", oc.max_norm_defect, 1e-10);
    add("oracle_seconds", oc.seconds, 120.0);
    add("lindblad_max_err", lc.max_err, 1e-3);
    add("lindblad_trace_defect", lc.max_trace_defect, 1e-8);
    r.rows.push_back({std::string("oracle_max_C2"), oc.max_c2, std::string(), std::string()});
    return r;
}

// Figure 5: the strong-coupling disentanglement conditions.
Report fig_conditions(const RunConfig& c) {
    const SystemParams p = params_of(c);
    const InitialAmplitudes init = init_of(c);
    const double k = p.kappa();
    const double ab = init.alpha() / init.beta();
    Report r;
    r.columns = {"t", "cond_atoms", "cond_cavities", "alpha_over_beta"};
    for (double tau : grid_of(c, 10.0)) {
        const SquaredAmplitudes s = amplitudes_strong(tau / k, p);
        r.rows.push_back({tau, 1.0 - s.e2, 1.0 - s.g2, ab});
    }
    return r;
}

// Figure 6: the weak-coupling cavity condition and the cavity concurrence.
Report fig_cavity_condition(const RunConfig& c) {
    const SystemParams p = params_of(c);
    const InitialAmplitudes init = init_of(c);
    const double k = p.kappa();
    const double ab = init.alpha() / init.beta();
    Report r;
    r.columns = {"t", "condition_lhs", "alpha_over_beta", "C_c1c2"};
    for (double tau : grid_of(c, 40.0)) {
        const SquaredAmplitudes s = amplitudes_weak(tau / k, p);
        const double cc = pair_concurrence(joint_state(tau / k, init, p, Regime::Weak),
                                           PairLabel::c1c2);
        r.rows.push_back({tau, 1.0 - s.g2, ab, cc});
    }
    return r;
}

// Figure 8: weak-coupling formulas next to the exact amplitudes.
Report fig_weak_exact(const RunConfig& c) {
    const SystemParams p = params_of(c);
    const InitialAmplitudes init = init_of(c);
    const double k = p.kappa();
    const auto pairs = pairs_of(c);
    Report r;
    r.columns = {"t"};
    for (PairLabel pl : pairs) r.columns.push_back("C_" + std::string(to_string(pl)) + "_weak");
    for (PairLabel pl : pairs) r.columns.push_back("C_" + std::string(to_string(pl)) + "_exact");
    for (double tau : grid_of(c, 100.0)) {
        const JointPureState weak = joint_state(tau / k, init, p, Regime::Weak);
        const JointPureState exact = joint_state(tau / k, init, p, Regime::Exact);
        std::vector<Cell> row{tau};
        for (PairLabel pl : pairs) row.emplace_back(pair_concurrence(weak, pl));
        for (PairLabel pl : pairs) row.emplace_back(pair_concurrence(exact, pl));
        r.rows.push_back(std::move(row));
    }
    return r;
}

RunConfig preset(int figure) {
    RunConfig p;
    p.command = "figure";
    p.figure = figure;
    p.steps = 1000;
    const std::vector<std::string> same_kind{"a1a2", "c1c2", "r1r2"};
    switch (figure) {
        case 3: p.ratio = 1.0; p.geff = 5.0; p.t_max = 10.0; p.pairs = same_kind; break;
        case 4: p.ratio = 1.5; p.geff = 5.0; p.t_max = 10.0; p.pairs = same_kind; break;
        case 5: p.ratio = 1.5; p.geff = 5.0; p.t_max = 10.0; break;
        case 6: p.ratio = 1.0 / 0.985; p.geff = 0.1; p.t_max = 40.0; p.steps = 2000; break;
        case 7: p.gamma_grid = "0.02:1:50"; p.ratio_grid = "0.01:0.99:99"; p.criterion = "auto"; break;
        case 8: p.ratio = 1.5; p.geff = 0.1; p.t_max = 100.0; p.pairs = same_kind; break;
        case 9: p.ratio = 3.0; p.geff = 0.1; p.t_max = 60.0; p.steps = 1200; p.pairs = same_kind; break;
        case 10:
            p.ratio = 3.0; p.geff = 0.1; p.t_max = 60.0; p.steps = 1200;
            p.pairs = std::vector<std::string>{"a1c1", "c1r1", "a1a2", "r1r2"};
            break;
        default:
            throw ConfigError("figure presets cover 3..10, got " + std::to_string(figure));
    }
    return p;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

RunConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const std::set<std::string> known = {
        "command", "figure", "geff", "g", "omega", "delta-detuning", "kappa", "alpha", "beta",
        "ratio", "t-max", "steps", "pairs", "regime", "out", "format", "n-modes", "bandwidth",
        "seed", "gamma-grid", "ratio-grid", "criterion"};
    for (const auto& item : j.items()) {
        if (!known.count(item.key())) throw ConfigError("unknown config key '" + item.key() + "'");
    }
    RunConfig c;
    if (j.contains("command")) {
        std::optional<std::string> cmd;
        read_key(j, "command", cmd);
        c.command = *cmd;
    }
    read_key(j, "figure", c.figure);
    read_key(j, "geff", c.geff);
    read_key(j, "g", c.g);
    read_key(j, "omega", c.omega);
    read_key(j, "delta-detuning", c.delta_detuning);
    read_key(j, "kappa", c.kappa);
    read_key(j, "alpha", c.alpha);
    read_key(j, "beta", c.beta);
    read_key(j, "ratio", c.ratio);
    read_key(j, "t-max", c.t_max);
    read_key(j, "steps", c.steps);
    if (j.contains("pairs") && j.at("pairs").is_string()) {
        c.pairs = split_pairs(j.at("pairs").get<std::string>());
    } else {
        read_key(j, "pairs", c.pairs);
    }
    read_key(j, "regime", c.regime);
    read_key(j, "out", c.out);
    read_key(j, "format", c.format);
    read_key(j, "n-modes", c.n_modes);
    read_key(j, "bandwidth", c.bandwidth);
    read_key(j, "seed", c.seed);
    read_key(j, "gamma-grid", c.gamma_grid);
    read_key(j, "ratio-grid", c.ratio_grid);
    read_key(j, "criterion", c.criterion);
    return c;
}

json config_to_json(const RunConfig& c) {
    json j = json::object();
    if (!c.command.empty()) j["command"] = c.command;
    write_key(j, "figure", c.figure);
    write_key(j, "geff", c.geff);
    write_key(j, "g", c.g);
    write_key(j, "omega", c.omega);
    write_key(j, "delta-detuning", c.delta_detuning);
    write_key(j, "kappa", c.kappa);
    write_key(j, "alpha", c.alpha);
    write_key(j, "beta", c.beta);
    write_key(j, "ratio", c.ratio);
    write_key(j, "t-max", c.t_max);
    write_key(j, "steps", c.steps);
    write_key(j, "pairs", c.pairs);
    write_key(j, "regime", c.regime);
    write_key(j, "out", c.out);
    write_key(j, "format", c.format);
    write_key(j, "n-modes", c.n_modes);
    write_key(j, "bandwidth", c.bandwidth);
    write_key(j, "seed", c.seed);
    write_key(j, "gamma-grid", c.gamma_grid);
    write_key(j, "ratio-grid", c.ratio_grid);
    write_key(j, "criterion", c.criterion);
    return j;
}

RunConfig merge(RunConfig base, const RunConfig& o) {
    if (!o.command.empty()) base.command = o.command;
    take(base.figure, o.figure);
    take(base.geff, o.geff);
    take(base.g, o.g);
    take(base.omega, o.omega);
    take(base.delta_detuning, o.delta_detuning);
    take(base.kappa, o.kappa);
    take(base.alpha, o.alpha);
    take(base.beta, o.beta);
    take(base.ratio, o.ratio);
    take(base.t_max, o.t_max);
    take(base.steps, o.steps);
    take(base.pairs, o.pairs);
    take(base.regime, o.regime);
    take(base.out, o.out);
    take(base.format, o.format);
    take(base.n_modes, o.n_modes);
    take(base.bandwidth, o.bandwidth);
    take(base.seed, o.seed);
    take(base.gamma_grid, o.gamma_grid);
    take(base.ratio_grid, o.ratio_grid);
    take(base.criterion, o.criterion);
    // An explicit (alpha, beta) or ratio displaces the other from the preset.
    if (o.ratio) {
        if (!o.alpha) base.alpha.reset();
        if (!o.beta) base.beta.reset();
    } else if (o.alpha || o.beta) {
        base.ratio.reset();
    }
    // Likewise explicit couplings displace a preset g_eff.
    if ((o.g || o.omega) && !o.geff) base.geff.reset();
    return base;
}

RunConfig with_figure_preset(const RunConfig& c) {
    if (!c.figure) throw ConfigError("figure number missing");
    return merge(preset(*c.figure), c);
}

Report execute(const RunConfig& c) {
    if (c.command == "amplitudes") return cmd_amplitudes(c);
    if (c.command == "concurrence") return cmd_concurrence(c);
    if (c.command == "events") return cmd_events(c);
    if (c.command == "window") return cmd_window(c);
    if (c.command == "phase-diagram") return cmd_phase_diagram(c);
    if (c.command == "validate") return cmd_validate(c);
    if (c.command == "figure") {
        const RunConfig f = with_figure_preset(c);
        switch (*f.figure) {
            case 3: case 4: case 9: case 10: return cmd_concurrence(f);
            case 5: return fig_conditions(f);
            case 6: return fig_cavity_condition(f);
            case 7: return cmd_phase_diagram(f);
            case 8: return fig_weak_exact(f);
            default: break;
        }
    }
    throw ConfigError("unknown command '" + c.command + "'");
}

std::string render_csv(const Report& r) {
    std::string out;
    for (std::size_t i = 0; i < r.columns.size(); ++i) {
        if (i) out += ',';
        out += r.columns[i];
    }
    out += '\n';
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            if (const double* d = std::get_if<double>(&row[i])) out += format_double(*d);
            else out += std::get<std::string>(row[i]);
        }
        out += '\n';
    }
    return out;
}

json render_json(const RunConfig& c, const Report& r) {
    json j;
    j["config"] = config_to_json(c);
    j["columns"] = r.columns;
    json records = json::array();
    for (const auto& row : r.rows) {
        json rec = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (const double* d = std::get_if<double>(&row[i])) rec[r.columns[i]] = *d;
            else rec[r.columns[i]] = std::get<std::string>(row[i]);
        }
        records.push_back(std::move(rec));
    }
    j["records"] = std::move(records);
    j["passed"] = r.passed;
    return j;
}

Report parse_report(const json& j) {
    Report r;
    try {
        r.columns = j.at("columns").get<std::vector<std::string>>();
        for (const auto& rec : j.at("records")) {
            std::vector<Cell> row;
            for (const auto& col : r.columns) {
                const json& v = rec.at(col);
                if (v.is_number()) row.emplace_back(v.get<double>());
                else row.emplace_back(v.get<std::string>());
            }
            r.rows.push_back(std::move(row));
        }
        if (j.contains("passed")) r.passed = j.at("passed").get<bool>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed report: ") + e.what());
    }
    return r;
}

std::vector<EventRecord> event_records(const Report& r) {
    if (r.columns != std::vector<std::string>{"kind", "pair", "time"}) {
        throw ConfigError("report does not hold event records");
    }
    std::vector<EventRecord> out;
    for (const auto& row : r.rows) {
        out.push_back({parse_event_kind(std::get<std::string>(row[0])),
                       parse_pair(std::get<std::string>(row[1])), std::get<double>(row[2])});
    }
    return out;
}

PhaseDiagram phase_diagram_from(const Report& r) {
    if (r.columns != std::vector<std::string>{"gamma", "ratio", "entangled", "boundary"}) {
        throw ConfigError("report does not hold a phase diagram");
    }
    PhaseDiagram d;
    std::map<double, std::size_t> gi;
    std::map<double, std::size_t> ri;
    for (const auto& row : r.rows) {
        const double g = std::get<double>(row[0]);
        const double q = std::get<double>(row[1]);
        if (!gi.count(g)) {
            gi[g] = d.gammas.size();
            d.gammas.push_back(g);
            d.boundary.push_back(std::get<double>(row[3]));
        }
        if (!ri.count(q)) {
            ri[q] = d.ratios.size();
            d.ratios.push_back(q);
        }
    }
    d.entangled.assign(d.ratios.size(), std::vector<bool>(d.gammas.size(), false));
    for (const auto& row : r.rows) {
        d.entangled[ri[std::get<double>(row[1])]][gi[std::get<double>(row[0])]] =
            std::get<double>(row[2]) != 0.0;
    }
    return d;
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw ConfigError("cannot write '" + tmp.string() + "'");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.flush();
        if (!f) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw ConfigError("write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw ConfigError("cannot move output into '" + path + "'");
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entanglement transfer in leaky-cavity Raman systems", "entflow"};
    app.require_subcommand(1);

    RunConfig flags;
    std::optional<std::string> config_path;
    std::string pairs_flag;
    int figure_number = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--geff", flags.geff, "Effective Raman coupling g_eff (units of kappa)");
        sub->add_option("--g", flags.g, "Cavity coupling g (units of kappa)");
        sub->add_option("--omega", flags.omega, "Classical-field coupling Omega (units of kappa)");
        sub->add_option("--delta-detuning", flags.delta_detuning, "Detuning Delta (units of kappa)");
        sub->add_option("--kappa", flags.kappa, "Cavity decay rate (default 1)");
        sub->add_option("--alpha", flags.alpha, "Amplitude of |gg>");
        sub->add_option("--beta", flags.beta, "Amplitude of |ee>");
        sub->add_option("--ratio", flags.ratio, "beta/alpha");
        sub->add_option("--t-max", flags.t_max, "Time horizon (units of 1/kappa)");
        sub->add_option("--steps", flags.steps, "Grid intervals");
        sub->add_option("--pairs", pairs_flag, "Comma-separated pair labels");
        sub->add_option("--regime", flags.regime, "exact|strong|weak");
        sub->add_option("--out", flags.out, "Output file (stdout if absent)");
        sub->add_option("--format", flags.format, "csv|json");
        sub->add_option("--config", config_path, "JSON config; flags override it");
        sub->add_option("--n-modes", flags.n_modes, "Reservoir modes for validate");
        sub->add_option("--bandwidth", flags.bandwidth, "Reservoir bandwidth (units of kappa)");
        sub->add_option("--seed", flags.seed, "Reserved; the dynamics is deterministic");
        sub->add_option("--gamma-grid", flags.gamma_grid, "phase-diagram gamma grid min:max:count");
        sub->add_option("--ratio-grid", flags.ratio_grid, "phase-diagram alpha/beta grid min:max:count");
        sub->add_option("--criterion", flags.criterion, "phase criterion auto|weak|exact");
    };

    const std::vector<std::pair<const char*, const char*>> commands = {
        {"amplitudes", "Squared amplitudes |E|^2, |G|^2, R^2"},
        {"concurrence", "Pair concurrences over time"},
        {"events", "ESD/ESB/ESR events"},
        {"window", "Dead-window report"},
        {"phase-diagram", "Cavity entangled/unentangled phases"},
        {"validate", "Oracle and Lindblad checks against the closed forms"},
    };
    for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help));
    CLI::App* figure = app.add_subcommand("figure", "Figure presets 3..10");
    figure->add_option("number", figure_number, "Figure number")->required()->check(
        CLI::Range(3, 10));
    add_common(figure);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        const CLI::App* sub = app.get_subcommands().front();
        flags.command = sub->get_name();
        if (flags.command == "figure") flags.figure = figure_number;
        if (!pairs_flag.empty()) flags.pairs = split_pairs(pairs_flag);

        RunConfig config = flags;
        if (config_path) {
            std::ifstream f(*config_path);
            if (!f) throw ConfigError("cannot read config '" + *config_path + "'");
            json j;
            try {
                j = json::parse(f);
            } catch (const json::exception& e) {
                throw ConfigError("config '" + *config_path + "': " + e.what());
            }
            RunConfig base = config_from_json(j);
            base.command.clear();
            if (flags.command != "figure") base.figure.reset();
            config = merge(base, flags);
        }

        const std::string format = config.format.value_or("csv");
        if (format != "csv" && format != "json") throw ConfigError("--format must be csv or json");

        const Report report = execute(config);
        RunConfig shown = config;
        shown.out.reset();
        const std::string text =
            format == "csv" ? render_csv(report) : render_json(shown, report).dump(2) + "\n";
        if (config.out) write_atomic(*config.out, text); else out << text;
        if (!report.passed) {
            err << "entflow: validation thresholds missed\n";
            return kExitValidation;
        }
        return kExitOk;
    } catch (const ValidationError& e) {
        err << "entflow: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ConfigError& e) {
        err << "entflow: " << e.what() << '\n';
        return kExitConfig;
    }
}

}  // namespace entflow::cli
