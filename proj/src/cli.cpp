#include "periodlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "periodlab/errors.hpp"
#include "periodlab/oracle.hpp"

namespace periodlab::cli {

namespace {

constexpr int kVerifySeriesCap = 2000;

std::string preset_name(Preset p) {
    switch (p) {
        case Preset::Duffing: return "duffing";
        case Preset::Cubic: return "cubic";
        case Preset::Poly: return "poly";
    }
    return "?";
}

Preset parse_preset(const std::string& s) {
    if (s == "duffing") return Preset::Duffing;
    if (s == "cubic") return Preset::Cubic;
    if (s == "poly") return Preset::Poly;
    throw UsageError("unknown preset '" + s + "' (duffing | cubic | poly)");
}

MethodChoice parse_method(const std::string& s) {
    if (s == "quadrature") return MethodChoice::Quadrature;
    if (s == "series") return MethodChoice::Series;
    if (s == "elliptic") return MethodChoice::Elliptic;
    if (s == "oracle") return MethodChoice::Oracle;
    if (s == "all") return MethodChoice::All;
    throw UsageError("unknown method '" + s + "' (quadrature | series | elliptic | oracle | all)");
}

Format parse_format(const std::string& s) {
    if (s == "table") return Format::Table;
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    throw UsageError("unknown format '" + s + "' (table | json | csv)");
}

BalancedFrame make_frame(const FrameChoice& choice, const EnergyShell& shell) {
    switch (choice.strategy) {
        case FrameStrategy::Balanced: return balanced_frame(shell);
        case FrameStrategy::Nayfeh: return nayfeh_frame(shell);
        case FrameStrategy::Fixed: return fixed_frame(shell, choice.omega);
    }
    return balanced_frame(shell);
}

OutputRecord echo(const ProblemSpec& spec) {
    OutputRecord r;
    r.preset = preset_name(spec.preset);
    r.lambda = spec.lambda;
    r.coeffs = spec.coeffs;
    r.energy = spec.energy;
    r.amplitude = spec.amplitude;
    r.mass = spec.mass;
    r.omega0 = spec.omega0;
    r.frame = frame_name(spec.frame);
    return r;
}

void mark_error(OutputRecord& r, const Error& e) {
    r.status = "error";
    r.error_code = e.exit_code();
    r.message = e.what();
}

void fill_shell(OutputRecord& r, const EnergyShell& shell, const BalancedFrame& balanced) {
    r.energy = shell.energy;
    r.x_minus = shell.x_minus;
    r.x_plus = shell.x_plus;
    r.rho = shell.rho;
    r.omega_b = balanced.omega;
}

void fill_period(OutputRecord& r, const PeriodResult& p) {
    r.T = p.T;
    r.Omega = p.Omega;
    r.err_estimate = p.err_estimate;
    if (r.rho && *r.rho > 0.0) r.sqrt_rho_T = std::sqrt(*r.rho) * p.T;
}

OutputRecord compute_one(const ProblemSpec& spec, const PolynomialPotential& u, const EnergyShell& shell,
                         MethodChoice m) {
    OutputRecord r = echo(spec);
    const BalancedFrame balanced = balanced_frame(shell);
    fill_shell(r, shell, balanced);
    try {
        switch (m) {
            case MethodChoice::Quadrature: {
                r.method = "quadrature";
                const BalancedFrame f = make_frame(spec.frame, shell);
                r.xi = f.xi;
                r.regime = std::string(to_string(regime_of(f.sup_abs_delta())));
                fill_period(r, period_quadrature(f));
                break;
            }
            case MethodChoice::Series: {
                r.method = "series";
                const BalancedFrame f = make_frame(spec.frame, shell);
                const SeriesResult s = period_series(f, spec.N);
                r.N = s.order();
                r.xi = s.xi;
                r.regime = std::string(to_string(s.regime));
                const double scale = std::numbers::sqrt2 / u.omega0();
                for (double ps : s.partial_sums) r.partial_sums.push_back(scale * ps);
                fill_period(r, period_from_series(s, u.omega0()));
                if (s.regime != Regime::Convergent) {
                    r.status = "unreliable";
                    r.message = "series regime is " + std::string(to_string(s.regime)) + "; partial sums do not converge";
                }
                break;
            }
            case MethodChoice::Elliptic: {
                const PeriodResult p = period_elliptic(shell);
                r.method = std::string(to_string(p.method));
                r.frame = "";
                fill_period(r, p);
                break;
            }
            case MethodChoice::Oracle: {
                r.method = "oracle";
                r.frame = "";
                const OracleReport rep = measure_period(u, shell.energy);
                fill_period(r, PeriodResult::make(rep.period, Method::Oracle, rep.energy_drift * rep.period));
                if (!rep.reliable) {
                    r.status = "unreliable";
                    r.error_code = static_cast<int>(ErrorKind::NonConvergence);
                    r.message = "oracle did not meet its energy-drift bound or hit the time cap";
                }
                break;
            }
            case MethodChoice::All: break;
        }
    } catch (const UsageError&) {
        throw;
    } catch (const Error& e) {
        mark_error(r, e);
    }
    return r;
}

bool elliptic_applicable(const PolynomialPotential& u) { return u.is_cubic() || u.is_even_quartic(); }

// Records for one problem; domain failures become error records, usage errors propagate.
std::vector<OutputRecord> period_records(const ProblemSpec& spec) {
    validate(spec);
    const PolynomialPotential u = build_potential(spec);
    std::optional<EnergyShell> shell;
    try {
        shell = turning_points(u, resolve_energy(spec, u));
    } catch (const UsageError&) {
        throw;
    } catch (const Error& e) {
        OutputRecord r = echo(spec);
        r.method = spec.method == MethodChoice::All ? "all" : "";
        mark_error(r, e);
        return {r};
    }

    std::vector<OutputRecord> out;
    if (spec.method == MethodChoice::All) {
        out.push_back(compute_one(spec, u, *shell, MethodChoice::Quadrature));
        out.push_back(compute_one(spec, u, *shell, MethodChoice::Series));
        if (elliptic_applicable(u)) out.push_back(compute_one(spec, u, *shell, MethodChoice::Elliptic));
        out.push_back(compute_one(spec, u, *shell, MethodChoice::Oracle));
    } else {
        out.push_back(compute_one(spec, u, *shell, spec.method));
    }
    return out;
}

std::string opt_str(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

int exit_code_of(const std::vector<OutputRecord>& records) {
    for (const auto& r : records)
        if (r.error_code) return *r.error_code;
    return 0;
}

}  // namespace

// --- spec handling ----------------------------------------------------------

FrameChoice parse_frame(const std::string& text) {
    if (text == "balanced") return {FrameStrategy::Balanced, 1.0};
    if (text == "nayfeh") return {FrameStrategy::Nayfeh, 1.0};
    if (text.rfind("fixed:", 0) == 0) {
        const std::string num = text.substr(6);
        char* end = nullptr;
        const double w = std::strtod(num.c_str(), &end);
        if (num.empty() || *end != '\0' || !(w > 0.0))
            throw UsageError("fixed frame needs a positive frequency, e.g. fixed:1.5");
        return {FrameStrategy::Fixed, w};
    }
    throw UsageError("unknown frame '" + text + "' (balanced | nayfeh | fixed:<omega>)");
}

std::string frame_name(const FrameChoice& f) {
    switch (f.strategy) {
        case FrameStrategy::Balanced: return "balanced";
        case FrameStrategy::Nayfeh: return "nayfeh";
        case FrameStrategy::Fixed: return "fixed:" + format_double(f.omega);
    }
    return "?";
}

void validate(const ProblemSpec& spec) {
    if (spec.energy.has_value() == spec.amplitude.has_value())
        throw UsageError("give exactly one of --energy or --amplitude");
    if (spec.amplitude && spec.preset != Preset::Duffing)
        throw UsageError("--amplitude is only valid for the parity-symmetric duffing preset");
    if (spec.amplitude && !(*spec.amplitude > 0.0)) throw UsageError("--amplitude must be positive");
    if (spec.preset == Preset::Poly && spec.coeffs.size() < 3)
        throw UsageError("--preset poly needs --coeffs with at least three entries (degree >= 2)");
    if (!(spec.mass > 0.0) || !(spec.omega0 > 0.0)) throw UsageError("--mass and --omega0 must be positive");
    if (spec.N < 0) throw UsageError("--N must be >= 0");
}

PolynomialPotential build_potential(const ProblemSpec& spec) {
    std::vector<double> c;
    switch (spec.preset) {
        case Preset::Duffing: c = {0.0, 0.0, 0.5, 0.0, spec.lambda / 4.0}; break;
        case Preset::Cubic: c = {0.0, 0.0, 0.5, spec.lambda / 3.0}; break;
        case Preset::Poly:
            return PolynomialPotential::from_physical(spec.coeffs, spec.mass, spec.omega0, spec.reference_x);
    }
    // Presets are already dimensionless; m and w0 only set the time scale.
    const double s = spec.mass * spec.omega0 * spec.omega0;
    for (double& v : c) v *= s;
    return PolynomialPotential::from_physical(std::move(c), spec.mass, spec.omega0, spec.reference_x);
}

double resolve_energy(const ProblemSpec& spec, const PolynomialPotential& u) {
    // Physical E above the minimum; the shell works with E / (m w0^2).
    if (spec.energy) return *spec.energy / (spec.mass * spec.omega0 * spec.omega0);
    const double a = *spec.amplitude;
    const double x0 = u.minimum_x();
    const BarrierInfo b = barrier_info(u);
    if (b.has_barrier && a >= b.amplitude_limit * (1.0 - 1e-12)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "amplitude " << a << " reaches the limit A_L = " << b.amplitude_limit << " (rho_L = -1)";
        throw SeparatrixError(msg.str());
    }
    return u(x0 + a);
}

// --- commands ---------------------------------------------------------------

std::vector<OutputRecord> cmd_period(const ProblemSpec& spec) { return period_records(spec); }

std::vector<double> sweep_grid(const SweepSpec& sw) {
    if (sw.steps < 2) throw UsageError("--steps must be >= 2");
    if (!(sw.from < sw.to)) throw UsageError("sweep needs --from < --to");
    if (sw.log_grid && !(sw.from > 0.0)) throw UsageError("a log grid needs --from > 0");
    std::vector<double> g(sw.steps);
    for (int i = 0; i < sw.steps; ++i) {
        const double t = static_cast<double>(i) / (sw.steps - 1);
        g[i] = sw.log_grid ? sw.from * std::pow(sw.to / sw.from, t)
                           : sw.from + t * (sw.to - sw.from);
    }
    g.back() = sw.to;
    return g;
}

std::vector<OutputRecord> cmd_sweep(const ProblemSpec& spec, const SweepSpec& sw) {
    if (spec.method == MethodChoice::All) throw UsageError("sweep takes a single --method");
    if (sw.param == SweepSpec::Param::Rho && spec.preset != Preset::Duffing)
        throw UsageError("--param rho needs --preset duffing");
    const std::vector<double> grid = sweep_grid(sw);

    auto point_spec = [&](double v) {
        ProblemSpec p = spec;
        if (sw.param == SweepSpec::Param::Rho) {
            // rho = lambda A^2 with A = 1.
            p.lambda = v;
            p.amplitude = 1.0;
            p.energy.reset();
        } else {
            p.energy = v;
            p.amplitude.reset();
        }
        return p;
    };
    validate(point_spec(grid.front()));

    std::vector<OutputRecord> records(grid.size());
    const std::size_t workers =
        std::min<std::size_t>(grid.size(), std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < grid.size(); i += workers) {
                const ProblemSpec p = point_spec(grid[i]);
                try {
                    records[i] = period_records(p).front();
                } catch (const Error& e) {
                    records[i] = echo(p);
                    mark_error(records[i], e);
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    return records;
}

ConvergenceTable cmd_converge(const ProblemSpec& spec, int n_max) {
    validate(spec);
    if (n_max < 0) throw UsageError("--Nmax must be >= 0");
    const PolynomialPotential u = build_potential(spec);
    const EnergyShell shell = turning_points(u, resolve_energy(spec, u));
    const BalancedFrame f = make_frame(spec.frame, shell);
    const SeriesResult s = period_series(f, n_max, SeriesOptions{false});
    const double t_quad = period_quadrature(f).T;
    const double scale = std::numbers::sqrt2 / u.omega0();

    ConvergenceTable t;
    t.regime = std::string(to_string(s.regime));
    t.xi = s.xi;
    t.frame = frame_name(spec.frame);
    t.closed_form = s.closed_form;
    t.T_quadrature = t_quad;
    for (std::size_t n = 0; n < s.terms.size(); ++n) {
        const double tn = scale * s.partial_sums[n];
        t.rows.push_back({static_cast<int>(n), s.terms[n], s.partial_sums[n], tn, std::abs(tn - t_quad)});
    }
    return t;
}

VerifyReport cmd_verify(const ProblemSpec& spec) {
    validate(spec);
    const PolynomialPotential u = build_potential(spec);
    const EnergyShell shell = turning_points(u, resolve_energy(spec, u));

    ProblemSpec s = spec;
    s.frame = FrameChoice{};
    s.N = std::max(spec.N, kVerifySeriesCap);

    VerifyReport rep;
    rep.records.push_back(compute_one(s, u, shell, MethodChoice::Quadrature));
    if (elliptic_applicable(u)) rep.records.push_back(compute_one(s, u, shell, MethodChoice::Elliptic));
    rep.records.push_back(compute_one(s, u, shell, MethodChoice::Series));
    rep.records.push_back(compute_one(s, u, shell, MethodChoice::Oracle));

    bool all_ok = true;
    std::vector<double> periods;
    for (const auto& r : rep.records) {
        if (r.status != "ok" || !r.T) {
            all_ok = false;
            continue;
        }
        periods.push_back(*r.T);
    }
    for (std::size_t i = 0; i < periods.size(); ++i)
        for (std::size_t j = i + 1; j < periods.size(); ++j)
            rep.max_deviation = std::max(rep.max_deviation, std::abs(periods[i] - periods[j]) /
                                                                std::min(periods[i], periods[j]));
    rep.passed = all_ok && rep.max_deviation <= rep.threshold;
    return rep;
}

// --- serialization ----------------------------------------------------------

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols = {
        "preset", "lambda", "coeffs",  "energy",  "amplitude", "mass",       "omega0",
        "method", "frame",  "N",       "T",       "Omega",     "err_estimate", "regime",
        "xi",     "omega_b", "x_minus", "x_plus", "rho",       "sqrt_rho_T", "status",
        "error_code", "message"};
    return cols;
}

std::string csv_header() {
    std::string h;
    for (const auto& c : csv_columns()) h += (h.empty() ? "" : ",") + c;
    return h;
}

std::string csv_row(const OutputRecord& r) {
    std::string coeffs;
    for (double c : r.coeffs) coeffs += (coeffs.empty() ? "" : ";") + format_double(c);
    const std::vector<std::string> f = {
        r.preset, format_double(r.lambda), coeffs, opt_str(r.energy), opt_str(r.amplitude),
        format_double(r.mass), format_double(r.omega0), r.method, r.frame, r.N >= 0 ? std::to_string(r.N) : "",
        opt_str(r.T), opt_str(r.Omega), opt_str(r.err_estimate), r.regime.value_or(""), opt_str(r.xi),
        opt_str(r.omega_b), opt_str(r.x_minus), opt_str(r.x_plus), opt_str(r.rho), opt_str(r.sqrt_rho_T),
        r.status, r.error_code ? std::to_string(*r.error_code) : "", r.message};
    std::string row;
    for (std::size_t i = 0; i < f.size(); ++i) row += (i ? "," : "") + csv_escape(f[i]);
    return row;
}

nlohmann::json to_json(const OutputRecord& r) {
    nlohmann::json j;
    auto put = [&](const char* key, const std::optional<double>& v) {
        j[key] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    j["preset"] = r.preset;
    j["lambda"] = r.lambda;
    j["coeffs"] = r.coeffs;
    put("energy", r.energy);
    put("amplitude", r.amplitude);
    j["mass"] = r.mass;
    j["omega0"] = r.omega0;
    j["method"] = r.method;
    j["frame"] = r.frame;
    j["N"] = r.N;
    put("T", r.T);
    put("Omega", r.Omega);
    put("err_estimate", r.err_estimate);
    j["regime"] = r.regime ? nlohmann::json(*r.regime) : nlohmann::json(nullptr);
    put("xi", r.xi);
    put("omega_b", r.omega_b);
    put("x_minus", r.x_minus);
    put("x_plus", r.x_plus);
    put("rho", r.rho);
    put("sqrt_rho_T", r.sqrt_rho_T);
    if (!r.partial_sums.empty()) j["partial_sums"] = r.partial_sums;
    j["status"] = r.status;
    j["error_code"] = r.error_code ? nlohmann::json(*r.error_code) : nlohmann::json(nullptr);
    j["message"] = r.message;
    return j;
}

OutputRecord record_from_json(const nlohmann::json& j) {
    OutputRecord r;
    auto get = [&](const char* key) -> std::optional<double> {
        if (!j.contains(key) || j[key].is_null()) return std::nullopt;
        return j[key].get<double>();
    };
    r.preset = j.at("preset").get<std::string>();
    r.lambda = j.at("lambda").get<double>();
    r.coeffs = j.at("coeffs").get<std::vector<double>>();
    r.energy = get("energy");
    r.amplitude = get("amplitude");
    r.mass = j.at("mass").get<double>();
    r.omega0 = j.at("omega0").get<double>();
    r.method = j.at("method").get<std::string>();
    r.frame = j.at("frame").get<std::string>();
    r.N = j.at("N").get<int>();
    r.T = get("T");
    r.Omega = get("Omega");
    r.err_estimate = get("err_estimate");
    if (!j.at("regime").is_null()) r.regime = j["regime"].get<std::string>();
    r.xi = get("xi");
    r.omega_b = get("omega_b");
    r.x_minus = get("x_minus");
    r.x_plus = get("x_plus");
    r.rho = get("rho");
    r.sqrt_rho_T = get("sqrt_rho_T");
    if (j.contains("partial_sums")) r.partial_sums = j["partial_sums"].get<std::vector<double>>();
    r.status = j.at("status").get<std::string>();
    if (!j.at("error_code").is_null()) r.error_code = j["error_code"].get<int>();
    r.message = j.at("message").get<std::string>();
    return r;
}

nlohmann::json to_json(const ConvergenceTable& t) {
    nlohmann::json j;
    j["regime"] = t.regime;
    j["xi"] = t.xi ? nlohmann::json(*t.xi) : nlohmann::json(nullptr);
    j["frame"] = t.frame;
    j["closed_form"] = t.closed_form;
    j["T_quadrature"] = t.T_quadrature;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : t.rows)
        j["rows"].push_back(
            {{"N", r.N}, {"term", r.term}, {"partial_sum", r.partial_sum}, {"T_N", r.T_N}, {"abs_error", r.abs_error}});
    return j;
}

void write_records(std::ostream& out, const std::vector<OutputRecord>& records, Format fmt, bool as_array) {
    switch (fmt) {
        case Format::Json: {
            if (as_array) {
                nlohmann::json arr = nlohmann::json::array();
                for (const auto& r : records) arr.push_back(to_json(r));
                out << arr.dump(2) << '\n';
            } else {
                for (const auto& r : records) out << to_json(r).dump() << '\n';
            }
            break;
        }
        case Format::Csv: {
            out << csv_header() << '\n';
            for (const auto& r : records) out << csv_row(r) << '\n';
            break;
        }
        case Format::Table: {
            out << std::left << std::setw(18) << "method" << std::setw(12) << "frame" << std::setw(6) << "N"
                << std::setw(26) << "T" << std::setw(26) << "Omega" << std::setw(12) << "err" << std::setw(12)
                << "regime" << "status\n";
            for (const auto& r : records) {
                std::ostringstream err;
                err << std::setprecision(3) << std::scientific << r.err_estimate.value_or(0.0);
                out << std::left << std::setw(18) << r.method << std::setw(12) << r.frame << std::setw(6)
                    << (r.N >= 0 ? std::to_string(r.N) : "-") << std::setw(26) << opt_str(r.T) << std::setw(26)
                    << opt_str(r.Omega) << std::setw(12) << (r.err_estimate ? err.str() : "-") << std::setw(12)
                    << r.regime.value_or("-") << r.status;
                if (!r.message.empty()) out << "  " << r.message;
                out << '\n';
            }
            break;
        }
    }
}

void write_table(std::ostream& out, const ConvergenceTable& t, Format fmt) {
    switch (fmt) {
        case Format::Json: out << to_json(t).dump(2) << '\n'; break;
        case Format::Csv:
            out << "N,term,partial_sum,T_N,abs_error,regime,xi\n";
            for (const auto& r : t.rows)
                out << r.N << ',' << format_double(r.term) << ',' << format_double(r.partial_sum) << ','
                    << format_double(r.T_N) << ',' << format_double(r.abs_error) << ',' << t.regime << ','
                    << opt_str(t.xi) << '\n';
            break;
        case Format::Table:
            out << "# regime: " << t.regime << "  xi: " << opt_str(t.xi) << "  frame: " << t.frame
                << "  route: " << (t.closed_form ? "closed-form" : "generic") << "  T_quadrature: "
                << format_double(t.T_quadrature) << '\n';
            out << std::left << std::setw(6) << "N" << std::setw(26) << "term" << std::setw(26) << "I^(N)"
                << std::setw(26) << "T^(N)" << "|T^(N) - T|\n";
            for (const auto& r : t.rows)
                out << std::left << std::setw(6) << r.N << std::setw(26) << format_double(r.term) << std::setw(26)
                    << format_double(r.partial_sum) << std::setw(26) << format_double(r.T_N)
                    << format_double(r.abs_error) << '\n';
            break;
    }
}

// --- entry point ------------------------------------------------------------

namespace {

struct RawOptions {
    std::string preset = "duffing";
    std::string method = "quadrature";
    std::string frame = "balanced";
    std::string format = "table";
    std::optional<double> energy;
    std::optional<double> amplitude;
    ProblemSpec spec;
};

void add_problem_options(CLI::App* sub, RawOptions& o, bool with_method) {
    sub->add_option("--preset", o.preset, "duffing | cubic | poly");
    sub->add_option("--lambda", o.spec.lambda, "anharmonic coefficient of the preset");
    sub->add_option("--coeffs", o.spec.coeffs, "physical coefficients v0,v1,... for --preset poly")->delimiter(',');
    sub->add_option("--energy", o.energy, "energy E above the minimum (reduced by m w0^2)");
    sub->add_option("--amplitude", o.amplitude, "amplitude A (duffing only)");
    sub->add_option("--mass", o.spec.mass, "mass (default 1)");
    sub->add_option("--omega0", o.spec.omega0, "scaling frequency (default 1)");
    sub->add_option("--reference-x", o.spec.reference_x, "pick the minimum nearest this x (poly)");
    if (with_method) sub->add_option("--method", o.method, "quadrature | series | elliptic | oracle | all");
    sub->add_option("--N", o.spec.N, "series order cap (default 20)");
    sub->add_option("--frame", o.frame, "balanced | nayfeh | fixed:<omega>");
    sub->add_option("--format", o.format, "table | json | csv");
}

ProblemSpec finish(RawOptions& o) {
    ProblemSpec s = o.spec;
    s.preset = parse_preset(o.preset);
    s.method = parse_method(o.method);
    s.frame = parse_frame(o.frame);
    s.energy = o.energy;
    s.amplitude = o.amplitude;
    return s;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Periods of one-dimensional anharmonic oscillators with polynomial potentials", "periodlab"};
    app.require_subcommand(1);

    RawOptions o_period, o_sweep, o_conv, o_verify;
    CLI::App* period = app.add_subcommand("period", "compute the period by one or all methods");
    add_problem_options(period, o_period, true);

    CLI::App* sweep = app.add_subcommand("sweep", "period over a grid of rho or energy values");
    add_problem_options(sweep, o_sweep, true);
    std::string param = "energy";
    SweepSpec sw;
    sweep->add_option("--param", param, "rho | energy")->required();
    sweep->add_option("--from", sw.from, "first grid value")->required();
    sweep->add_option("--to", sw.to, "last grid value")->required();
    sweep->add_option("--steps", sw.steps, "number of grid points (>= 2)")->required();
    sweep->add_flag("--log", sw.log_grid, "logarithmic grid");

    CLI::App* conv = app.add_subcommand("converge", "partial sums of the period series against quadrature");
    add_problem_options(conv, o_conv, false);
    int n_max = 10;
    conv->add_option("--Nmax", n_max, "largest series order (default 10)");

    CLI::App* verify = app.add_subcommand("verify", "cross-check every applicable method against the ODE oracle");
    add_problem_options(verify, o_verify, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : static_cast<int>(ErrorKind::Usage);
    }

    try {
        if (period->parsed()) {
            const ProblemSpec spec = finish(o_period);
            const Format fmt = parse_format(o_period.format);
            const auto records = cmd_period(spec);
            write_records(out, records, fmt, false);
            for (const auto& r : records)
                if (r.status == "error") err << "periodlab: " << r.message << '\n';
            return exit_code_of(records);
        }
        if (sweep->parsed()) {
            const ProblemSpec spec = finish(o_sweep);
            const Format fmt = parse_format(o_sweep.format);
            if (param == "rho")
                sw.param = SweepSpec::Param::Rho;
            else if (param == "energy")
                sw.param = SweepSpec::Param::Energy;
            else
                throw UsageError("--param must be rho or energy");
            write_records(out, cmd_sweep(spec, sw), fmt, true);
            return 0;
        }
        if (conv->parsed()) {
            o_conv.method = "series";
            const ProblemSpec spec = finish(o_conv);
            write_table(out, cmd_converge(spec, n_max), parse_format(o_conv.format));
            return 0;
        }
        if (verify->parsed()) {
            const ProblemSpec spec = finish(o_verify);
            const Format fmt = parse_format(o_verify.format);
            const VerifyReport rep = cmd_verify(spec);
            if (fmt == Format::Json) {
                nlohmann::json j;
                j["records"] = nlohmann::json::array();
                for (const auto& r : rep.records) j["records"].push_back(to_json(r));
                j["max_deviation"] = rep.max_deviation;
                j["threshold"] = rep.threshold;
                j["passed"] = rep.passed;
                out << j.dump(2) << '\n';
            } else {
                write_records(out, rep.records, fmt, false);
                if (fmt == Format::Table)
                    out << "max pairwise relative deviation: " << format_double(rep.max_deviation) << " ("
                        << (rep.passed ? "PASS" : "FAIL") << ", threshold " << format_double(rep.threshold) << ")\n";
            }
            return rep.passed ? 0 : static_cast<int>(ErrorKind::NonConvergence);
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Usage) {
            nlohmann::json j{{"status", "error"}, {"error_code", e.exit_code()}, {"message", e.what()}};
            out << j.dump() << '\n';
        }
        err << "periodlab: " << e.what() << '\n';
        return e.exit_code();
    }
    return static_cast<int>(ErrorKind::Usage);
}

}  // namespace periodlab::cli
