#pragma once

// Command layer behind the `periodlab` executable: problem specs, the four
// subcommands, and record serialization (table, CSV, JSON).

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "periodlab/period.hpp"

namespace periodlab::cli {

enum class Preset { Duffing, Cubic, Poly };
enum class MethodChoice { Quadrature, Series, Elliptic, Oracle, All };
enum class Format { Table, Json, Csv };

struct FrameChoice {
    FrameStrategy strategy = FrameStrategy::Balanced;
    double omega = 1.0;  // Fixed only
};

struct ProblemSpec {
    Preset preset = Preset::Duffing;
    double lambda = 0.0;
    std::vector<double> coeffs;  // poly: physical v_k
    std::optional<double> energy;  // physical E above the minimum
    std::optional<double> amplitude;
    double mass = 1.0;
    double omega0 = 1.0;
    double reference_x = 0.0;
    MethodChoice method = MethodChoice::Quadrature;
    int N = 20;
    FrameChoice frame;
};

/// One computed (or failed) period. Schema is shared by every command.
struct OutputRecord {
    std::string preset;
    double lambda = 0.0;
    std::vector<double> coeffs;
    std::optional<double> energy;
    std::optional<double> amplitude;
    double mass = 1.0;
    double omega0 = 1.0;
    std::string method;
    std::string frame;
    int N = -1;
    std::optional<double> T;
    std::optional<double> Omega;
    std::optional<double> err_estimate;
    std::optional<std::string> regime;
    std::optional<double> xi;
    std::optional<double> omega_b;
    std::optional<double> x_minus;
    std::optional<double> x_plus;
    std::optional<double> rho;
    std::optional<double> sqrt_rho_T;
    std::vector<double> partial_sums;
    std::string status = "ok";  // ok | error | unreliable
    std::optional<int> error_code;
    std::string message;
};

struct SweepSpec {
    enum class Param { Rho, Energy } param = Param::Energy;
    double from = 0.0;
    double to = 0.0;
    int steps = 2;
    bool log_grid = false;
};

struct ConvergenceRow {
    int N = 0;
    double term = 0.0;
    double partial_sum = 0.0;
    double T_N = 0.0;
    double abs_error = 0.0;
};

struct ConvergenceTable {
    std::string regime;
    std::optional<double> xi;
    std::string frame;
    bool closed_form = false;
    double T_quadrature = 0.0;
    std::vector<ConvergenceRow> rows;
};

struct VerifyReport {
    std::vector<OutputRecord> records;
    double max_deviation = 0.0;
    double threshold = 1e-6;
    bool passed = false;
};

/// Parses "balanced", "nayfeh" or "fixed:<omega>".
FrameChoice parse_frame(const std::string& text);
std::string frame_name(const FrameChoice& f);

/// Checks the spec invariants (exactly one of energy/amplitude, amplitude only
/// for the duffing preset, ...). Throws UsageError.
void validate(const ProblemSpec& spec);

PolynomialPotential build_potential(const ProblemSpec& spec);
double resolve_energy(const ProblemSpec& spec, const PolynomialPotential& u);

std::vector<OutputRecord> cmd_period(const ProblemSpec& spec);
std::vector<OutputRecord> cmd_sweep(const ProblemSpec& spec, const SweepSpec& sweep);
ConvergenceTable cmd_converge(const ProblemSpec& spec, int n_max);
VerifyReport cmd_verify(const ProblemSpec& spec);

/// Grid of sweep values (linear or logarithmic). Throws UsageError.
std::vector<double> sweep_grid(const SweepSpec& sweep);

nlohmann::json to_json(const OutputRecord& r);
OutputRecord record_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ConvergenceTable& t);

/// Fixed CSV column order.
const std::vector<std::string>& csv_columns();
std::string csv_header();
std::string csv_row(const OutputRecord& r);
/// RFC 4180 quoting when the field contains a comma, quote or newline.
std::string csv_escape(const std::string& field);
/// %.17g formatting.
std::string format_double(double v);

void write_records(std::ostream& out, const std::vector<OutputRecord>& records, Format fmt, bool as_array);
void write_table(std::ostream& out, const ConvergenceTable& t, Format fmt);

/// Entry point of the executable. Returns the process exit code:
/// 0 success, 1 usage, 2 domain (separatrix/energy), 3 numerical non-convergence.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace periodlab::cli
