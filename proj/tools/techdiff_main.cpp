#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "techdiff/abm.hpp"
#include "techdiff/calibrate.hpp"
#include "techdiff/data_io.hpp"
#include "techdiff/model.hpp"

namespace {

using namespace techdiff;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_temp(const std::string& temp, const std::string& content) {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (out) out << content << std::flush;
    if (!out) {
        std::remove(temp.c_str());
        throw std::runtime_error("cannot write output file '" + temp + "'");
    }
}

void commit_temp(const std::string& temp, const std::string& path) {
    if (std::rename(temp.c_str(), path.c_str()) != 0) {
        std::remove(temp.c_str());
        throw std::runtime_error("cannot move output into place at '" + path + "'");
    }
}

/// Full content is prepared in memory, staged to <path>.tmp, then renamed;
/// a failing run never leaves a partial file at the final path.
void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string temp = path + ".tmp";
    write_temp(temp, content);
    commit_temp(temp, path);
}

const TfpSeries& find_series(const Dataset& data, const std::string& country) {
    const auto it = data.series.find(country);
    if (it == data.series.end()) {
        throw std::runtime_error("no series for country '" + country + "' in input");
    }
    return it->second;
}

std::size_t param_index(const FitResult& fit, const std::string& name) {
    for (std::size_t i = 0; i < fit.param_names.size(); ++i) {
        if (fit.param_names[i] == name) return i;
    }
    throw std::runtime_error("fit carries no parameter named '" + name + "'");
}

FrontierParams frontier_of(const CombinedFits& fits, const FitRecord& record) {
    if (record.frontier) return *record.frontier;
    const FitResult& f = fits.frontier_fit.fit;
    return {f.params[param_index(f, "a_m0")], f.params[param_index(f, "gamma_m")]};
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t colon = text.find(':', start);
        if (colon == std::string::npos) {
            parts.push_back(text.substr(start));
            break;
        }
        parts.push_back(text.substr(start, colon - start));
        start = colon + 1;
    }
    if (parts.size() != 3) throw std::runtime_error("grid must be start:end:step");
    double v[3];
    for (int i = 0; i < 3; ++i) {
        const auto res = std::from_chars(parts[i].data(), parts[i].data() + parts[i].size(), v[i]);
        if (res.ec != std::errc{} || res.ptr != parts[i].data() + parts[i].size()) {
            throw std::runtime_error("grid has a malformed number '" + parts[i] + "'");
        }
    }
    if (!(v[2] > 0.0)) throw std::runtime_error("grid step must be positive");
    if (v[1] < v[0]) throw std::runtime_error("grid end before start");
    std::vector<double> grid;
    const auto count = static_cast<std::size_t>(std::floor((v[1] - v[0]) / v[2] + 1e-9));
    for (std::size_t i = 0; i <= count; ++i) grid.push_back(v[0] + static_cast<double>(i) * v[2]);
    return grid;
}

std::string tfp_out_path(const std::string& out) {
    const std::size_t slash = out.find_last_of('/');
    const std::size_t dot = out.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return out + "_tfp";
    }
    return out.substr(0, dot) + "_tfp" + out.substr(dot);
}

void add_lm_flags(CLI::App* cmd, LmOptions& opts) {
    cmd->add_option("--max-iterations", opts.max_iterations, "iteration cap");
    cmd->add_option("--damping", opts.initial_damping, "initial damping");
    cmd->add_option("--damping-factor", opts.damping_factor, "damping multiplier");
    cmd->add_option("--ssr-tol", opts.ssr_rel_tol, "relative SSR change tolerance");
    cmd->add_option("--gradient-tol", opts.gradient_tol, "gradient infinity-norm tolerance");
    cmd->add_option("--jacobian-step", opts.jacobian_rel_step, "relative finite-difference step");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Herding-based technology diffusion: fitting, projection, simulation"};
    app.require_subcommand(1);

    std::string input, out, country, reference, fits_path, format = "csv", spec_path, grid_text;
    std::string tfp_out;
    std::vector<std::string> countries;
    std::vector<int> years{2030, 2050};
    std::optional<int> t0;
    LmOptions lm;
    int n = 0, runs = 0, x0 = 0;
    double sigma = 0.0, h = 0.0, gamma = 0.0, a0 = 0.0, t_max = 0.0;
    std::uint64_t seed = 0;

    CLI::App* fit_frontier_cmd =
        app.add_subcommand("fit-frontier", "Fit the exponential frontier path for one country");
    fit_frontier_cmd->add_option("--input", input, "TFP CSV (country,year,value)")->required();
    fit_frontier_cmd->add_option("--country", country, "reference country identifier")->required();
    fit_frontier_cmd->add_option("--t0", t0, "calendar year at model time 0 (default: first year)");
    fit_frontier_cmd->add_option("--out", out, "fit JSON path")->required();
    add_lm_flags(fit_frontier_cmd, lm);

    CLI::App* fit_all_cmd =
        app.add_subcommand("fit-all", "Fit frontier, then every country's catch-up path");
    fit_all_cmd->add_option("--input", input, "TFP CSV (country,year,value)")->required();
    fit_all_cmd->add_option("--reference", reference, "frontier country identifier")->required();
    fit_all_cmd->add_option("--countries", countries, "comma-separated list (default: all others)")
        ->delimiter(',');
    fit_all_cmd->add_option("--t0", t0, "calendar year at model time 0 (default: reference first year)");
    fit_all_cmd->add_option("--out", out, "combined fits JSON path")->required();
    add_lm_flags(fit_all_cmd, lm);

    CLI::App* table_cmd =
        app.add_subcommand("table", "Projection table from a fits file, descending gamma");
    table_cmd->add_option("--fits", fits_path, "combined fits JSON")->required();
    table_cmd->add_option("--years", years, "projection years")->delimiter(',');
    table_cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    table_cmd->add_option("--out", out, "output path")->required();

    CLI::App* project_cmd = app.add_subcommand("project", "Project one country's fitted path");
    project_cmd->add_option("--fits", fits_path, "combined fits JSON")->required();
    project_cmd->add_option("--country", country, "country identifier")->required();
    project_cmd->add_option("--years", years, "projection years")->delimiter(',')->required();
    project_cmd->add_option("--out", out, "output CSV path")->required();

    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "Stochastic adoption ensemble with coupled TFP paths");
    simulate_cmd->set_help_flag("--help", "print help");
    simulate_cmd->add_option("--n", n, "agent count")->required()->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--sigma", sigma, "spontaneous adoption rate")
        ->required()
        ->check(CLI::NonNegativeNumber);
    simulate_cmd->add_option("--h", h, "herding rate")->required()->check(CLI::NonNegativeNumber);
    simulate_cmd->add_option("--gamma", gamma, "TFP growth rate at zero adoption")
        ->required()
        ->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--a0", a0, "initial TFP level")->required()->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--t-max", t_max, "simulated horizon in years")
        ->required()
        ->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--runs", runs, "ensemble size")->required()->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--seed", seed, "master seed")->required();
    simulate_cmd->add_option("--x0", x0, "initial adopter count")->check(CLI::NonNegativeNumber);
    simulate_cmd->add_option("--out", out, "event CSV path (run,time,x_count)")->required();
    simulate_cmd->add_option("--tfp-out", tfp_out,
                             "TFP CSV path (run,time,tfp); default: --out with _tfp "
                             "before the extension");

    CLI::App* curves_cmd = app.add_subcommand("curves", "Sample closed-form curves for plotting");
    curves_cmd->add_option("--spec", spec_path, "curve spec JSON")->required();
    curves_cmd
        ->add_option("--grid", grid_text,
                     "start:end:step, in calendar years when the spec sets t0_year")
        ->required();
    curves_cmd->add_option("--out", out, "output CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    const std::string active = app.get_subcommands().front()->get_name();
    try {
        if (*fit_frontier_cmd) {
            const Dataset data = parse_tfp_csv(read_file(input));
            const TfpSeries& series = find_series(data, country);
            const TimeOrigin origin{t0 ? *t0 : series.years.front()};
            FitRecord record{country, fit_frontier(series, origin, lm), origin.t0_year, {}};
            write_file_atomic(out, write_fit_record(record));
        } else if (*fit_all_cmd) {
            const Dataset data = parse_tfp_csv(read_file(input));
            const TfpSeries& ref = find_series(data, reference);
            const TimeOrigin origin{t0 ? *t0 : ref.years.front()};
            CombinedFits fits;
            fits.t0_year = origin.t0_year;
            fits.reference = reference;
            fits.frontier_fit = {reference, fit_frontier(ref, origin, lm), origin.t0_year, {}};
            const FitResult& ff = fits.frontier_fit.fit;
            const FrontierParams frontier{ff.params[param_index(ff, "a_m0")],
                                          ff.params[param_index(ff, "gamma_m")]};
            if (countries.empty()) {
                for (const auto& [name, series] : data.series) {
                    if (name != reference) countries.push_back(name);
                }
            }
            for (const std::string& c : countries) {
                const TfpSeries& series = find_series(data, c);
                fits.countries.push_back(
                    {c, fit_catchup(series, frontier, origin, lm), origin.t0_year, frontier});
            }
            write_file_atomic(out, write_combined_fits(fits));
        } else if (*table_cmd) {
            const CombinedFits fits = parse_combined_fits(read_file(fits_path));
            std::vector<std::pair<std::string, FitResult>> entries;
            for (const FitRecord& r : fits.countries) entries.emplace_back(r.country, r.fit);
            ProjectionTable table;
            table.years = years;
            for (const auto& [name, fit] : rank_by_gamma(std::move(entries))) {
                const FitRecord* record = nullptr;
                for (const FitRecord& r : fits.countries) {
                    if (r.country == name) record = &r;
                }
                const std::size_t ia = param_index(fit, "a0");
                const std::size_t ig = param_index(fit, "gamma");
                ProjectionRow row{name, fit.params[ia], fit.stderrs[ia], fit.params[ig],
                                  fit.stderrs[ig], {}};
                const CatchUpParams c{row.a0, row.gamma};
                for (const auto& [year, value] :
                     project(frontier_of(fits, *record), c, {record->t0_year}, years)) {
                    (void)year;
                    row.projections.push_back(value);
                }
                table.rows.push_back(std::move(row));
            }
            write_file_atomic(out, write_projection_table(table, format));
        } else if (*project_cmd) {
            const CombinedFits fits = parse_combined_fits(read_file(fits_path));
            const FitRecord* record = nullptr;
            for (const FitRecord& r : fits.countries) {
                if (r.country == country) record = &r;
            }
            if (!record) {
                throw std::runtime_error("no catch-up fit for country '" + country +
                                         "' in fits file");
            }
            const FitResult& fit = record->fit;
            const CatchUpParams c{fit.params[param_index(fit, "a0")],
                                  fit.params[param_index(fit, "gamma")]};
            std::string csv = "country,year,value\n";
            for (const auto& [year, value] :
                 project(frontier_of(fits, *record), c, {record->t0_year}, years)) {
                csv += country + ',' + std::to_string(year) + ',' + format_sig(value, 12) + '\n';
            }
            write_file_atomic(out, csv);
        } else if (*simulate_cmd) {
            const DiffusionParams p{sigma, h, n};
            const std::vector<JumpPath> paths =
                simulate_adoption_ensemble(p, x0, t_max, runs, seed);
            std::vector<Trajectory> tfp;
            tfp.reserve(paths.size());
            for (const JumpPath& path : paths) tfp.push_back(coupled_tfp_path(path, gamma, a0));
            if (tfp_out.empty()) tfp_out = tfp_out_path(out);
            const std::string events_csv = write_ensemble_csv(paths);
            const std::string tfp_csv = write_tfp_ensemble_csv(tfp);
            write_temp(out + ".tmp", events_csv);
            write_temp(tfp_out + ".tmp", tfp_csv);
            commit_temp(out + ".tmp", out);
            commit_temp(tfp_out + ".tmp", tfp_out);
        } else if (*curves_cmd) {
            const CurveSpecFile spec = parse_curve_specs(read_file(spec_path));
            std::vector<double> grid = parse_grid(grid_text);
            TimeOrigin origin{0};
            if (spec.t0_year) {
                origin.t0_year = *spec.t0_year;
                for (double& g : grid) g -= *spec.t0_year;
            }
            write_file_atomic(out, emit_curve_samples(spec.curves, grid, origin));
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "techdiff %s: error: %s\n", active.c_str(), e.what());
        return 1;
    }
    return 0;
}
