#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "techdiff/abm.hpp"
#include "techdiff/calibrate.hpp"
#include "techdiff/model.hpp"
#include "techdiff/rk4.hpp"

namespace techdiff {

/// Input rejected by a reader. line is 1-based, 0 when no line applies
/// (for example in JSON documents).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, std::size_t line_no);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// TFP series keyed by country; sorted, duplicate-free, years ascending.
struct Dataset {
    std::map<std::string, TfpSeries> series;
};

/// Reads long-format CSV with header `country,year,value` (UTF-8, LF or
/// CRLF, `.` decimals). Groups by country, sorts each series by year.
/// Throws ParseError on malformed rows or duplicate (country, year) pairs
/// and std::domain_error on nonpositive values, each with the line number.
Dataset parse_tfp_csv(const std::string& text);

/// Inverse of parse_tfp_csv; 17 significant digits so values round-trip
/// bit for bit.
std::string write_tfp_csv(const Dataset& dataset);

struct ProjectionRow {
    std::string country;
    double a0 = 0.0;
    double stderr_a0 = 0.0;
    double gamma = 0.0;
    double stderr_gamma = 0.0;
    std::vector<double> projections;
};

/// Rows ordered by nonincreasing gamma; projections[i] is the level in
/// years[i].
struct ProjectionTable {
    std::vector<int> years;
    std::vector<ProjectionRow> rows;
};

/// Renders a projection table, 6 significant digits in CSV. format is
/// "csv" (columns country,a0,stderr_a0,gamma,stderr_gamma then one a<year>
/// column per projection year) or "json" (array of objects, same fields).
std::string write_projection_table(const ProjectionTable& table, const std::string& format);

enum class CurveKind { FixedFrontier, MovingFrontier, Frontier, Adoption };

/// One plottable series. Only the parameter set matching kind is read.
struct CurveSpec {
    std::string name;
    CurveKind kind = CurveKind::FixedFrontier;
    FixedFrontierParams fixed;
    FrontierParams frontier;
    CatchUpParams catchup;
    AdoptionParams adoption;
};

struct CurveSpecFile {
    std::optional<int> t0_year;
    std::vector<CurveSpec> curves;
};

/// Reads a curve description document: an object with optional "t0_year"
/// and "curves", a list of {name, kind, parameters} entries. kind is one
/// of fixed_frontier (a0, a_m, h), moving_frontier (a0, gamma, a_m0,
/// gamma_m), frontier (a_m0, gamma_m), adoption (sigma, h).
CurveSpecFile parse_curve_specs(const std::string& text);

/// Long-format CSV `series,year,value` sampling each curve's closed form
/// at the model times in grid; the year column is t0_year + t.
std::string emit_curve_samples(const std::vector<CurveSpec>& specs, const std::vector<double>& grid,
                               TimeOrigin origin);

/// One serialized fit: country, fitted parameters with uncertainty, and
/// for catch-up fits the frontier the fit was conditioned on.
struct FitRecord {
    std::string country;
    FitResult fit;
    int t0_year = 0;
    std::optional<FrontierParams> frontier;
};

/// Frontier fit plus per-country catch-up fits sharing one time origin.
struct CombinedFits {
    int t0_year = 0;
    std::string reference;
    FitRecord frontier_fit;
    std::vector<FitRecord> countries;
};

std::string write_fit_record(const FitRecord& record);
FitRecord parse_fit_record(const std::string& text);
std::string write_combined_fits(const CombinedFits& fits);
CombinedFits parse_combined_fits(const std::string& text);

/// Event rows `run,time,x_count`, one per adoption event; initial states
/// are not rows.
std::string write_ensemble_csv(const std::vector<JumpPath>& paths);

/// TFP sample rows `run,time,tfp`, one per trajectory sample including
/// the initial level.
std::string write_tfp_ensemble_csv(const std::vector<Trajectory>& paths);

/// printf %.<sig>g rendering used by all writers.
std::string format_sig(double value, int sig);

}  // namespace techdiff
