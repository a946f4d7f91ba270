#include "techdiff/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <utility>

#include <json.hpp>

namespace techdiff {

namespace {

using nlohmann::json;

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        std::string line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
        start = end + 1;
    }
    return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

int parse_int_field(const std::string& s, std::size_t line_no, const char* what) {
    int value = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw ParseError(std::string("expected integer ") + what + ", got '" + s + "'", line_no);
    }
    return value;
}

double parse_double_field(const std::string& s, std::size_t line_no, const char* what) {
    double value = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(value)) {
        throw ParseError(std::string("expected number ") + what + ", got '" + s + "'", line_no);
    }
    return value;
}

double require_number(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw ParseError(where + ": missing numeric field '" + key + "'", 0);
    }
    return j.at(key).get<double>();
}

json params_object(const FitResult& fit, const std::vector<double>& values) {
    json obj = json::object();
    for (std::size_t i = 0; i < fit.param_names.size(); ++i) obj[fit.param_names[i]] = values[i];
    return obj;
}

json record_to_json(const FitRecord& record) {
    const FitResult& fit = record.fit;
    json j;
    j["country"] = record.country;
    j["params"] = params_object(fit, fit.params);
    j["stderr"] = params_object(fit, fit.stderrs);
    j["covariance"] = {{"dim", fit.param_names.size()}, {"values", fit.covariance}};
    j["ssr"] = fit.ssr;
    j["n_obs"] = fit.n_obs;
    j["iterations"] = fit.iterations;
    j["converged"] = fit.converged;
    j["t0_year"] = record.t0_year;
    j["warnings"] = fit.warnings;
    if (record.frontier) {
        j["frontier"] = {{"a_m0", record.frontier->a_m0}, {"gamma_m", record.frontier->gamma_m}};
    }
    return j;
}

FitRecord record_from_json(const json& j) {
    FitRecord record;
    if (!j.is_object()) throw ParseError("fit record: not an object", 0);
    if (!j.contains("country") || !j.at("country").is_string()) {
        throw ParseError("fit record: missing 'country'", 0);
    }
    record.country = j.at("country").get<std::string>();
    const std::string where = "fit record '" + record.country + "'";
    if (!j.contains("params") || !j.at("params").is_object() || j.at("params").empty()) {
        throw ParseError(where + ": missing 'params'", 0);
    }
    FitResult& fit = record.fit;
    for (const auto& [name, value] : j.at("params").items()) {
        if (!value.is_number()) throw ParseError(where + ": parameter '" + name + "' not numeric", 0);
        fit.param_names.push_back(name);
        fit.params.push_back(value.get<double>());
    }
    if (!j.contains("stderr") || !j.at("stderr").is_object()) {
        throw ParseError(where + ": missing 'stderr'", 0);
    }
    for (const auto& name : fit.param_names) {
        fit.stderrs.push_back(require_number(j.at("stderr"), name.c_str(), where + " stderr"));
    }
    if (!j.contains("covariance") || !j.at("covariance").is_object()) {
        throw ParseError(where + ": missing 'covariance'", 0);
    }
    const json& cov = j.at("covariance");
    const auto dim = static_cast<std::size_t>(require_number(cov, "dim", where));
    if (dim != fit.param_names.size()) throw ParseError(where + ": covariance dim mismatch", 0);
    if (!cov.contains("values") || !cov.at("values").is_array() ||
        cov.at("values").size() != dim * dim) {
        throw ParseError(where + ": covariance values must hold dim*dim numbers", 0);
    }
    for (const auto& v : cov.at("values")) {
        if (!v.is_number()) throw ParseError(where + ": covariance entry not numeric", 0);
        fit.covariance.push_back(v.get<double>());
    }
    fit.ssr = require_number(j, "ssr", where);
    fit.n_obs = static_cast<int>(require_number(j, "n_obs", where));
    fit.iterations = static_cast<int>(require_number(j, "iterations", where));
    if (!j.contains("converged") || !j.at("converged").is_boolean()) {
        throw ParseError(where + ": missing 'converged'", 0);
    }
    fit.converged = j.at("converged").get<bool>();
    record.t0_year = static_cast<int>(require_number(j, "t0_year", where));
    if (j.contains("warnings")) {
        for (const auto& w : j.at("warnings")) fit.warnings.push_back(w.get<std::string>());
    }
    if (j.contains("frontier")) {
        record.frontier = FrontierParams{require_number(j.at("frontier"), "a_m0", where),
                                         require_number(j.at("frontier"), "gamma_m", where)};
    }
    return record;
}

json parse_document(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string(what) + ": " + e.what(), 0);
    }
}

}  // namespace

ParseError::ParseError(std::string msg, std::size_t line_no)
    : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg
                                     : std::move(msg)),
      line_(line_no) {}

std::string format_sig(double value, int sig) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", sig, value);
    return buf;
}

Dataset parse_tfp_csv(const std::string& text) {
    const std::vector<std::string> lines = split_lines(text);
    if (lines.empty() || lines[0] != "country,year,value") {
        throw ParseError("expected header 'country,year,value'", 1);
    }
    std::map<std::string, std::vector<std::pair<int, double>>> rows;
    std::map<std::pair<std::string, int>, std::size_t> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        if (lines[i].empty()) continue;
        const std::vector<std::string> fields = split_fields(lines[i]);
        if (fields.size() != 3) {
            throw ParseError("expected 3 comma-separated fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        }
        if (fields[0].empty()) throw ParseError("empty country identifier", line_no);
        const int year = parse_int_field(fields[1], line_no, "year");
        const double value = parse_double_field(fields[2], line_no, "value");
        if (!(value > 0.0)) {
            throw std::domain_error("line " + std::to_string(line_no) +
                                    ": nonpositive TFP value " + fields[2]);
        }
        const auto key = std::make_pair(fields[0], year);
        const auto [it, inserted] = seen.emplace(key, line_no);
        if (!inserted) {
            throw ParseError("duplicate observation for " + fields[0] + ", " + fields[1] +
                                 " (first at line " + std::to_string(it->second) + ")",
                             line_no);
        }
        rows[fields[0]].emplace_back(year, value);
    }
    Dataset out;
    for (auto& [country, obs] : rows) {
        std::sort(obs.begin(), obs.end());
        TfpSeries s;
        s.country = country;
        for (const auto& [year, value] : obs) {
            s.years.push_back(year);
            s.values.push_back(value);
        }
        out.series.emplace(country, std::move(s));
    }
    return out;
}

std::string write_tfp_csv(const Dataset& dataset) {
    std::string out = "country,year,value\n";
    for (const auto& [country, s] : dataset.series) {
        for (std::size_t i = 0; i < s.years.size(); ++i) {
            out += country;
            out += ',';
            out += std::to_string(s.years[i]);
            out += ',';
            out += format_sig(s.values[i], 17);
            out += '\n';
        }
    }
    return out;
}

std::string write_projection_table(const ProjectionTable& table, const std::string& format) {
    std::set<std::string> names;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const ProjectionRow& row = table.rows[i];
        if (!names.insert(row.country).second) {
            throw std::domain_error("write_projection_table: duplicate country " + row.country);
        }
        if (row.projections.size() != table.years.size()) {
            throw std::domain_error("write_projection_table: projection count mismatch for " +
                                    row.country);
        }
        if (i > 0 && table.rows[i - 1].gamma < row.gamma) {
            throw std::domain_error("write_projection_table: rows not ordered by descending gamma");
        }
    }
    if (format == "csv") {
        std::string out = "country,a0,stderr_a0,gamma,stderr_gamma";
        for (int year : table.years) out += ",a" + std::to_string(year);
        out += '\n';
        for (const ProjectionRow& row : table.rows) {
            out += row.country;
            for (double v : {row.a0, row.stderr_a0, row.gamma, row.stderr_gamma}) {
                out += ',';
                out += format_sig(v, 6);
            }
            for (double v : row.projections) {
                out += ',';
                out += format_sig(v, 6);
            }
            out += '\n';
        }
        return out;
    }
    if (format == "json") {
        json arr = json::array();
        for (const ProjectionRow& row : table.rows) {
            json j;
            j["country"] = row.country;
            j["a0"] = row.a0;
            j["stderr_a0"] = row.stderr_a0;
            j["gamma"] = row.gamma;
            j["stderr_gamma"] = row.stderr_gamma;
            for (std::size_t i = 0; i < table.years.size(); ++i) {
                j["a" + std::to_string(table.years[i])] = row.projections[i];
            }
            arr.push_back(std::move(j));
        }
        return arr.dump(2) + "\n";
    }
    throw std::domain_error("write_projection_table: unknown format '" + format + "'");
}

CurveSpecFile parse_curve_specs(const std::string& text) {
    const json doc = parse_document(text, "curve spec");
    if (!doc.is_object() || !doc.contains("curves") || !doc.at("curves").is_array()) {
        throw ParseError("curve spec: expected object with a 'curves' array", 0);
    }
    CurveSpecFile out;
    if (doc.contains("t0_year")) {
        if (!doc.at("t0_year").is_number_integer()) {
            throw ParseError("curve spec: 't0_year' must be an integer", 0);
        }
        out.t0_year = doc.at("t0_year").get<int>();
    }
    for (const json& entry : doc.at("curves")) {
        CurveSpec spec;
        if (!entry.is_object() || !entry.contains("name") || !entry.at("name").is_string() ||
            entry.at("name").get<std::string>().empty()) {
            throw ParseError("curve spec: every curve needs a nonempty 'name'", 0);
        }
        spec.name = entry.at("name").get<std::string>();
        const std::string where = "curve '" + spec.name + "'";
        if (!entry.contains("kind") || !entry.at("kind").is_string()) {
            throw ParseError(where + ": missing 'kind'", 0);
        }
        const std::string kind = entry.at("kind").get<std::string>();
        if (kind == "fixed_frontier") {
            spec.kind = CurveKind::FixedFrontier;
            spec.fixed = {require_number(entry, "a0", where), require_number(entry, "a_m", where),
                          require_number(entry, "h", where)};
        } else if (kind == "moving_frontier") {
            spec.kind = CurveKind::MovingFrontier;
            spec.catchup = {require_number(entry, "a0", where),
                            require_number(entry, "gamma", where)};
            spec.frontier = {require_number(entry, "a_m0", where),
                             require_number(entry, "gamma_m", where)};
        } else if (kind == "frontier") {
            spec.kind = CurveKind::Frontier;
            spec.frontier = {require_number(entry, "a_m0", where),
                             require_number(entry, "gamma_m", where)};
        } else if (kind == "adoption") {
            spec.kind = CurveKind::Adoption;
            spec.adoption = {require_number(entry, "sigma", where),
                             require_number(entry, "h", where)};
        } else {
            throw ParseError(where + ": unknown kind '" + kind + "'", 0);
        }
        out.curves.push_back(std::move(spec));
    }
    return out;
}

std::string emit_curve_samples(const std::vector<CurveSpec>& specs, const std::vector<double>& grid,
                               TimeOrigin origin) {
    std::string out = "series,year,value\n";
    for (const CurveSpec& spec : specs) {
        for (double t : grid) {
            double value = 0.0;
            switch (spec.kind) {
                case CurveKind::FixedFrontier: value = eval_a_fixed(spec.fixed, t); break;
                case CurveKind::MovingFrontier:
                    value = eval_a_moving(spec.frontier, spec.catchup, t);
                    break;
                case CurveKind::Frontier: value = eval_frontier(spec.frontier, t); break;
                case CurveKind::Adoption: value = eval_x(spec.adoption, t); break;
            }
            out += spec.name;
            out += ',';
            out += format_sig(origin.t0_year + t, 12);
            out += ',';
            out += format_sig(value, 12);
            out += '\n';
        }
    }
    return out;
}

std::string write_fit_record(const FitRecord& record) {
    return record_to_json(record).dump(2) + "\n";
}

FitRecord parse_fit_record(const std::string& text) {
    return record_from_json(parse_document(text, "fit record"));
}

std::string write_combined_fits(const CombinedFits& fits) {
    json j;
    j["t0_year"] = fits.t0_year;
    j["reference"] = fits.reference;
    j["frontier_fit"] = record_to_json(fits.frontier_fit);
    json arr = json::array();
    for (const FitRecord& r : fits.countries) arr.push_back(record_to_json(r));
    j["countries"] = std::move(arr);
    return j.dump(2) + "\n";
}

CombinedFits parse_combined_fits(const std::string& text) {
    const json j = parse_document(text, "fits file");
    if (!j.is_object() || !j.contains("frontier_fit") || !j.contains("countries")) {
        throw ParseError("fits file: expected 'frontier_fit' and 'countries'", 0);
    }
    CombinedFits out;
    out.t0_year = static_cast<int>(require_number(j, "t0_year", "fits file"));
    if (!j.contains("reference") || !j.at("reference").is_string()) {
        throw ParseError("fits file: missing 'reference'", 0);
    }
    out.reference = j.at("reference").get<std::string>();
    out.frontier_fit = record_from_json(j.at("frontier_fit"));
    if (!j.at("countries").is_array()) throw ParseError("fits file: 'countries' must be an array", 0);
    for (const json& entry : j.at("countries")) out.countries.push_back(record_from_json(entry));
    return out;
}

std::string write_ensemble_csv(const std::vector<JumpPath>& paths) {
    std::string out = "run,time,x_count\n";
    for (std::size_t run = 0; run < paths.size(); ++run) {
        const JumpPath& p = paths[run];
        for (std::size_t i = 1; i < p.times.size(); ++i) {
            out += std::to_string(run);
            out += ',';
            out += format_sig(p.times[i], 17);
            out += ',';
            out += std::to_string(p.states[i]);
            out += '\n';
        }
    }
    return out;
}

std::string write_tfp_ensemble_csv(const std::vector<Trajectory>& paths) {
    std::string out = "run,time,tfp\n";
    for (std::size_t run = 0; run < paths.size(); ++run) {
        const Trajectory& p = paths[run];
        for (std::size_t i = 0; i < p.times.size(); ++i) {
            out += std::to_string(run);
            out += ',';
            out += format_sig(p.times[i], 17);
            out += ',';
            out += format_sig(p.values[i], 17);
            out += '\n';
        }
    }
    return out;
}

}  // namespace techdiff
