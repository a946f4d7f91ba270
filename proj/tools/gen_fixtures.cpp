// Regenerates the committed data/ fixtures: synthetic TFP series from the
// closed-form model (noiseless and with 2% multiplicative noise) and the
// bundled reference calibrations re-expressed in the fits-file schema.
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "techdiff/calibrate.hpp"
#include "techdiff/data_io.hpp"
#include "techdiff/model.hpp"
#include "techdiff/reference.hpp"
#include "techdiff/rng.hpp"

using namespace techdiff;

namespace {

constexpr int first_year = reference::reference_time_origin;
constexpr int n_years = 30;
constexpr std::uint64_t noise_seed = 424242;

struct SyntheticCountry {
    const char* name;
    CatchUpParams params;
};

const std::vector<SyntheticCountry> synthetic_countries{
    {"CatchupA", {5.0, 0.12}},
    {"CatchupB", {10.0, 0.10}},
    {"CatchupC", {3.5, 0.149}},
};

Dataset make_dataset(bool noisy) {
    std::mt19937_64 engine(noise_seed);
    NormalSampler normal;
    const auto perturb = [&](double v) { return noisy ? v * (1.0 + 0.02 * normal(engine)) : v; };

    Dataset data;
    TfpSeries ref;
    ref.country = "Reference";
    for (int i = 0; i < n_years; ++i) {
        ref.years.push_back(first_year + i);
        ref.values.push_back(perturb(eval_frontier(reference::germany_frontier, i)));
    }
    data.series.emplace(ref.country, ref);
    for (const SyntheticCountry& c : synthetic_countries) {
        TfpSeries s;
        s.country = c.name;
        for (int i = 0; i < n_years; ++i) {
            s.years.push_back(first_year + i);
            s.values.push_back(
                perturb(eval_a_moving(reference::germany_frontier, c.params, i)));
        }
        data.series.emplace(s.country, std::move(s));
    }
    return data;
}

FitRecord table_record(const reference::CountryCalibration& c, const FrontierParams& frontier) {
    FitRecord r;
    r.country = c.country;
    r.t0_year = reference::reference_time_origin;
    r.frontier = frontier;
    r.fit.param_names = {"a0", "gamma"};
    r.fit.params = {c.a0, c.gamma};
    r.fit.stderrs = {c.stderr_a0, c.stderr_gamma};
    r.fit.covariance = {c.stderr_a0 * c.stderr_a0, 0.0, 0.0, c.stderr_gamma * c.stderr_gamma};
    r.fit.ssr = 0.0;
    r.fit.n_obs = n_years;
    r.fit.iterations = 0;
    r.fit.converged = true;
    return r;
}

template <std::size_t N>
CombinedFits table_fits(const char* reference_name, const FrontierParams& frontier,
                        const std::array<reference::CountryCalibration, N>& rows) {
    CombinedFits fits;
    fits.t0_year = reference::reference_time_origin;
    fits.reference = reference_name;
    fits.frontier_fit.country = reference_name;
    fits.frontier_fit.t0_year = fits.t0_year;
    fits.frontier_fit.fit.param_names = {"a_m0", "gamma_m"};
    fits.frontier_fit.fit.params = {frontier.a_m0, frontier.gamma_m};
    fits.frontier_fit.fit.stderrs = {0.0, 0.0};
    fits.frontier_fit.fit.covariance = {0.0, 0.0, 0.0, 0.0};
    fits.frontier_fit.fit.n_obs = n_years;
    fits.frontier_fit.fit.converged = true;
    for (const auto& row : rows) fits.countries.push_back(table_record(row, frontier));
    return fits;
}

void write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

int main(int argc, char** argv) {
    const std::filesystem::path root = argc > 1 ? argv[1] : "data";
    write(root / "fixtures" / "synthetic_noiseless.csv", write_tfp_csv(make_dataset(false)));
    write(root / "fixtures" / "synthetic_noisy.csv", write_tfp_csv(make_dataset(true)));
    write(root / "benchmark_fits_germany.json",
          write_combined_fits(
              table_fits("Germany", reference::germany_frontier, reference::germany_calibrations)));
    write(root / "benchmark_fits_us.json",
          write_combined_fits(table_fits("US", reference::us_frontier, reference::us_calibrations)));
    const std::string demo = R"({
  "t0_year": 1995,
  "curves": [
    {"name": "frontier", "kind": "frontier", "a_m0": 28.7205, "gamma_m": 0.0381261},
    {"name": "Romania", "kind": "moving_frontier",
     "a0": 3.25365, "gamma": 0.148995, "a_m0": 28.7205, "gamma_m": 0.0381261},
    {"name": "Czechia", "kind": "moving_frontier",
     "a0": 12.6282, "gamma": 0.119671, "a_m0": 28.7205, "gamma_m": 0.0381261}
  ]
}
)";
    write(root / "curves_demo.json", demo);
    return 0;
}
