#pragma once

#include <cstdint>
#include <random>

namespace techdiff {

/// splitmix64 mixing step. Used to derive independent stream seeds from a
/// master seed without correlations between consecutive seeds.
std::uint64_t splitmix64(std::uint64_t z);

/// Seed for ensemble member `run_index` under `master_seed`.
std::uint64_t derive_run_seed(std::uint64_t master_seed, std::uint64_t run_index);

/// Uniform draw on the open interval (0, 1); safe as an argument to log.
double uniform_open(std::mt19937_64& engine);

/// Standard normal draw (Box-Muller, one value per call from a cached pair).
class NormalSampler {
public:
    double operator()(std::mt19937_64& engine);

private:
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace techdiff
