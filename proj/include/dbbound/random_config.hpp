#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "dbbound/covariance.hpp"
#include "dbbound/params.hpp"

namespace dbbound {

// Deterministic per-draw generator: the stream depends only on
// (seed, suite, index), so draws can be evaluated in any order.
class ConfigSampler {
   public:
    ConfigSampler(std::uint64_t seed, std::string_view suite, std::uint64_t index);

    double uniform(double lo, double hi);
    double log_uniform(double lo, double hi);
    bool coin();

    double variance() { return log_uniform(1e-2, 1e2); }
    double power() { return uniform(0.1, 10.0); }
    double gain() { return uniform(0.0, 4.0); }

    MacNfParams mac_nf();
    MacUcParams mac_uc();
    IcUcParams ic_uc();

    // Components uniform in [-max_abs, max_abs], rejected until delta > min_delta.
    CorrelationTriple triple(double max_abs = 0.95, double min_delta = 1e-6);
    // rho1T, rho2T uniform in [0, max_abs]; rho12 = rho1T rho2T.
    CorrelationTriple markov_triple(double max_abs = 0.95);

    std::mt19937_64& engine() { return rng_; }

   private:
    std::mt19937_64 rng_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::string_view suite, std::uint64_t index);

}  // namespace dbbound
