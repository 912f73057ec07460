#include "dbbound/random_config.hpp"

#include <cmath>

namespace dbbound {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::string_view suite, std::uint64_t index) {
    return splitmix64(splitmix64(seed ^ fnv1a(suite)) + index);
}

ConfigSampler::ConfigSampler(std::uint64_t seed, std::string_view suite, std::uint64_t index)
    : rng_(mix_seed(seed, suite, index)) {}

// std::uniform_real_distribution is implementation-defined; this keeps
// draws identical across standard libraries.
double ConfigSampler::uniform(double lo, double hi) {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

double ConfigSampler::log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
}

bool ConfigSampler::coin() { return (rng_() >> 63) != 0; }

MacNfParams ConfigSampler::mac_nf() {
    MacNfParams p;
    p.p1 = power();
    p.p2 = power();
    p.sigma_z2 = variance();
    p.sigma_z1_2 = variance();
    p.sigma_z2_2 = variance();
    return p;
}

MacUcParams ConfigSampler::mac_uc() {
    MacUcParams p;
    p.p1 = power();
    p.p2 = power();
    p.sigma_z2 = variance();
    p.sigma_z1_2 = variance();
    p.sigma_z2_2 = variance();
    p.h10 = gain();
    p.h20 = gain();
    p.h12 = gain();
    p.h21 = gain();
    return p;
}

IcUcParams ConfigSampler::ic_uc() {
    IcUcParams p;
    p.p1 = power();
    p.p2 = power();
    p.sigma_n1_2 = variance();
    p.sigma_n2_2 = variance();
    p.sigma_z1_2 = variance();
    p.sigma_z2_2 = variance();
    p.a = gain();
    p.b = gain();
    p.h12 = gain();
    p.h21 = gain();
    return p;
}

CorrelationTriple ConfigSampler::triple(double max_abs, double min_delta) {
    for (;;) {
        CorrelationTriple r{uniform(-max_abs, max_abs), uniform(-max_abs, max_abs),
                            uniform(-max_abs, max_abs)};
        if (delta(r) > min_delta) return r;
    }
}

CorrelationTriple ConfigSampler::markov_triple(double max_abs) {
    const double a = uniform(0.0, max_abs);
    const double b = uniform(0.0, max_abs);
    return {a * b, a, b};
}

}  // namespace dbbound
