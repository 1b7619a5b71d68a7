#pragma once

#include <cmath>
#include <random>

#include <doctest.h>

#include "zeno/config.hpp"
#include "zeno/model.hpp"

namespace zt {

inline zeno::Device default_device() { return zeno::validate(zeno::default_config()); }

inline zeno::Device device_with(void (*edit)(zeno::Config&)) {
    auto c = zeno::default_config();
    edit(c);
    return zeno::validate(c);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Fixed-seed generator so property tests are reproducible.
inline std::mt19937_64& rng() {
    static std::mt19937_64 g(20240611);
    return g;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }
inline double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
}

}  // namespace zt
