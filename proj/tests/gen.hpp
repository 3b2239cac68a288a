#pragma once

// Hand-rolled property-test generators. Each property runs kCases cases from a
// fixed seed; a failing case prints its index and seed through doctest INFO.

#include <complex>
#include <cstdint>
#include <random>

#include "anglekit/matrix.hpp"

namespace gen {

inline constexpr int kCases = 40;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed), seed_(seed) {}
    std::uint64_t seed() const { return seed_; }
    double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
    anglekit::cplx complex(double r) { return {uniform(-r, r), uniform(-r, r)}; }

private:
    std::mt19937_64 eng_;
    std::uint64_t seed_;
};

inline anglekit::Matrix hermitian(Rng& rng, std::size_t n, double scale = 1.0) {
    anglekit::Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = rng.uniform(-scale, scale);
        for (std::size_t j = i + 1; j < n; ++j) {
            m(i, j) = rng.complex(scale);
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

inline anglekit::Matrix general(Rng& rng, std::size_t r, std::size_t c) {
    anglekit::Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.complex(1.0);
    return m;
}

inline anglekit::TruncatedOperator hermitian_op(Rng& rng, int n, double scale = 1.0) {
    return {anglekit::BasisSpec::one_sided(n), hermitian(rng, static_cast<std::size_t>(n), scale)};
}

}  // namespace gen
