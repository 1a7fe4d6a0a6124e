#pragma once

// Self-contained deterministic RNG (splitmix64).  Standard-library
// distributions are implementation-defined, which would break byte-identical
// report reproduction; this keeps every randomized probe stable everywhere.

#include <cstdint>

#include "rollform/complex3.hpp"

namespace rollform {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Complex with both parts uniform in [-m, m).
    Complex complex_box(double m) { return {uniform(-m, m), uniform(-m, m)}; }

    CVec3 cvec3_box(double m) { return {complex_box(m), complex_box(m), complex_box(m)}; }

  private:
    std::uint64_t state_;
};

/// Complex rotation from a bilinear-orthonormalized cross-product frame.
inline CMat3 random_rotation(Rng& rng) {
    for (;;) {
        const CVec3 a = rng.cvec3_box(1.0);
        const CVec3 b = rng.cvec3_box(1.0);
        const Complex na = norm_sq3(a);
        if (std::abs(na) < 1e-3) continue;
        const CVec3 t1 = a / principal_sqrt(na);
        const CVec3 c = cross3(t1, b);
        const Complex nc = norm_sq3(c);
        if (std::abs(nc) < 1e-3) continue;
        const CVec3 t3 = c / principal_sqrt(nc);
        const CVec3 t2 = cross3(t3, t1);
        CMat3 r;
        r.col(0) = t1;
        r.col(1) = t2;
        r.col(2) = t3;
        return r;
    }
}

}  // namespace rollform
