#pragma once

#include <numbers>

namespace ptsusy {

inline constexpr int kDefaultDegreeCap = 20;

struct ModelParams {
    double nu = 1.0;
    double beta = 0.0;
    double hbar = 1.0;
    double L = 1.0;
    double mass = 0.5;
    int degree_cap = kDefaultDegreeCap;  // bound on m + n

    double epsilon0() const {
        return hbar * hbar * std::numbers::pi * std::numbers::pi / (2.0 * mass * L * L);
    }
    // pi*hbar/L, the natural momentum scale
    double momentum_scale() const { return std::numbers::pi * hbar / L; }

    // Throws DomainError on nonphysical values.
    void validate() const;
};

struct LevelIndex {
    int m = 0;
    int n = 0;
};

}  // namespace ptsusy
