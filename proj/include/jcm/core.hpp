// core.hpp — Shared aliases, enums, and error types for the two-mode JCM lab.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace jcm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kImag{0.0, 1.0};

// Atomic level of the two-level system. Basis order is fixed: minus = 0, plus = 1.
enum class AtomicLevel : int { minus = 0, plus = 1 };

// Eigenvalue convention for sigma_z: {±1/2} (half) or {±1} (unit).
enum class SigmaConvention { half, unit };

// Magnitude of the sigma_z eigenvalue under the chosen convention.
inline double sigma_z_magnitude(SigmaConvention c) noexcept {
    return c == SigmaConvention::half ? 0.5 : 1.0;
}

// Raised when a dispersive-regime construction is requested at zero detuning
// with nonzero coupling.
struct resonance_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Raised when a truncated state loses more norm than tolerated.
struct truncation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a requested Hilbert space would exceed the memory budget.
struct capacity_error : std::length_error {
    using std::length_error::length_error;
};

} // namespace jcm
