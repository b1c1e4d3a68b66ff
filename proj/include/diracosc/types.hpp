#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace diracosc {

using Complex = std::complex<double>;

/// Four complex components of a Dirac spinor at one point.
using Spinor = std::array<Complex, 4>;

/// Two-component (Pauli) block of a Dirac spinor.
using Spinor2 = std::array<Complex, 2>;

/// Raised for arguments outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a numerical self-test or convergence requirement fails.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mass and oscillator frequency in natural units (hbar = c = 1).
///
/// omega = 0 is representable so that the free-particle limit of the
/// spectrum can be evaluated; anything that builds wavefunctions calls
/// require_oscillating() first.
struct OscParams {
  double mass = 1.0;
  double omega = 1.0;

  OscParams() = default;
  OscParams(double m, double w) : mass(m), omega(w) {
    if (!(m > 0.0)) throw DomainError("OscParams: mass must be > 0");
    if (!(w >= 0.0)) throw DomainError("OscParams: omega must be >= 0");
  }

  /// m * omega, the inverse squared oscillator length.
  double m_omega() const { return mass * omega; }
};

inline void require_oscillating(const OscParams& p) {
  if (!(p.omega > 0.0))
    throw DomainError("operation requires omega > 0 (got omega = " +
                      std::to_string(p.omega) + ")");
}

inline Spinor operator+(const Spinor& a, const Spinor& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

inline Spinor operator-(const Spinor& a, const Spinor& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

inline Spinor operator*(Complex s, const Spinor& a) {
  return {s * a[0], s * a[1], s * a[2], s * a[3]};
}

/// psi^dagger chi.
inline Complex dot(const Spinor& a, const Spinor& b) {
  Complex acc = 0.0;
  for (int i = 0; i < 4; ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

inline double norm2(const Spinor& a) { return dot(a, a).real(); }

}  // namespace diracosc
