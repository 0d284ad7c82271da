// Copyright 2026 The qsense Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Energy relaxation at finite temperature.
//
// The master equation is
//
//   d rho/dt = -i[H, rho]
//              + G(1-s) (2 s- rho s+ - s+ s- rho - rho s+ s-)
//              + G s    (2 s+ rho s- - s- s+ rho - rho s- s+),
//
// with H = (w/2) sigma_z on the probe. Populations relax at rate 2G towards
// diag(s, 1-s) and coherences decay at rate G (T2 = 2 T1). s = 1/2 is an
// infinite-temperature bath, s = 0 a zero-temperature one.
//
// analytic_map_1q/2q evaluate the closed-form Pauli mixture and are what the
// protocols use. lindblad_integrate integrates the equation above with RK4
// and only exists to check the closed form.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <iostream>
#include <string>

#include "qsense/errors.hpp"
#include "qsense/qstate.hpp"

namespace qsense {

struct NoiseModel {
  double gamma = 1.0;    // decay rate
  double s = 0.5;        // bath temperature parameter
  double epsilon = 0.0;  // parity-readout depolarization probability

  void validate() const {
    if (!std::isfinite(gamma) || gamma < 0) throw ArgumentError("gamma must be >= 0");
    if (!std::isfinite(s) || s < 0 || s > 1) throw ArgumentError("s must lie in [0, 1]");
    if (!std::isfinite(epsilon) || epsilon < 0 || epsilon > 1) {
      throw ArgumentError("epsilon must lie in [0, 1]");
    }
  }

  /// s in (1/2, 1] describes population inversion; accepted but unphysical
  /// for a thermal bath.
  bool thermal() const { return s <= 0.5; }
};

struct FieldParams {
  double omega = 0.0;  // field-induced detuning
  double t = 0.0;      // interaction time
};

/// Coefficients of the Pauli mixture after time `gamma_t`.
template <typename Real = double>
struct RelaxationWeights {
  Real identity;  // rho
  Real flip;      // sigma_x rho sigma_x and sigma_y rho sigma_y, each
  Real phase;     // sigma_z rho sigma_z
  Real drift;     // sigma_z rho + rho sigma_z - i sigma_x rho sigma_y + i sigma_y rho sigma_x

  static RelaxationWeights from(Real gamma_t, Real s) {
    const Real e = std::exp(-gamma_t);
    const Real e2 = e * e;
    return {(1 + 2 * e + e2) / 4, (1 - e2) / 4, (1 - 2 * e + e2) / 4,
            (2 * s - 1) * (1 - e2) / 4};
  }
};

namespace detail {

template <typename Real, int Dim>
struct ProbePaulis {
  Matrix<Real, Dim> x, y, z;
};

template <typename Real, int Dim>
const ProbePaulis<Real, Dim>& probe_paulis() {
  static const ProbePaulis<Real, Dim> paulis = [] {
    if constexpr (Dim == 2) {
      return ProbePaulis<Real, 2>{pauli2<Real>(Pauli::x), pauli2<Real>(Pauli::y),
                                  pauli2<Real>(Pauli::z)};
    } else {
      static_assert(Dim == 4);
      return ProbePaulis<Real, 4>{on_probe<Real>(pauli2<Real>(Pauli::x)),
                                  on_probe<Real>(pauli2<Real>(Pauli::y)),
                                  on_probe<Real>(pauli2<Real>(Pauli::z))};
    }
  }();
  return paulis;
}

/// sigma_z eigenvalue of the probe for each basis index.
template <int Dim>
constexpr int probe_z(int index) {
  return index < Dim / 2 ? 1 : -1;
}

inline void check_map_args(const NoiseModel& nm, const FieldParams& fp) {
  nm.validate();
  if (!std::isfinite(fp.t) || fp.t < 0) throw ArgumentError("interaction time must be >= 0");
  if (!std::isfinite(fp.omega)) throw ArgumentError("omega must be finite");
}

template <typename Real, int Dim>
DensityMatrix<Real, Dim> relax(const DensityMatrix<Real, Dim>& rho, const NoiseModel& nm,
                               const FieldParams& fp) {
  using C = std::complex<Real>;
  check_map_args(nm, fp);
  const auto& p = probe_paulis<Real, Dim>();
  const auto w = RelaxationWeights<Real>::from(Real(nm.gamma * fp.t), Real(nm.s));

  const Matrix<Real, Dim> zr = p.z * rho;
  const Matrix<Real, Dim> xr = p.x * rho;
  const Matrix<Real, Dim> yr = p.y * rho;
  DensityMatrix<Real, Dim> out = w.identity * rho;
  out.noalias() += w.flip * (xr * p.x + yr * p.y);
  out.noalias() += w.phase * (zr * p.z);
  if (w.drift != 0) {
    const C i(0, 1);
    out.noalias() += w.drift * (zr + rho * p.z - i * (xr * p.y) + i * (yr * p.x));
  }

  // e^{-iHt} (.) e^{iHt} with H = (w/2) sigma_z on the probe.
  const Real half_angle = Real(fp.omega * fp.t / 2);
  if (half_angle != 0) {
    for (int i = 0; i < Dim; ++i) {
      for (int j = 0; j < Dim; ++j) {
        const int dz = probe_z<Dim>(i) - probe_z<Dim>(j);
        if (dz != 0) out(i, j) *= std::polar(Real(1), -half_angle * Real(dz));
      }
    }
  }
  return out;
}

}  // namespace detail

/// Closed-form single-qubit relaxation plus field rotation over fp.t.
template <typename Real = double>
DensityMatrix<Real, 2> analytic_map_1q(const DensityMatrix<Real, 2>& rho0, const NoiseModel& nm,
                                       const FieldParams& fp) {
  return detail::relax<Real, 2>(rho0, nm, fp);
}

/// As analytic_map_1q but on the probe of a probe (x) memory register; the
/// memory qubit neither relaxes nor feels the field.
template <typename Real = double>
DensityMatrix<Real, 4> analytic_map_2q(const DensityMatrix<Real, 4>& rho0, const NoiseModel& nm,
                                       const FieldParams& fp) {
  return detail::relax<Real, 4>(rho0, nm, fp);
}

/// Fixed point of the dissipator.
template <typename Real = double>
DensityMatrix<Real, 2> steady_state(Real s) {
  DensityMatrix<Real, 2> rho = DensityMatrix<Real, 2>::Zero();
  rho(0, 0) = s;
  rho(1, 1) = 1 - s;
  return rho;
}

using WarningHandler = std::function<void(const std::string&)>;

inline void warn_to_stderr(const std::string& message) { std::cerr << "warning: " << message << '\n'; }

/// Right-hand side of the master equation (probe operators for Dim == 4).
template <typename Real, int Dim>
DensityMatrix<Real, Dim> lindblad_rhs(const DensityMatrix<Real, Dim>& rho, const NoiseModel& nm,
                                      double omega) {
  using Op = Matrix<Real, Dim>;
  const std::complex<Real> i(0, 1);
  Op lower, raise, z;
  if constexpr (Dim == 2) {
    lower = pauli2<Real>(Pauli::minus);
    raise = pauli2<Real>(Pauli::plus);
    z = pauli2<Real>(Pauli::z);
  } else {
    static_assert(Dim == 4);
    lower = on_probe<Real>(pauli2<Real>(Pauli::minus));
    raise = on_probe<Real>(pauli2<Real>(Pauli::plus));
    z = on_probe<Real>(pauli2<Real>(Pauli::z));
  }
  const Op h = Real(omega / 2) * z;
  const Op rl = raise * lower;
  const Op lr = lower * raise;
  const Real down = Real(nm.gamma * (1 - nm.s));
  const Real up = Real(nm.gamma * nm.s);
  DensityMatrix<Real, Dim> d = -i * (h * rho - rho * h);
  d += down * (Real(2) * lower * rho * raise - rl * rho - rho * rl);
  d += up * (Real(2) * raise * rho * lower - lr * rho - rho * lr);
  return d;
}

/// Classical RK4 over [0, fp.t] in `steps` equal steps. Test oracle only.
template <typename Real, int Dim>
DensityMatrix<Real, Dim> lindblad_integrate(const DensityMatrix<Real, Dim>& rho0,
                                            const NoiseModel& nm, const FieldParams& fp,
                                            int steps,
                                            const WarningHandler& warn = warn_to_stderr) {
  nm.validate();
  if (steps < 1) throw ArgumentError("lindblad_integrate: steps must be >= 1");
  if (!std::isfinite(fp.t) || fp.t < 0) throw ArgumentError("interaction time must be >= 0");
  const double dt = fp.t / steps;
  if (nm.gamma * dt > 0.1 && warn) {
    warn("lindblad_integrate: gamma*dt = " + std::to_string(nm.gamma * dt) +
         " exceeds 0.1; expect reduced accuracy");
  }
  const Real h = Real(dt);
  DensityMatrix<Real, Dim> rho = rho0;
  for (int k = 0; k < steps; ++k) {
    const auto k1 = lindblad_rhs<Real, Dim>(rho, nm, fp.omega);
    const auto k2 = lindblad_rhs<Real, Dim>((rho + h / 2 * k1).eval(), nm, fp.omega);
    const auto k3 = lindblad_rhs<Real, Dim>((rho + h / 2 * k2).eval(), nm, fp.omega);
    const auto k4 = lindblad_rhs<Real, Dim>((rho + h * k3).eval(), nm, fp.omega);
    rho += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return rho;
}

}  // namespace qsense
