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

// Dense one- and two-qubit states and operators.
//
// Conventions used throughout the library:
//   * sigma_z = diag(1, -1); |0> is the +1 eigenstate.
//   * sigma_+ = |0><1| and sigma_- = |1><0|. With these, the relaxation
//     channel in relaxation.hpp relaxes towards diag(s, 1 - s).
//   * Two-qubit ordering is probe (x) memory, i.e. basis |pm> =
//     |00>, |01>, |10>, |11>. Qubit index 0 is the probe.
//   * Density matrices may be sub-normalized: the trace of a conditional
//     branch is the probability of reaching it.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>
#include <string>

#include "qsense/errors.hpp"

namespace qsense {

namespace tolerance {
inline constexpr double hermitian = 1e-12;
inline constexpr double psd = 1e-10;
inline constexpr double trace = 1e-12;
inline constexpr double unitary = 1e-12;
inline constexpr double projector = 1e-12;
inline constexpr double probability = 1e-10;
inline constexpr double imaginary = 1e-10;
}  // namespace tolerance

template <typename Real, int Dim>
using Matrix = Eigen::Matrix<std::complex<Real>, Dim, Dim>;

template <typename Real = double>
using Matrix2 = Matrix<Real, 2>;

template <typename Real = double>
using Matrix4 = Matrix<Real, 4>;

/// Runtime-sized operator on one or two qubits; never heap allocates.
template <typename Real = double>
using OperatorX =
    Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 4, 4>;

template <typename Real, int Dim>
using DensityMatrix = Matrix<Real, Dim>;

template <typename Real, int Dim>
using Ket = Eigen::Matrix<std::complex<Real>, Dim, 1>;

enum class Pauli { x, y, z, plus, minus };

enum class Parity { even, odd };

// ---------------------------------------------------------------------------
// Structural checks

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = tolerance::hermitian) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& u, double tol = tolerance::unitary) {
  if (u.rows() != u.cols()) return false;
  const auto id = Derived::PlainObject::Identity(u.rows(), u.cols());
  return (u.adjoint() * u - id).cwiseAbs().maxCoeff() <= tol;
}

template <typename Derived>
bool is_projector(const Eigen::MatrixBase<Derived>& p, double tol = tolerance::projector) {
  return is_hermitian(p, tol) && (p * p - p).cwiseAbs().maxCoeff() <= tol;
}

template <typename Derived>
auto real_trace(const Eigen::MatrixBase<Derived>& m) {
  return m.trace().real();
}

/// Ascending eigenvalues of the Hermitian part of `m`.
template <typename Derived>
auto hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& m) {
  using Plain = typename Derived::PlainObject;
  const Plain h = (m + m.adjoint()) / 2;
  Eigen::SelfAdjointEigenSolver<Plain> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().eval();
}

template <typename Derived>
auto min_eigenvalue(const Eigen::MatrixBase<Derived>& m) {
  return hermitian_eigenvalues(m).minCoeff();
}

/// 1/2 * || a - b ||_1 for Hermitian arguments.
template <typename DA, typename DB>
auto trace_distance(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using Plain = typename DA::PlainObject;
  const Plain diff = a - b;
  return hermitian_eigenvalues(diff).cwiseAbs().sum() / 2;
}

/// Throws NumericalError unless `rho` is Hermitian, PSD and has trace in [0, 1].
template <typename Derived>
void validate_state(const Eigen::MatrixBase<Derived>& rho) {
  if (rho.rows() != rho.cols() || (rho.rows() != 2 && rho.rows() != 4)) {
    throw ArgumentError("density matrix must be 2x2 or 4x4");
  }
  if (!is_hermitian(rho)) throw NumericalError("density matrix is not Hermitian");
  const double lowest = static_cast<double>(min_eigenvalue(rho));
  if (lowest < -tolerance::psd) {
    throw NumericalError("density matrix is not positive semidefinite (min eigenvalue " +
                         std::to_string(lowest) + ")");
  }
  const double tr = static_cast<double>(real_trace(rho));
  if (tr < -tolerance::trace || tr > 1 + tolerance::trace) {
    throw NumericalError("density matrix trace " + std::to_string(tr) + " outside [0, 1]");
  }
}

// ---------------------------------------------------------------------------
// Operators

/// Single-qubit Pauli or ladder operator.
template <typename Real = double>
Matrix2<Real> pauli2(Pauli axis) {
  using C = std::complex<Real>;
  Matrix2<Real> m = Matrix2<Real>::Zero();
  switch (axis) {
    case Pauli::x:
      m(0, 1) = m(1, 0) = C(1);
      break;
    case Pauli::y:
      m(0, 1) = C(0, -1);
      m(1, 0) = C(0, 1);
      break;
    case Pauli::z:
      m(0, 0) = C(1);
      m(1, 1) = C(-1);
      break;
    case Pauli::plus:
      m(0, 1) = C(1);
      break;
    case Pauli::minus:
      m(1, 0) = C(1);
      break;
  }
  return m;
}

/// Kronecker product, left factor = probe. The result must be at most 4x4.
template <typename DA, typename DB>
auto tensor(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename DA::Scalar;
  constexpr bool fixed = DA::RowsAtCompileTime != Eigen::Dynamic &&
                         DA::ColsAtCompileTime != Eigen::Dynamic &&
                         DB::RowsAtCompileTime != Eigen::Dynamic &&
                         DB::ColsAtCompileTime != Eigen::Dynamic;
  if constexpr (fixed) {
    constexpr int rows = DA::RowsAtCompileTime * DB::RowsAtCompileTime;
    constexpr int cols = DA::ColsAtCompileTime * DB::ColsAtCompileTime;
    static_assert(rows <= 4 && cols <= 4, "tensor products beyond two qubits are not supported");
    Eigen::Matrix<Scalar, rows, cols> out;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j)
        out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
  } else {
    if (a.rows() * b.rows() > 4 || a.cols() * b.cols() > 4) {
      throw ArgumentError("tensor products beyond two qubits are not supported");
    }
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 4, 4> out(
        a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j)
        out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
  }
}

/// Pauli or ladder operator on `qubit`, identity on the other qubit (if any).
template <typename Real = double>
OperatorX<Real> pauli(Pauli axis, int qubit, int n_qubits) {
  if (n_qubits != 1 && n_qubits != 2) throw ArgumentError("n_qubits must be 1 or 2");
  if (qubit < 0 || qubit >= n_qubits) throw ArgumentError("qubit index out of range");
  const Matrix2<Real> single = pauli2<Real>(axis);
  if (n_qubits == 1) return single;
  const Matrix2<Real> id = Matrix2<Real>::Identity();
  return qubit == 0 ? OperatorX<Real>(tensor(single, id)) : OperatorX<Real>(tensor(id, single));
}

/// `op` acting on the probe qubit of a two-qubit register.
template <typename Real = double>
Matrix4<Real> on_probe(const Matrix2<Real>& op) {
  return tensor(op, Matrix2<Real>::Identity().eval());
}

template <typename Real = double>
Matrix4<Real> on_memory(const Matrix2<Real>& op) {
  return tensor(Matrix2<Real>::Identity().eval(), op);
}

/// CNOT with the probe as control and the memory as target.
template <typename Real = double>
Matrix4<Real> cnot() {
  Matrix2<Real> zero = Matrix2<Real>::Zero();
  Matrix2<Real> one = Matrix2<Real>::Zero();
  zero(0, 0) = 1;
  one(1, 1) = 1;
  return tensor(zero, Matrix2<Real>::Identity().eval()) + tensor(one, pauli2<Real>(Pauli::x));
}

template <typename Real, int Dim>
DensityMatrix<Real, Dim> projector_onto(const Ket<Real, Dim>& ket) {
  return ket * ket.adjoint();
}

/// Even: |00><00| + |11><11|. Odd: |01><01| + |10><10|.
template <typename Real = double>
Matrix4<Real> parity_projector(Parity parity) {
  Matrix4<Real> p = Matrix4<Real>::Zero();
  if (parity == Parity::even) {
    p(0, 0) = p(3, 3) = 1;
  } else {
    p(1, 1) = p(2, 2) = 1;
  }
  return p;
}

/// (|0> + i^{sign}|1>)/sqrt2 projector, i.e. the sigma_y eigenprojector.
template <typename Real = double>
Matrix2<Real> sigma_y_projector(int sign) {
  return (Matrix2<Real>::Identity() + Real(sign >= 0 ? 1 : -1) * pauli2<Real>(Pauli::y)) / Real(2);
}

/// |psi_f^(+-)> = (|00> +- i|11>)/sqrt2, the even-subspace readout states.
template <typename Real = double>
Matrix4<Real> readout_projector(int sign) {
  Ket<Real, 4> ket = Ket<Real, 4>::Zero();
  const Real r = Real(1) / std::sqrt(Real(2));
  ket(0) = r;
  ket(3) = std::complex<Real>(0, sign >= 0 ? r : -r);
  return projector_onto<Real, 4>(ket);
}

/// Full two-outcome logical readout: CNOT, then sigma_y on the probe.
/// Equals readout_projector(sign) on the even subspace and
/// (|01> +- i|10>)/sqrt2 on the odd one.
template <typename Real = double>
Matrix4<Real> logical_readout(int sign) {
  const Matrix4<Real> u = cnot<Real>();
  return u * on_probe<Real>(sigma_y_projector<Real>(sign)) * u;
}

// ---------------------------------------------------------------------------
// States

template <typename Real = double>
Matrix2<Real> plus_state() {
  return Matrix2<Real>::Constant(std::complex<Real>(Real(0.5)));
}

/// (|00> + |11>)/sqrt2.
template <typename Real = double>
Matrix4<Real> bell_state() {
  Matrix4<Real> rho = Matrix4<Real>::Zero();
  rho(0, 0) = rho(0, 3) = rho(3, 0) = rho(3, 3) = Real(0.5);
  return rho;
}

/// Random full-rank state from the Ginibre ensemble.
template <typename Real, int Dim, typename Rng>
DensityMatrix<Real, Dim> random_state(Rng& rng) {
  std::normal_distribution<Real> normal;
  Matrix<Real, Dim> g;
  for (int i = 0; i < Dim; ++i)
    for (int j = 0; j < Dim; ++j) g(i, j) = std::complex<Real>(normal(rng), normal(rng));
  DensityMatrix<Real, Dim> rho = g * g.adjoint();
  return rho / rho.trace().real();
}

// ---------------------------------------------------------------------------
// Dynamics and measurement

/// u rho u^dagger; `u` must be unitary.
template <typename DR, typename DU>
typename DR::PlainObject conjugate(const Eigen::MatrixBase<DR>& rho,
                                   const Eigen::MatrixBase<DU>& u) {
  if (u.rows() != rho.rows() || u.cols() != rho.cols()) {
    throw ArgumentError("conjugate: dimension mismatch");
  }
  if (!is_unitary(u)) throw ArgumentError("conjugate: operator is not unitary");
  return u * rho * u.adjoint();
}

template <typename Plain>
struct Measurement {
  typename Plain::RealScalar probability;
  Plain branch;  // unnormalized P rho P
};

/// Projective measurement. `probability` is relative to the incoming trace;
/// `branch` keeps the absolute weight so chains of postselections multiply.
template <typename DR, typename DP>
Measurement<typename DR::PlainObject> measure(const Eigen::MatrixBase<DR>& rho,
                                              const Eigen::MatrixBase<DP>& projector) {
  using Plain = typename DR::PlainObject;
  if (!is_projector(projector)) throw ArgumentError("measure: operator is not a projector");
  Plain branch = projector * rho * projector;
  const auto incoming = real_trace(rho);
  const auto weight = real_trace(branch);
  if (weight < -tolerance::probability) {
    throw NumericalError("measure: negative branch probability");
  }
  const auto probability = incoming > 0 ? weight / incoming : decltype(weight)(0);
  return {probability, std::move(branch)};
}

/// Tr[obs rho] for a Hermitian observable.
template <typename DR, typename DO>
auto expect(const Eigen::MatrixBase<DR>& rho, const Eigen::MatrixBase<DO>& obs) {
  if (!is_hermitian(obs)) throw ArgumentError("expect: observable is not Hermitian");
  const auto value = (obs * rho).trace();
  if (std::abs(value.imag()) > tolerance::imaginary) {
    throw NumericalError("expect: expectation value has imaginary part " +
                         std::to_string(static_cast<double>(value.imag())));
  }
  return value.real();
}

}  // namespace qsense
