// Copyright 2026 The nlsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nlsearch/qstate.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

namespace nlsearch {

Qubit Qubit::from_index(int index, int n_inputs) {
  if (index < 0 || index > n_inputs) {
    throw std::invalid_argument(fmt::format(
        "qubit index {} out of range [0, {}]", index, n_inputs));
  }
  return index == n_inputs ? flag() : input(index);
}

unsigned Qubit::bit(int n_inputs) const {
  if (is_flag()) return 0;
  if (slot_ < 0 || slot_ >= n_inputs) {
    throw std::invalid_argument(fmt::format(
        "input slot {} out of range for {} input qubits", slot_, n_inputs));
  }
  return static_cast<unsigned>(n_inputs - slot_);
}

StateVector StateVector::basis(int n_inputs, std::uint64_t input, int flag) {
  if (n_inputs < 0 || n_inputs > 62) {
    throw std::invalid_argument(fmt::format("bad register size {}", n_inputs));
  }
  const std::uint64_t inputs = std::uint64_t{1} << n_inputs;
  if (input >= inputs || (flag != 0 && flag != 1)) {
    throw std::invalid_argument("basis label out of range");
  }
  std::vector<Amplitude> amps(inputs * 2);
  amps[(input << 1) | static_cast<std::uint64_t>(flag)] = 1.0;
  return StateVector(n_inputs, std::move(amps));
}

StateVector StateVector::from_amplitudes(int n_inputs,
                                         std::vector<Amplitude> amplitudes) {
  if (n_inputs < 0 || n_inputs > 62 ||
      amplitudes.size() != (std::size_t{2} << n_inputs)) {
    throw std::invalid_argument(
        fmt::format("expected 2^{} amplitudes, got {}", n_inputs + 1,
                    amplitudes.size()));
  }
  const double norm = kernels::omp::norm_squared(amplitudes);
  if (std::abs(norm - 1.0) > kStateTolerance) {
    throw std::invalid_argument(
        fmt::format("state is not normalized: sum |a|^2 = {:.17g}", norm));
  }
  return StateVector(n_inputs, std::move(amplitudes));
}

double StateVector::norm_squared() const {
  return kernels::omp::norm_squared(amplitudes_);
}

DensityMatrix DensityMatrix::from_entries(std::size_t dim,
                                          std::vector<Amplitude> entries) {
  if (dim == 0 || entries.size() != dim * dim) {
    throw std::invalid_argument("density matrix shape mismatch");
  }
  DensityMatrix rho(dim, std::move(entries));
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = r; c < dim; ++c) {
      if (std::abs(rho(r, c) - std::conj(rho(c, r))) > kStateTolerance) {
        throw std::invalid_argument("density matrix is not Hermitian");
      }
    }
  }
  if (std::abs(rho.trace() - 1.0) > kStateTolerance) {
    throw std::invalid_argument("density matrix trace differs from 1");
  }
  if (rho.eigenvalues().front() < -kStateTolerance) {
    throw std::invalid_argument("density matrix has a negative eigenvalue");
  }
  return rho;
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> weights) {
  const std::size_t dim = weights.size();
  std::vector<Amplitude> entries(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) entries[i * dim + i] = weights[i];
  return from_entries(dim, std::move(entries));
}

Amplitude DensityMatrix::trace() const {
  Amplitude t{};
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

Amplitude DensityMatrix::expectation(std::span<const Amplitude> op) const {
  if (op.size() != entries_.size()) {
    throw std::invalid_argument("operator shape mismatch");
  }
  Amplitude total{};
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t k = 0; k < dim_; ++k) total += (*this)(r, k) * op[k * dim_ + r];
  }
  return total;
}

std::vector<double> DensityMatrix::eigenvalues() const {
  Eigen::MatrixXcd m(dim_, dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) m(r, c) = (*this)(r, c);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      m, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

double DensityMatrix::max_abs_difference(const DensityMatrix& other) const {
  if (other.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    worst = std::max(worst, std::abs(entries_[i] - other.entries_[i]));
  }
  return worst;
}

namespace gates {

Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

Matrix2 walsh() {
  const double h = 1.0 / std::sqrt(2.0);
  return {h, -h, h, h};
}

Matrix2 pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }

Matrix2 sigma3() { return {1.0, 0.0, 0.0, -1.0}; }

Matrix2 adjoint(const Matrix2& m) {
  return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

Matrix2 multiply(const Matrix2& a, const Matrix2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

double unitarity_defect(const Matrix2& m) {
  const Matrix2 p = multiply(adjoint(m), m);
  const Matrix2 id = identity();
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(p[i] - id[i]));
  return worst;
}

}  // namespace gates

StateVector apply_single_qubit_gate(const StateVector& state, Qubit qubit,
                                    const Matrix2& gate) {
  const unsigned bit = qubit.bit(state.n_inputs());
  if (const double defect = gates::unitarity_defect(gate);
      defect > kUnitarityTolerance) {
    throw std::invalid_argument(fmt::format(
        "gate is not unitary: max |G^dagger G - 1| = {:.3e}", defect));
  }
  std::vector<Amplitude> amps(state.amplitudes().begin(),
                              state.amplitudes().end());
  kernels::omp::apply_single_qubit(amps, bit, gate);
  return StateVector::from_amplitudes(state.n_inputs(), std::move(amps));
}

DensityMatrix partial_trace(const StateVector& state, Qubit keep) {
  return DensityMatrix::from_matrix2(
      kernels::omp::reduce_qubit(state.amplitudes(), keep.bit(state.n_inputs())));
}

double purity(const DensityMatrix& rho) {
  // Tr rho^2 = sum |rho_ij|^2 for Hermitian rho.
  double total = 0.0;
  for (const Amplitude& e : rho.entries()) total += std::norm(e);
  return total;
}

}  // namespace nlsearch
