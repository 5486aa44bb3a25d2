// Copyright 2026 The qgame Authors
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

#include "qgame/quantum_core.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "qgame/errors.h"

namespace qgame {
namespace {

std::string Dims(const ComplexMatrix& m) {
  std::ostringstream out;
  out << m.rows() << "x" << m.cols();
  return out.str();
}

void RequireSquare(const ComplexMatrix& m, std::string_view what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ShapeError(std::string(what) + " must be a non-empty square matrix, got " +
                     Dims(m));
  }
}

// Uniform double in [0, 1) from the top 53 bits, independent of the standard
// library's distribution implementation.
double UniformUnit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

void RequireFinite(const ComplexMatrix& m, std::string_view what) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvariantError(std::string(what) + " has a non-finite entry");
    }
  }
}

double MaxAbsEntry(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool IsHermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return MaxAbsEntry(m - m.adjoint()) <= tol;
}

bool IsUnitary(const ComplexMatrix& m, double tol) {
  RequireSquare(m, "unitary candidate");
  const ComplexMatrix gram = m.adjoint() * m;
  return MaxAbsEntry(gram - ComplexMatrix::Identity(m.rows(), m.cols())) <= tol;
}

ComplexMatrix TensorProduct(const ComplexMatrix& a, const ComplexMatrix& b,
                            std::size_t cap) {
  const auto rows = static_cast<std::size_t>(a.rows()) * b.rows();
  const auto cols = static_cast<std::size_t>(a.cols()) * b.cols();
  if (rows > cap || cols > cap) {
    std::ostringstream msg;
    msg << "tensor product " << rows << "x" << cols << " exceeds dimension cap " << cap;
    throw DimensionLimitError(msg.str());
  }
  ComplexMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix TensorProduct(const std::vector<ComplexMatrix>& factors,
                            std::size_t cap) {
  if (factors.empty()) throw ShapeError("tensor product of zero factors");
  ComplexMatrix out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) {
    out = TensorProduct(out, factors[k], cap);
  }
  return out;
}

double CommutatorNorm(const ComplexMatrix& a, const ComplexMatrix& b) {
  RequireSquare(a, "commutator operand");
  RequireSquare(b, "commutator operand");
  if (a.rows() != b.rows()) {
    throw ShapeError("commutator operands differ in dimension: " + Dims(a) + " vs " +
                     Dims(b));
  }
  return MaxAbsEntry(a * b - b * a);
}

// ---------------------------------------------------------------------------

PureState::PureState(ComplexVector amplitudes, double tol)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw ShapeError("pure state of dimension 0");
  RequireFinite(amplitudes_, "pure state");
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > tol) {
    throw InvariantError("pure state is not normalised");
  }
}

PureState PureState::BasisState(int dim, int index) {
  if (dim <= 0 || index < 0 || index >= dim) {
    throw ShapeError("basis state index out of range");
  }
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v));
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, double tol)
    : matrix_(std::move(matrix)) {
  RequireSquare(matrix_, "density matrix");
  RequireFinite(matrix_, "density matrix");
  if (!IsHermitian(matrix_, tol)) {
    throw InvariantError("density matrix is not Hermitian");
  }
  if (std::abs(matrix_.trace() - Complex(1.0, 0.0)) > tol) {
    throw InvariantError("density matrix trace is not 1");
  }
  const ComplexMatrix hermitian = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian,
                                                     Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -tol) {
    throw InvariantError("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::FromPure(const PureState& state) {
  const ComplexVector& psi = state.amplitudes();
  return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::BasisState(int dim, int index) {
  return FromPure(PureState::BasisState(dim, index));
}

double DensityMatrix::DistanceTo(const DensityMatrix& other) const {
  if (other.dim() != dim()) throw ShapeError("density matrix dimension mismatch");
  return MaxAbsEntry(matrix_ - other.matrix_);
}

UnitaryOperator::UnitaryOperator(ComplexMatrix matrix, double tol)
    : matrix_(std::move(matrix)) {
  RequireFinite(matrix_, "unitary operator");
  if (!IsUnitary(matrix_, tol)) {
    throw InvariantError("operator is not unitary");
  }
}

UnitaryOperator UnitaryOperator::Identity(int dim) {
  if (dim <= 0) throw ShapeError("identity of dimension <= 0");
  return UnitaryOperator(ComplexMatrix::Identity(dim, dim), Trusted{});
}

UnitaryOperator UnitaryOperator::Adjoint() const {
  return UnitaryOperator(matrix_.adjoint(), Trusted{});
}

UnitaryOperator UnitaryOperator::operator*(const UnitaryOperator& rhs) const {
  if (rhs.dim() != dim()) throw ShapeError("unitary composition dimension mismatch");
  return UnitaryOperator(matrix_ * rhs.matrix_, Trusted{});
}

MeasurementBasis::MeasurementBasis(std::vector<ComplexMatrix> projectors,
                                   std::vector<std::string> labels, double tol)
    : projectors_(std::move(projectors)), labels_(std::move(labels)) {
  if (projectors_.empty()) throw ShapeError("measurement basis has no projectors");
  if (projectors_.size() != labels_.size()) {
    throw ShapeError("measurement basis needs one label per projector");
  }
  if (std::set<std::string>(labels_.begin(), labels_.end()).size() != labels_.size()) {
    throw InvariantError("measurement basis labels are not distinct");
  }
  RequireSquare(projectors_.front(), "projector");
  dim_ = static_cast<int>(projectors_.front().rows());
  ComplexMatrix sum = ComplexMatrix::Zero(dim_, dim_);
  for (std::size_t i = 0; i < projectors_.size(); ++i) {
    const ComplexMatrix& p = projectors_[i];
    RequireSquare(p, "projector");
    if (p.rows() != dim_) throw ShapeError("projectors differ in dimension");
    RequireFinite(p, "projector");
    if (!IsHermitian(p, tol)) {
      throw InvariantError("projector '" + labels_[i] + "' is not Hermitian");
    }
    for (std::size_t j = 0; j < projectors_.size(); ++j) {
      const ComplexMatrix& q = projectors_[j];
      if (q.rows() != dim_ || q.cols() != dim_) {
        throw ShapeError("projectors differ in dimension");
      }
      const ComplexMatrix expected = i == j ? p : ComplexMatrix::Zero(dim_, dim_);
      if (MaxAbsEntry(p * q - expected) > tol) {
        throw InvariantError("projectors '" + labels_[i] + "' and '" + labels_[j] +
                             "' violate Pi_i Pi_j = delta_ij Pi_i");
      }
    }
    sum += p;
  }
  if (MaxAbsEntry(sum - ComplexMatrix::Identity(dim_, dim_)) > tol) {
    throw InvariantError("projectors do not sum to the identity");
  }
}

MeasurementBasis MeasurementBasis::FromVectors(
    const std::vector<ComplexVector>& vectors, std::vector<std::string> labels,
    double tol) {
  std::vector<ComplexMatrix> projectors;
  projectors.reserve(vectors.size());
  for (const ComplexVector& v : vectors) projectors.push_back(v * v.adjoint());
  return MeasurementBasis(std::move(projectors), std::move(labels), tol);
}

MeasurementBasis MeasurementBasis::Computational(std::vector<std::string> labels) {
  const auto dim = static_cast<Eigen::Index>(labels.size());
  std::vector<ComplexMatrix> projectors;
  projectors.reserve(labels.size());
  for (Eigen::Index k = 0; k < dim; ++k) {
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    p(k, k) = 1.0;
    projectors.push_back(std::move(p));
  }
  return MeasurementBasis(std::move(projectors), std::move(labels));
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> operators, double tol)
    : operators_(std::move(operators)) {
  if (operators_.empty()) throw ChannelError("Kraus channel has no operators");
  RequireSquare(operators_.front(), "Kraus operator");
  dim_ = static_cast<int>(operators_.front().rows());
  ComplexMatrix sum = ComplexMatrix::Zero(dim_, dim_);
  for (const ComplexMatrix& e : operators_) {
    RequireSquare(e, "Kraus operator");
    if (e.rows() != dim_) throw ShapeError("Kraus operators differ in dimension");
    RequireFinite(e, "Kraus operator");
    sum += e.adjoint() * e;
  }
  if (MaxAbsEntry(sum - ComplexMatrix::Identity(dim_, dim_)) > tol) {
    throw ChannelError("Kraus operators are not trace preserving");
  }
}

KrausChannel KrausChannel::MixtureOfUnitaries(
    const std::vector<std::pair<double, UnitaryOperator>>& mixture, double tol) {
  std::vector<ComplexMatrix> operators;
  for (const auto& [p, u] : mixture) {
    if (!(p >= -tol)) throw ChannelError("negative mixture probability");
    if (p <= 0.0) continue;
    operators.push_back(std::sqrt(p) * u.matrix());
  }
  return KrausChannel(std::move(operators), tol);
}

// ---------------------------------------------------------------------------

DensityMatrix EvolveDensity(const DensityMatrix& rho, const UnitaryOperator& u) {
  if (rho.dim() != u.dim()) {
    throw ShapeError("state and unitary differ in dimension");
  }
  return DensityMatrix(u.matrix() * rho.matrix() * u.matrix().adjoint());
}

DensityMatrix ApplyChannel(const DensityMatrix& rho, const KrausChannel& channel) {
  if (rho.dim() != channel.dim()) {
    throw ShapeError("state and channel differ in dimension");
  }
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (const ComplexMatrix& e : channel.operators()) {
    out += e * rho.matrix() * e.adjoint();
  }
  return DensityMatrix(std::move(out));
}

std::vector<double> OutcomeProbabilities(const ComplexMatrix& rho,
                                         const MeasurementBasis& basis) {
  if (rho.rows() != basis.dim() || rho.cols() != basis.dim()) {
    throw ShapeError("state and measurement basis differ in dimension");
  }
  std::vector<double> probs;
  probs.reserve(basis.size());
  for (const ComplexMatrix& p : basis.projectors()) {
    // Tr[Pi rho] without forming the product.
    const double value = (p.transpose().cwiseProduct(rho)).sum().real();
    probs.push_back(std::clamp(value, 0.0, 1.0));
  }
  return probs;
}

std::vector<MeasurementOutcome> Measure(const DensityMatrix& rho,
                                        const MeasurementBasis& basis,
                                        double tol) {
  const std::vector<double> probs = OutcomeProbabilities(rho.matrix(), basis);
  std::vector<MeasurementOutcome> outcomes;
  outcomes.reserve(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    MeasurementOutcome outcome{basis.labels()[i], probs[i], std::nullopt};
    if (probs[i] > tol) {
      const ComplexMatrix& p = basis.projectors()[i];
      ComplexMatrix collapsed = p * rho.matrix() * p;
      collapsed = 0.5 * (collapsed + collapsed.adjoint()).eval();
      collapsed /= collapsed.trace().real();
      // Rounding in Pi rho Pi is amplified by 1/p(o) for rare outcomes.
      outcome.post_state.emplace(std::move(collapsed), std::max(tol, 1e-12 / probs[i]));
    }
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

std::size_t SampleOutcomeIndex(const DensityMatrix& rho,
                               const MeasurementBasis& basis,
                               std::mt19937_64& rng) {
  const std::vector<double> probs = OutcomeProbabilities(rho.matrix(), basis);
  const double u = UniformUnit(rng);
  double cumulative = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    last_nonzero = i;
    cumulative += probs[i];
    if (u < cumulative) return i;
  }
  // Rounding left the cumulative sum slightly below 1.
  return last_nonzero;
}

std::string SampleOutcome(const DensityMatrix& rho, const MeasurementBasis& basis,
                          std::mt19937_64& rng) {
  return basis.labels()[SampleOutcomeIndex(rho, basis, rng)];
}

}  // namespace qgame
