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

#ifndef QGAME_QUANTUM_CORE_H_
#define QGAME_QUANTUM_CORE_H_

// Dense complex linear algebra for small finite-dimensional quantum systems:
// states, projective measurements, unitary evolution, Kraus channels and
// composite systems.
//
// Conventions:
//  * Column vectors hold kets, square matrices hold operators.
//  * In a tensor product the left factor is the most significant index
//    block, so |0>_A (x) |1>_B is basis index 1 of the composite system.
//  * States are compared as density matrices; global phases never matter.

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace qgame {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kDefaultTol = 1e-9;
inline constexpr std::size_t kDefaultDimensionCap = 4096;

// Throws InvariantError if any entry is NaN or infinite.
void RequireFinite(const ComplexMatrix& m, std::string_view what);

// Largest entry magnitude, 0 for an empty matrix.
double MaxAbsEntry(const ComplexMatrix& m);

bool IsHermitian(const ComplexMatrix& m, double tol = kDefaultTol);

// True iff the maximum entry deviation of U^dagger U from the identity is at
// most `tol`. Throws ShapeError for non-square input.
bool IsUnitary(const ComplexMatrix& m, double tol = kDefaultTol);

// Kronecker product a (x) b. Throws DimensionLimitError when either
// dimension of the result exceeds `cap`.
ComplexMatrix TensorProduct(const ComplexMatrix& a, const ComplexMatrix& b,
                            std::size_t cap = kDefaultDimensionCap);

// Folds TensorProduct over `factors` left to right.
ComplexMatrix TensorProduct(const std::vector<ComplexMatrix>& factors,
                            std::size_t cap = kDefaultDimensionCap);

// Max-entry magnitude of AB - BA.
double CommutatorNorm(const ComplexMatrix& a, const ComplexMatrix& b);

// A normalised ket.
class PureState {
 public:
  explicit PureState(ComplexVector amplitudes, double tol = kDefaultTol);

  static PureState BasisState(int dim, int index);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }

 private:
  ComplexVector amplitudes_;
};

// Hermitian, positive semidefinite, unit-trace operator.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix matrix, double tol = kDefaultTol);

  static DensityMatrix FromPure(const PureState& state);
  // Projector onto the computational basis state `index`.
  static DensityMatrix BasisState(int dim, int index);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

  // Max-entry distance between the two matrices.
  double DistanceTo(const DensityMatrix& other) const;

 private:
  ComplexMatrix matrix_;
};

class UnitaryOperator {
 public:
  explicit UnitaryOperator(ComplexMatrix matrix, double tol = kDefaultTol);

  static UnitaryOperator Identity(int dim);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

  UnitaryOperator Adjoint() const;

  // Operator composition: (*this) applied after `rhs`.
  UnitaryOperator operator*(const UnitaryOperator& rhs) const;

 private:
  struct Trusted {};
  UnitaryOperator(ComplexMatrix matrix, Trusted) : matrix_(std::move(matrix)) {}

  ComplexMatrix matrix_;
};

// Complete set of mutually orthogonal projectors with distinct labels.
class MeasurementBasis {
 public:
  MeasurementBasis(std::vector<ComplexMatrix> projectors,
                   std::vector<std::string> labels, double tol = kDefaultTol);

  // Rank-one projectors |v_k><v_k| from an orthonormal set of vectors.
  static MeasurementBasis FromVectors(const std::vector<ComplexVector>& vectors,
                                      std::vector<std::string> labels,
                                      double tol = kDefaultTol);
  // |k><k| for k = 0..labels.size()-1.
  static MeasurementBasis Computational(std::vector<std::string> labels);

  int dim() const { return dim_; }
  std::size_t size() const { return projectors_.size(); }
  const std::vector<ComplexMatrix>& projectors() const { return projectors_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  int dim_ = 0;
  std::vector<ComplexMatrix> projectors_;
  std::vector<std::string> labels_;
};

// Trace-preserving channel rho -> sum_i E_i rho E_i^dagger.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<ComplexMatrix> operators,
                        double tol = kDefaultTol);

  // Kraus operators sqrt(p_i) U_i for a probabilistic mixture of unitaries.
  // Zero-probability terms are dropped.
  static KrausChannel MixtureOfUnitaries(
      const std::vector<std::pair<double, UnitaryOperator>>& mixture,
      double tol = kDefaultTol);

  int dim() const { return dim_; }
  const std::vector<ComplexMatrix>& operators() const { return operators_; }

 private:
  int dim_ = 0;
  std::vector<ComplexMatrix> operators_;
};

// rho -> U rho U^dagger.
DensityMatrix EvolveDensity(const DensityMatrix& rho, const UnitaryOperator& u);

DensityMatrix ApplyChannel(const DensityMatrix& rho, const KrausChannel& channel);

struct MeasurementOutcome {
  std::string label;
  double probability = 0.0;
  // Absent when probability <= tol.
  std::optional<DensityMatrix> post_state;
};

// Outcome probabilities Tr[Pi_o rho] and collapsed states, in basis order.
std::vector<MeasurementOutcome> Measure(const DensityMatrix& rho,
                                        const MeasurementBasis& basis,
                                        double tol = kDefaultTol);

// Probabilities only; clamped to [0, 1].
std::vector<double> OutcomeProbabilities(const ComplexMatrix& rho,
                                         const MeasurementBasis& basis);

// Draws one outcome index with the probabilities of Measure. The generator is
// advanced in place, so the same seed always reproduces the same sequence.
std::size_t SampleOutcomeIndex(const DensityMatrix& rho,
                               const MeasurementBasis& basis,
                               std::mt19937_64& rng);

std::string SampleOutcome(const DensityMatrix& rho,
                          const MeasurementBasis& basis, std::mt19937_64& rng);

}  // namespace qgame

#endif  // QGAME_QUANTUM_CORE_H_
