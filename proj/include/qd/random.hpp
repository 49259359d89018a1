#pragma once

#include <cstddef>
#include <random>

#include "qd/density.hpp"
#include "qd/matrix.hpp"
#include "qd/measurement.hpp"

namespace qd::sample {

using Rng = std::mt19937_64;

/// Haar-distributed n x n unitary (Gaussian matrix, Gram-Schmidt, phase fix).
ComplexMatrix unitary(Rng& rng, std::size_t n);
/// G G† / Tr with G a d x rank complex Gaussian matrix.
DensityMatrix density(Rng& rng, BipartiteDims dims, std::size_t rank);
/// Gaussian Hermitian matrix.
ComplexMatrix hermitian(Rng& rng, std::size_t n);
StateVector gaussian_vector(Rng& rng, std::size_t n);
/// Uniform over the parameter ranges, with θ_r drawn uniformly in cos θ_r.
MeasurementParams general_params(Rng& rng);
/// α ∈ [0, π/4], φ ∈ [0, π).
MeasurementParams type_ii_params(Rng& rng);
/// α ∈ [0, π/4], γ ∈ (−π/2, π/2], φ ∈ [0, π).
MeasurementParams type_iii_params(Rng& rng);

}  // namespace qd::sample
