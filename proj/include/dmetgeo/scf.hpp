#pragma once

#include "dmetgeo/integrals.hpp"
#include "dmetgeo/types.hpp"

namespace dmetgeo {

struct ScfOptions {
  int max_iterations = 200;
  double energy_tolerance = 1e-10;    // Hartree between iterations
  double density_tolerance = 1e-8;    // max-abs density change
  int diis_size = 8;
};

/// Converged closed-shell mean field. The density matrix lives in the
/// Lowdin-orthogonalized AO basis; mo_coefficients are against the raw AO
/// basis (C^T S C = 1), mo_coefficients_ortho against the orthogonalized one.
struct MeanFieldResult {
  Mat mo_coefficients;
  Mat mo_coefficients_ortho;
  Vec orbital_energies;
  Mat density_matrix;  // total (spin-summed) 1-RDM, orthogonalized basis
  double hf_energy = 0.0;
  int n_occ_spatial = 0;
  Mat lowdin_x;  // S^(-1/2)
  int iterations = 0;
};

/// X = S^(-1/2) via symmetric eigendecomposition; throws IllConditionedError
/// below eigenvalue 1e-8.
Mat lowdin_orthogonalize(const Mat& overlap);

MeanFieldResult run_rhf(const IntegralTensors& ao, const Mat& overlap, int n_electrons,
                        const ScfOptions& options = {});

}  // namespace dmetgeo
