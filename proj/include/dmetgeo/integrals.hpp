#pragma once

#include <array>
#include <string>
#include <vector>

#include "dmetgeo/geometry.hpp"
#include "dmetgeo/types.hpp"

namespace dmetgeo {

/// Fixed-length contraction of Cartesian Gaussian primitives. Coefficients
/// carry primitive and contraction normalization, so <g|g> = 1.
struct ContractedGaussian {
  Vec3 center = Vec3::Zero();  // Bohr
  std::array<int, 3> angular = {0, 0, 0};
  std::vector<double> exponents;
  std::vector<double> coefficients;
  int atom_index = 0;
};

/// Electronic-structure integrals over some orthogonal or atomic orbital
/// basis. two_body holds <pq|rs> in physicist ordering.
struct IntegralTensors {
  int n_orb = 0;
  double e_nuc = 0.0;
  Mat one_body;
  Tensor4 two_body;
  std::vector<int> basis_labels;  // orbital -> atom index (empty if not applicable)
};

struct AoIntegrals {
  IntegralTensors tensors;
  Mat overlap;
  Mat kinetic;
  Mat nuclear_attraction;
};

/// F_m(t) = int_0^1 u^(2m) exp(-t u^2) du.
double boys_function(int m, double t);

/// All of F_0..F_m at once (the Coulomb recurrences consume the whole ladder).
std::vector<double> boys_ladder(int m_max, double t);

/// STO-3G basis for H, C, O. One 1s contraction per H; 1s, 2s, 2px, 2py, 2pz
/// per C or O. Orbital order follows atom order.
std::vector<ContractedGaussian> build_basis(const Molecule& mol);

double overlap_integral(const ContractedGaussian& a, const ContractedGaussian& b);

AoIntegrals compute_ao_integrals(const Molecule& mol, const std::vector<ContractedGaussian>& basis);

/// Four-index transform by C (columns orthonormal under `overlap`); C may be
/// rectangular to project into a subspace. Cost O(L^4 m) per index.
IntegralTensors transform_to_mo(const IntegralTensors& ao, const Mat& coeffs,
                                const Mat* overlap = nullptr);

/// Binary cache of AO integrals (little-endian; see README for the layout).
void save_integrals(const std::string& path, const AoIntegrals& ao, const Molecule& mol);
bool load_integrals(const std::string& path, const Molecule& mol, AoIntegrals& out);

}  // namespace dmetgeo
