#include "dmetgeo/scf.hpp"

#include <cmath>
#include <deque>

#include "dmetgeo/errors.hpp"

namespace dmetgeo {

Mat lowdin_orthogonalize(const Mat& overlap) {
  Eigen::SelfAdjointEigenSolver<Mat> es(overlap);
  if (es.info() != Eigen::Success) throw IllConditionedError("overlap eigendecomposition failed");
  const Vec& ev = es.eigenvalues();
  if (ev.minCoeff() < 1e-8) {
    throw IllConditionedError("overlap eigenvalue " + std::to_string(ev.minCoeff()) +
                              " below 1e-8; basis is linearly dependent");
  }
  return es.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().transpose();
}

namespace {

// Coulomb minus half exchange from the physicist-ordered tensor and a
// spin-summed density: G_pq = sum_rs [<pr|qs> - 1/2 <pr|sq>] D_rs.
Mat two_electron_matrix(const Tensor4& eri, const Mat& density) {
  const int n = density.rows();
  Mat g = Mat::Zero(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      double val = 0.0;
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
          val += (eri(p, r, q, s) - 0.5 * eri(p, r, s, q)) * density(r, s);
      g(p, q) = val;
    }
  return g;
}

}  // namespace

MeanFieldResult run_rhf(const IntegralTensors& ao, const Mat& overlap, int n_electrons,
                        const ScfOptions& options) {
  if (n_electrons % 2 != 0) throw Error("restricted HF requires an even electron count");
  const int n = ao.n_orb;
  const int n_occ = n_electrons / 2;
  if (n_occ > n) throw Error("more electron pairs than orbitals");

  const Mat x = lowdin_orthogonalize(overlap);
  const Mat& h = ao.one_body;

  MeanFieldResult res;
  res.lowdin_x = x;
  res.n_occ_spatial = n_occ;

  Mat d_ao = Mat::Zero(n, n);  // spin-summed density, raw AO basis
  double e_prev = 0.0;
  std::deque<Mat> err_list, fock_list;

  Mat fock = h;
  for (int it = 0; it < options.max_iterations; ++it) {
    fock = h + two_electron_matrix(ao.two_body, d_ao);

    if (n_occ > 0) {
      // DIIS on the orthogonal-basis commutator FDS - SDF.
      const Mat err = x * (fock * d_ao * overlap - overlap * d_ao * fock) * x;
      err_list.push_back(err);
      fock_list.push_back(fock);
      if (static_cast<int>(err_list.size()) > options.diis_size) {
        err_list.pop_front();
        fock_list.pop_front();
      }
      const int m = static_cast<int>(err_list.size());
      if (m > 1) {
        Mat b = Mat::Zero(m + 1, m + 1);
        for (int i = 0; i < m; ++i) {
          for (int j = 0; j < m; ++j) {
            b(i, j) = (err_list[i].array() * err_list[j].array()).sum();
          }
          b(i, m) = b(m, i) = -1.0;
        }
        Vec rhs = Vec::Zero(m + 1);
        rhs[m] = -1.0;
        const Vec coef = b.fullPivLu().solve(rhs);
        if (coef.allFinite()) {
          Mat f_mix = Mat::Zero(n, n);
          for (int i = 0; i < m; ++i) f_mix += coef[i] * fock_list[i];
          fock = f_mix;
        }
      }
    }

    Eigen::SelfAdjointEigenSolver<Mat> es(x * fock * x);
    const Mat c_ortho = es.eigenvectors();
    res.orbital_energies = es.eigenvalues();
    res.mo_coefficients_ortho = c_ortho;
    res.mo_coefficients = x * c_ortho;

    Mat d_new = Mat::Zero(n, n);
    if (n_occ > 0) {
      const Mat c_occ = res.mo_coefficients.leftCols(n_occ);
      d_new = 2.0 * c_occ * c_occ.transpose();
    }

    const Mat fock_new = h + two_electron_matrix(ao.two_body, d_new);
    const double e_elec = 0.5 * (d_new.array() * (h + fock_new).array()).sum();
    const double e_total = e_elec + ao.e_nuc;

    const double d_change = (d_new - d_ao).cwiseAbs().maxCoeff();
    const double e_change = std::abs(e_total - e_prev);
    d_ao = d_new;
    e_prev = e_total;
    res.iterations = it + 1;

    if ((it > 0 && e_change < options.energy_tolerance && d_change < options.density_tolerance) ||
        n_occ == 0) {
      res.hf_energy = e_total;
      res.density_matrix = Mat::Zero(n, n);
      if (n_occ > 0) {
        const Mat co = c_ortho.leftCols(n_occ);
        res.density_matrix = 2.0 * co * co.transpose();
      }
      return res;
    }
  }

  const Mat err = x * (fock * d_ao * overlap - overlap * d_ao * fock) * x;
  throw ScfFailureError("SCF did not converge in " + std::to_string(options.max_iterations) +
                            " iterations",
                        err.cwiseAbs().maxCoeff());
}

}  // namespace dmetgeo
