#include "dmetgeo/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>

#include "dmetgeo/errors.hpp"

namespace dmetgeo {

namespace {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Boys function
// ---------------------------------------------------------------------------

// Series F_M(t) = e^-t * sum_k (2t)^k / prod_{j=0..k} (2M+2j+1); all terms
// positive, converges for any t (slowly past t ~ 25, which is why the split
// exists).
double boys_series(int m, double t) {
  double term = 1.0 / (2 * m + 1);
  double sum = term;
  for (int k = 0; k < 400; ++k) {
    term *= 2.0 * t / (2 * m + 2 * k + 3);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return std::exp(-t) * sum;
}

}  // namespace

std::vector<double> boys_ladder(int m_max, double t) {
  std::vector<double> f(m_max + 1);
  if (t < 1e-14) {
    for (int m = 0; m <= m_max; ++m) f[m] = 1.0 / (2 * m + 1);
    return f;
  }
  if (t >= 25.0) {
    // Closed form for F_0, then upward; stable here since t > 2m+1 and the
    // e^-t subtraction is negligible against (2m+1) F_m.
    const double et = std::exp(-t);
    f[0] = 0.5 * std::sqrt(kPi / t) * std::erf(std::sqrt(t));
    for (int m = 0; m < m_max; ++m) f[m + 1] = ((2 * m + 1) * f[m] - et) / (2.0 * t);
    return f;
  }
  const double et = std::exp(-t);
  f[m_max] = boys_series(m_max, t);
  for (int m = m_max; m > 0; --m) f[m - 1] = (2.0 * t * f[m] + et) / (2 * m - 1);
  return f;
}

double boys_function(int m, double t) { return boys_ladder(m, t)[m]; }

namespace {

// ---------------------------------------------------------------------------
// McMurchie-Davidson recurrences
// ---------------------------------------------------------------------------

// Hermite expansion coefficient E_t^{ij} for a 1D primitive pair with
// separation qx = Ax - Bx.
double hermite_e(int i, int j, int t, double qx, double a, double b) {
  const double p = a + b;
  const double mu = a * b / p;
  if (t < 0 || t > i + j) return 0.0;
  if (i == 0 && j == 0 && t == 0) return std::exp(-mu * qx * qx);
  if (j == 0) {
    return hermite_e(i - 1, j, t - 1, qx, a, b) / (2.0 * p) -
           mu * qx / a * hermite_e(i - 1, j, t, qx, a, b) +
           (t + 1) * hermite_e(i - 1, j, t + 1, qx, a, b);
  }
  return hermite_e(i, j - 1, t - 1, qx, a, b) / (2.0 * p) +
         mu * qx / b * hermite_e(i, j - 1, t, qx, a, b) +
         (t + 1) * hermite_e(i, j - 1, t + 1, qx, a, b);
}

// Hermite Coulomb integral R^n_{tuv}; `boys` holds F_0..F_top at p*|PC|^2.
double hermite_r(int t, int u, int v, int n, double p, const Vec3& pc,
                 const std::vector<double>& boys) {
  if (t == 0 && u == 0 && v == 0) {
    return std::pow(-2.0 * p, n) * boys[n];
  }
  if (t > 0) {
    double val = pc[0] * hermite_r(t - 1, u, v, n + 1, p, pc, boys);
    if (t > 1) val += (t - 1) * hermite_r(t - 2, u, v, n + 1, p, pc, boys);
    return val;
  }
  if (u > 0) {
    double val = pc[1] * hermite_r(t, u - 1, v, n + 1, p, pc, boys);
    if (u > 1) val += (u - 1) * hermite_r(t, u - 2, v, n + 1, p, pc, boys);
    return val;
  }
  double val = pc[2] * hermite_r(t, u, v - 1, n + 1, p, pc, boys);
  if (v > 1) val += (v - 1) * hermite_r(t, u, v - 2, n + 1, p, pc, boys);
  return val;
}

using Ang = std::array<int, 3>;

double overlap_prim(double a, const Ang& la, const Vec3& ra, double b, const Ang& lb,
                    const Vec3& rb) {
  const double p = a + b;
  double s = std::pow(kPi / p, 1.5);
  for (int k = 0; k < 3; ++k) s *= hermite_e(la[k], lb[k], 0, ra[k] - rb[k], a, b);
  return s;
}

double kinetic_prim(double a, const Ang& la, const Vec3& ra, double b, const Ang& lb,
                    const Vec3& rb) {
  const int l2 = lb[0], m2 = lb[1], n2 = lb[2];
  auto shifted = [&](int dx, int dy, int dz) {
    Ang lbs = {l2 + dx, m2 + dy, n2 + dz};
    if (lbs[0] < 0 || lbs[1] < 0 || lbs[2] < 0) return 0.0;
    return overlap_prim(a, la, ra, b, lbs, rb);
  };
  double t = b * (2.0 * (l2 + m2 + n2) + 3.0) * shifted(0, 0, 0);
  t += -2.0 * b * b * (shifted(2, 0, 0) + shifted(0, 2, 0) + shifted(0, 0, 2));
  t += -0.5 * (l2 * (l2 - 1) * shifted(-2, 0, 0) + m2 * (m2 - 1) * shifted(0, -2, 0) +
               n2 * (n2 - 1) * shifted(0, 0, -2));
  return t;
}

// Attraction to a unit positive charge at rc (multiply by -Z outside).
double nuclear_prim(double a, const Ang& la, const Vec3& ra, double b, const Ang& lb,
                    const Vec3& rb, const Vec3& rc) {
  const double p = a + b;
  const Vec3 rp = (a * ra + b * rb) / p;
  const Vec3 pc = rp - rc;
  const int top = la[0] + la[1] + la[2] + lb[0] + lb[1] + lb[2];
  const auto boys = boys_ladder(top, p * pc.squaredNorm());
  double sum = 0.0;
  for (int t = 0; t <= la[0] + lb[0]; ++t) {
    const double ex = hermite_e(la[0], lb[0], t, ra[0] - rb[0], a, b);
    for (int u = 0; u <= la[1] + lb[1]; ++u) {
      const double ey = hermite_e(la[1], lb[1], u, ra[1] - rb[1], a, b);
      for (int v = 0; v <= la[2] + lb[2]; ++v) {
        const double ez = hermite_e(la[2], lb[2], v, ra[2] - rb[2], a, b);
        sum += ex * ey * ez * hermite_r(t, u, v, 0, p, pc, boys);
      }
    }
  }
  return 2.0 * kPi / p * sum;
}

// Chemist-ordered primitive repulsion (ab|cd).
double eri_prim(double a, const Ang& la, const Vec3& ra, double b, const Ang& lb, const Vec3& rb,
                double c, const Ang& lc, const Vec3& rc, double d, const Ang& ld,
                const Vec3& rd) {
  const double p = a + b;
  const double q = c + d;
  const double alpha = p * q / (p + q);
  const Vec3 rp = (a * ra + b * rb) / p;
  const Vec3 rq = (c * rc + d * rd) / q;
  const Vec3 pq = rp - rq;
  const int top = la[0] + la[1] + la[2] + lb[0] + lb[1] + lb[2] + lc[0] + lc[1] + lc[2] + ld[0] +
                  ld[1] + ld[2];
  const auto boys = boys_ladder(top, alpha * pq.squaredNorm());

  double sum = 0.0;
  for (int t = 0; t <= la[0] + lb[0]; ++t) {
    const double e1x = hermite_e(la[0], lb[0], t, ra[0] - rb[0], a, b);
    if (e1x == 0.0) continue;
    for (int u = 0; u <= la[1] + lb[1]; ++u) {
      const double e1y = hermite_e(la[1], lb[1], u, ra[1] - rb[1], a, b);
      if (e1y == 0.0) continue;
      for (int v = 0; v <= la[2] + lb[2]; ++v) {
        const double e1z = hermite_e(la[2], lb[2], v, ra[2] - rb[2], a, b);
        if (e1z == 0.0) continue;
        for (int tau = 0; tau <= lc[0] + ld[0]; ++tau) {
          const double e2x = hermite_e(lc[0], ld[0], tau, rc[0] - rd[0], c, d);
          if (e2x == 0.0) continue;
          for (int nu = 0; nu <= lc[1] + ld[1]; ++nu) {
            const double e2y = hermite_e(lc[1], ld[1], nu, rc[1] - rd[1], c, d);
            if (e2y == 0.0) continue;
            for (int phi = 0; phi <= lc[2] + ld[2]; ++phi) {
              const double e2z = hermite_e(lc[2], ld[2], phi, rc[2] - rd[2], c, d);
              if (e2z == 0.0) continue;
              const double sign = ((tau + nu + phi) % 2 == 0) ? 1.0 : -1.0;
              sum += e1x * e1y * e1z * e2x * e2y * e2z * sign *
                     hermite_r(t + tau, u + nu, v + phi, 0, alpha, pq, boys);
            }
          }
        }
      }
    }
  }
  return 2.0 * std::pow(kPi, 2.5) / (p * q * std::sqrt(p + q)) * sum;
}

double primitive_norm(double a, const Ang& l) {
  auto dfact = [](int n) {
    double v = 1.0;
    for (int k = 2 * n - 1; k > 1; k -= 2) v *= k;
    return v;
  };
  const int lt = l[0] + l[1] + l[2];
  return std::pow(2.0 * a / kPi, 0.75) *
         std::sqrt(std::pow(4.0 * a, lt) / (dfact(l[0]) * dfact(l[1]) * dfact(l[2])));
}

template <typename PrimFn>
double contract_pair(const ContractedGaussian& ga, const ContractedGaussian& gb, PrimFn&& fn) {
  double val = 0.0;
  for (std::size_t i = 0; i < ga.exponents.size(); ++i) {
    for (std::size_t j = 0; j < gb.exponents.size(); ++j) {
      val += ga.coefficients[i] * gb.coefficients[j] * fn(ga.exponents[i], gb.exponents[j]);
    }
  }
  return val;
}

// STO-3G data, EMSL Basis Set Exchange (Hehre/Stewart/Pople scaled fits).
struct Sto3gShell {
  int l;  // 0 = s, 1 = p
  std::array<double, 3> exps;
  std::array<double, 3> coeffs;
};

std::vector<Sto3gShell> sto3g_shells(int z) {
  static const std::array<double, 3> s_coeff = {0.1543289673, 0.5353281423, 0.4446345422};
  static const std::array<double, 3> sp_s_coeff = {-0.09996722919, 0.3995128261, 0.7001154689};
  static const std::array<double, 3> sp_p_coeff = {0.1559162750, 0.6076837186, 0.3919573931};
  switch (z) {
    case 1:
      return {{0, {3.425250914, 0.6239137298, 0.1688554040}, s_coeff}};
    case 6:
      return {{0, {71.61683735, 13.04509632, 3.530512160}, s_coeff},
              {0, {2.941249355, 0.6834830964, 0.2222899159}, sp_s_coeff},
              {1, {2.941249355, 0.6834830964, 0.2222899159}, sp_p_coeff}};
    case 8:
      return {{0, {130.7093214, 23.80886605, 6.443608313}, s_coeff},
              {0, {5.033151319, 1.169596125, 0.3803889600}, sp_s_coeff},
              {1, {5.033151319, 1.169596125, 0.3803889600}, sp_p_coeff}};
    default:
      throw UnsupportedBasisError("no STO-3G data for atomic number " + std::to_string(z) +
                                  " (supported: H, C, O)");
  }
}

ContractedGaussian make_contraction(const Vec3& center_bohr, const Ang& ang,
                                    const std::array<double, 3>& exps,
                                    const std::array<double, 3>& coeffs, int atom_index) {
  ContractedGaussian g;
  g.center = center_bohr;
  g.angular = ang;
  g.atom_index = atom_index;
  for (int i = 0; i < 3; ++i) {
    g.exponents.push_back(exps[i]);
    g.coefficients.push_back(coeffs[i] * primitive_norm(exps[i], ang));
  }
  const double self = contract_pair(g, g, [&](double a, double b) {
    return overlap_prim(a, g.angular, g.center, b, g.angular, g.center);
  });
  const double scale = 1.0 / std::sqrt(self);
  for (auto& c : g.coefficients) c *= scale;
  return g;
}

}  // namespace

std::vector<ContractedGaussian> build_basis(const Molecule& mol) {
  std::vector<ContractedGaussian> basis;
  for (int ia = 0; ia < mol.n_atoms(); ++ia) {
    const Atom& atom = mol.atoms()[ia];
    const Vec3 center = atom.position * kBohrPerAngstrom;
    for (const auto& shell : sto3g_shells(atom.atomic_number)) {
      if (shell.l == 0) {
        basis.push_back(make_contraction(center, {0, 0, 0}, shell.exps, shell.coeffs, ia));
      } else {
        basis.push_back(make_contraction(center, {1, 0, 0}, shell.exps, shell.coeffs, ia));
        basis.push_back(make_contraction(center, {0, 1, 0}, shell.exps, shell.coeffs, ia));
        basis.push_back(make_contraction(center, {0, 0, 1}, shell.exps, shell.coeffs, ia));
      }
    }
  }
  return basis;
}

double overlap_integral(const ContractedGaussian& a, const ContractedGaussian& b) {
  return contract_pair(a, b, [&](double ea, double eb) {
    return overlap_prim(ea, a.angular, a.center, eb, b.angular, b.center);
  });
}

AoIntegrals compute_ao_integrals(const Molecule& mol,
                                 const std::vector<ContractedGaussian>& basis) {
  const int n = static_cast<int>(basis.size());
  AoIntegrals out;
  out.overlap = Mat::Zero(n, n);
  out.kinetic = Mat::Zero(n, n);
  out.nuclear_attraction = Mat::Zero(n, n);

  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const auto& gi = basis[i];
      const auto& gj = basis[j];
      out.overlap(i, j) = overlap_integral(gi, gj);
      out.kinetic(i, j) = contract_pair(gi, gj, [&](double a, double b) {
        return kinetic_prim(a, gi.angular, gi.center, b, gj.angular, gj.center);
      });
      double v = 0.0;
      for (const auto& atom : mol.atoms()) {
        const Vec3 rc = atom.position * kBohrPerAngstrom;
        v += -static_cast<double>(atom.atomic_number) *
             contract_pair(gi, gj, [&](double a, double b) {
               return nuclear_prim(a, gi.angular, gi.center, b, gj.angular, gj.center, rc);
             });
      }
      out.nuclear_attraction(i, j) = v;
      out.overlap(j, i) = out.overlap(i, j);
      out.kinetic(j, i) = out.kinetic(i, j);
      out.nuclear_attraction(j, i) = out.nuclear_attraction(i, j);
    }
  }

  {
    Eigen::SelfAdjointEigenSolver<Mat> es(out.overlap);
    if (es.eigenvalues().minCoeff() < 1e-8) {
      throw IllConditionedError("overlap matrix is numerically singular (smallest eigenvalue " +
                                std::to_string(es.eigenvalues().minCoeff()) + ")");
    }
  }

  // Chemist (ij|kl) over unique index quadruples, stored as physicist <pq|rs>.
  Tensor4 chem(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      for (int k = 0; k <= i; ++k) {
        const int l_max = (k == i) ? j : k;
        for (int l = 0; l <= l_max; ++l) {
          const auto& gi = basis[i];
          const auto& gj = basis[j];
          const auto& gk = basis[k];
          const auto& gl = basis[l];
          double val = 0.0;
          for (std::size_t p1 = 0; p1 < gi.exponents.size(); ++p1)
            for (std::size_t p2 = 0; p2 < gj.exponents.size(); ++p2)
              for (std::size_t p3 = 0; p3 < gk.exponents.size(); ++p3)
                for (std::size_t p4 = 0; p4 < gl.exponents.size(); ++p4)
                  val += gi.coefficients[p1] * gj.coefficients[p2] * gk.coefficients[p3] *
                         gl.coefficients[p4] *
                         eri_prim(gi.exponents[p1], gi.angular, gi.center, gj.exponents[p2],
                                  gj.angular, gj.center, gk.exponents[p3], gk.angular, gk.center,
                                  gl.exponents[p4], gl.angular, gl.center);
          chem(i, j, k, l) = val;
          chem(j, i, k, l) = val;
          chem(i, j, l, k) = val;
          chem(j, i, l, k) = val;
          chem(k, l, i, j) = val;
          chem(l, k, i, j) = val;
          chem(k, l, j, i) = val;
          chem(l, k, j, i) = val;
        }
      }
    }
  }

  out.tensors.n_orb = n;
  out.tensors.e_nuc = nuclear_repulsion(mol);
  out.tensors.one_body = out.kinetic + out.nuclear_attraction;
  out.tensors.two_body = Tensor4(n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) out.tensors.two_body(p, q, r, s) = chem(p, r, q, s);

  out.tensors.basis_labels.resize(n);
  for (int i = 0; i < n; ++i) out.tensors.basis_labels[i] = basis[i].atom_index;
  return out;
}

IntegralTensors transform_to_mo(const IntegralTensors& ao, const Mat& coeffs, const Mat* overlap) {
  const int n = ao.n_orb;
  const int m = static_cast<int>(coeffs.cols());
  if (coeffs.rows() != n) throw Error("coefficient matrix row count does not match orbital count");
  {
    const Mat s = overlap ? *overlap : Mat::Identity(n, n);
    const Mat gram = coeffs.transpose() * s * coeffs;
    if ((gram - Mat::Identity(m, m)).cwiseAbs().maxCoeff() > 1e-8) {
      throw Error("coefficient columns are not orthonormal under the given overlap");
    }
  }

  IntegralTensors out;
  out.n_orb = m;
  out.e_nuc = ao.e_nuc;
  out.one_body = coeffs.transpose() * ao.one_body * coeffs;
  if (m == n) out.basis_labels = ao.basis_labels;

  // <pq|rs> -> four one-index contractions.
  std::vector<double> t1(static_cast<std::size_t>(m) * n * n * n, 0.0);
  for (int p = 0; p < n; ++p)
    for (int i = 0; i < m; ++i) {
      const double c = coeffs(p, i);
      if (c == 0.0) continue;
      for (int q = 0; q < n; ++q)
        for (int r = 0; r < n; ++r)
          for (int s = 0; s < n; ++s)
            t1[((static_cast<std::size_t>(i) * n + q) * n + r) * n + s] +=
                c * ao.two_body(p, q, r, s);
    }
  std::vector<double> t2(static_cast<std::size_t>(m) * m * n * n, 0.0);
  for (int q = 0; q < n; ++q)
    for (int j = 0; j < m; ++j) {
      const double c = coeffs(q, j);
      if (c == 0.0) continue;
      for (int i = 0; i < m; ++i)
        for (int r = 0; r < n; ++r)
          for (int s = 0; s < n; ++s)
            t2[((static_cast<std::size_t>(i) * m + j) * n + r) * n + s] +=
                c * t1[((static_cast<std::size_t>(i) * n + q) * n + r) * n + s];
    }
  std::vector<double> t3(static_cast<std::size_t>(m) * m * m * n, 0.0);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < m; ++k) {
      const double c = coeffs(r, k);
      if (c == 0.0) continue;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          for (int s = 0; s < n; ++s)
            t3[((static_cast<std::size_t>(i) * m + j) * m + k) * n + s] +=
                c * t2[((static_cast<std::size_t>(i) * m + j) * n + r) * n + s];
    }
  out.two_body = Tensor4(m);
  for (int s = 0; s < n; ++s)
    for (int l = 0; l < m; ++l) {
      const double c = coeffs(s, l);
      if (c == 0.0) continue;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          for (int k = 0; k < m; ++k)
            out.two_body(i, j, k, l) +=
                c * t3[((static_cast<std::size_t>(i) * m + j) * m + k) * n + s];
    }
  return out;
}

namespace {

std::uint64_t geometry_hash(const Molecule& mol) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ull;
    }
  };
  const int charge = mol.charge();
  mix(&charge, sizeof charge);
  for (const auto& a : mol.atoms()) {
    mix(&a.atomic_number, sizeof a.atomic_number);
    for (int k = 0; k < 3; ++k) {
      const double c = a.position[k];
      mix(&c, sizeof c);
    }
  }
  return h;
}

constexpr std::uint32_t kCacheMagic = 0x44474943;  // "DGIC"
constexpr std::uint32_t kCacheVersion = 1;

void write_doubles(std::ofstream& f, const double* data, std::size_t count) {
  f.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(count * sizeof(double)));
}

bool read_doubles(std::ifstream& f, double* data, std::size_t count) {
  f.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(count * sizeof(double)));
  return f.good();
}

}  // namespace

void save_integrals(const std::string& path, const AoIntegrals& ao, const Molecule& mol) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write integral cache '" + path + "'");
  const std::uint32_t l = static_cast<std::uint32_t>(ao.tensors.n_orb);
  const std::uint64_t h = geometry_hash(mol);
  f.write(reinterpret_cast<const char*>(&kCacheMagic), 4);
  f.write(reinterpret_cast<const char*>(&kCacheVersion), 4);
  f.write(reinterpret_cast<const char*>(&l), 4);
  std::uint32_t pad = 0;
  f.write(reinterpret_cast<const char*>(&pad), 4);
  f.write(reinterpret_cast<const char*>(&h), 8);
  write_doubles(f, &ao.tensors.e_nuc, 1);
  const int n = ao.tensors.n_orb;
  Mat row_major;
  for (const Mat* m : {&ao.overlap, &ao.kinetic, &ao.nuclear_attraction, &ao.tensors.one_body}) {
    row_major = m->transpose();  // Eigen default is column-major
    write_doubles(f, row_major.data(), static_cast<std::size_t>(n) * n);
  }
  write_doubles(f, ao.tensors.two_body.data().data(), ao.tensors.two_body.data().size());
  if (!f) throw Error("short write to integral cache '" + path + "'");
}

bool load_integrals(const std::string& path, const Molecule& mol, AoIntegrals& out) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return false;
  std::uint32_t magic = 0, version = 0, l = 0, pad = 0;
  std::uint64_t h = 0;
  f.read(reinterpret_cast<char*>(&magic), 4);
  f.read(reinterpret_cast<char*>(&version), 4);
  f.read(reinterpret_cast<char*>(&l), 4);
  f.read(reinterpret_cast<char*>(&pad), 4);
  f.read(reinterpret_cast<char*>(&h), 8);
  if (!f || magic != kCacheMagic || version != kCacheVersion) return false;
  if (h != geometry_hash(mol)) return false;  // stale cache: geometry changed

  const int n = static_cast<int>(l);
  out.tensors.n_orb = n;
  if (!read_doubles(f, &out.tensors.e_nuc, 1)) return false;
  Mat row_major(n, n);
  for (Mat* m : {&out.overlap, &out.kinetic, &out.nuclear_attraction, &out.tensors.one_body}) {
    if (!read_doubles(f, row_major.data(), static_cast<std::size_t>(n) * n)) return false;
    *m = row_major.transpose();
  }
  out.tensors.two_body = Tensor4(n);
  if (!read_doubles(f, out.tensors.two_body.data().data(), out.tensors.two_body.data().size())) {
    return false;
  }
  out.tensors.basis_labels.clear();
  return true;
}

}  // namespace dmetgeo
