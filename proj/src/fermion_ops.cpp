#include "dmetgeo/fermion_ops.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "dmetgeo/errors.hpp"

namespace dmetgeo {

namespace {

constexpr double kPruneThreshold = 1e-12;

// i-power picked up when multiplying single-qubit letters, indexed by
// code = x_bit | (z_bit << 1): I=0, X=1, Z=2, Y=3.
constexpr int kPhaseTable[4][4] = {
    // I  X  Z  Y      (right factor)
    {0, 0, 0, 0},  // I
    {0, 0, 3, 1},  // X   (X*Z = -iY, X*Y = iZ)
    {0, 1, 0, 3},  // Z   (Z*X = iY,  Z*Y = -iX)
    {0, 3, 1, 0},  // Y   (Y*X = -iZ, Y*Z = iX)
};

constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

std::pair<PauliString, Complex> multiply_strings(const PauliString& a, const PauliString& b) {
  PauliString out{a.x ^ b.x, a.z ^ b.z};
  std::uint64_t support = a.x | a.z | b.x | b.z;
  int ipow = 0;
  while (support) {
    const int k = std::countr_zero(support);
    support &= support - 1;
    const int ca = static_cast<int>((a.x >> k) & 1) | (static_cast<int>((a.z >> k) & 1) << 1);
    const int cb = static_cast<int>((b.x >> k) & 1) | (static_cast<int>((b.z >> k) & 1) << 1);
    ipow += kPhaseTable[ca][cb];
  }
  return {out, kIPowers[ipow & 3]};
}

}  // namespace

int PauliString::max_qubit() const {
  const std::uint64_t support = x | z;
  if (support == 0) return -1;
  return 63 - std::countl_zero(support);
}

char PauliString::letter(int qubit) const {
  const bool bx = (x >> qubit) & 1;
  const bool bz = (z >> qubit) & 1;
  if (bx && bz) return 'Y';
  if (bx) return 'X';
  if (bz) return 'Z';
  return 'I';
}

QubitOperator::QubitOperator(Complex constant) {
  if (std::abs(constant) >= kPruneThreshold) terms_[PauliString{}] = constant;
}

QubitOperator QubitOperator::pauli(char letter, int qubit, Complex coeff) {
  if (qubit < 0 || qubit >= 64) throw Error("qubit index out of range");
  PauliString s;
  switch (letter) {
    case 'X': s.x = 1ull << qubit; break;
    case 'Y': s.x = 1ull << qubit; s.z = 1ull << qubit; break;
    case 'Z': s.z = 1ull << qubit; break;
    case 'I': break;
    default: throw Error(std::string("unknown Pauli letter '") + letter + "'");
  }
  QubitOperator op;
  op.add_term(s, coeff);
  return op;
}

void QubitOperator::add_term(const PauliString& s, Complex c) {
  auto [it, inserted] = terms_.try_emplace(s, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) < kPruneThreshold) terms_.erase(it);
}

QubitOperator& QubitOperator::operator+=(const QubitOperator& other) {
  for (const auto& [s, c] : other.terms_) add_term(s, c);
  return *this;
}

QubitOperator& QubitOperator::operator-=(const QubitOperator& other) {
  for (const auto& [s, c] : other.terms_) add_term(s, -c);
  return *this;
}

QubitOperator& QubitOperator::operator*=(Complex scale) {
  for (auto& [s, c] : terms_) c *= scale;
  prune();
  return *this;
}

QubitOperator QubitOperator::operator*(const QubitOperator& other) const {
  QubitOperator out;
  for (const auto& [sa, ca] : terms_) {
    for (const auto& [sb, cb] : other.terms_) {
      auto [s, phase] = multiply_strings(sa, sb);
      out.add_term(s, ca * cb * phase);
    }
  }
  return out;
}

int QubitOperator::max_qubit() const {
  int m = -1;
  for (const auto& [s, c] : terms_) m = std::max(m, s.max_qubit());
  return m;
}

double QubitOperator::max_imag() const {
  double m = 0.0;
  for (const auto& [s, c] : terms_) m = std::max(m, std::abs(c.imag()));
  return m;
}

void QubitOperator::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) < kPruneThreshold) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

std::string QubitOperator::to_text() const {
  std::ostringstream out;
  out.precision(12);
  for (const auto& [s, c] : terms_) {
    if (std::abs(c.imag()) < kPruneThreshold) {
      out << c.real();
    } else {
      out << '(' << c.real() << (c.imag() < 0 ? '-' : '+') << std::abs(c.imag()) << "j)";
    }
    out << " [";
    bool first = true;
    for (int q = 0; q <= s.max_qubit(); ++q) {
      const char l = s.letter(q);
      if (l == 'I') continue;
      if (!first) out << ' ';
      out << l << q;
      first = false;
    }
    out << "]\n";
  }
  return out.str();
}

FermionOperator::FermionOperator(Complex constant) {
  if (std::abs(constant) >= kPruneThreshold) terms_[{}] = constant;
}

void FermionOperator::add_term(const std::vector<LadderOp>& ops, Complex coeff) {
  for (std::size_t i = 0; i + 1 < ops.size(); ++i) {
    if (ops[i] == ops[i + 1]) return;  // a_p a_p = 0
  }
  if (std::abs(coeff) < kPruneThreshold) return;
  auto [it, inserted] = terms_.try_emplace(ops, coeff);
  if (!inserted) {
    it->second += coeff;
    if (std::abs(it->second) < kPruneThreshold) terms_.erase(it);
  }
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& other) {
  for (const auto& [ops, c] : other.terms_) add_term(ops, c);
  return *this;
}

FermionOperator& FermionOperator::operator*=(Complex scale) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= scale;
    if (std::abs(it->second) < kPruneThreshold) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

int FermionOperator::max_orbital() const {
  int m = -1;
  for (const auto& [ops, c] : terms_) {
    for (const auto& op : ops) m = std::max(m, op.orbital);
  }
  return m;
}

FermionOperator from_integrals(const Mat& one_body, const Tensor4& two_body, double constant) {
  const int l = static_cast<int>(one_body.rows());
  if (one_body.cols() != l || (two_body.dim() != l && two_body.dim() != 0)) {
    throw Error("integral tensor dimensions disagree");
  }
  FermionOperator h(constant);
  for (int p = 0; p < l; ++p) {
    for (int q = 0; q < l; ++q) {
      const double d = one_body(p, q);
      if (std::abs(d) < kPruneThreshold) continue;
      for (int spin = 0; spin < 2; ++spin) {
        h.add_term({{2 * p + spin, true}, {2 * q + spin, false}}, d);
      }
    }
  }
  if (two_body.dim() == 0) return h;
  for (int p = 0; p < l; ++p)
    for (int q = 0; q < l; ++q)
      for (int r = 0; r < l; ++r)
        for (int s = 0; s < l; ++s) {
          const double v = two_body(p, q, r, s);
          if (std::abs(v) < kPruneThreshold) continue;
          // 1/2 <pq|rs> a^+_{p,sg} a^+_{q,tu} a_{s,tu} a_{r,sg}
          for (int sg = 0; sg < 2; ++sg)
            for (int tu = 0; tu < 2; ++tu) {
              h.add_term({{2 * p + sg, true},
                          {2 * q + tu, true},
                          {2 * s + tu, false},
                          {2 * r + sg, false}},
                         0.5 * v);
            }
        }
  return h;
}

FermionOperator add_chemical_potential(const FermionOperator& op, double mu,
                                       const std::vector<int>& fragment_spatial_orbitals) {
  FermionOperator out = op;
  if (mu == 0.0) return out;
  for (int p : fragment_spatial_orbitals) {
    for (int spin = 0; spin < 2; ++spin) {
      out.add_term({{2 * p + spin, true}, {2 * p + spin, false}}, -mu);
    }
  }
  return out;
}

QubitOperator jordan_wigner_ladder(const LadderOp& op) {
  const int p = op.orbital;
  if (p < 0 || p >= 64) throw Error("orbital index out of Jordan-Wigner range");
  PauliString parity;  // Z_0 ... Z_{p-1}
  parity.z = (p == 0) ? 0 : ((1ull << p) - 1);
  PauliString sx = parity, sy = parity;
  sx.x |= 1ull << p;
  sy.x |= 1ull << p;
  sy.z |= 1ull << p;
  QubitOperator out;
  out.add_term(sx, Complex(0.5, 0.0));
  // a^+ = (X - iY)/2 with the parity tail, a = (X + iY)/2.
  out.add_term(sy, Complex(0.0, op.creation ? -0.5 : 0.5));
  return out;
}

QubitOperator jordan_wigner(const FermionOperator& op) {
  QubitOperator out;
  for (const auto& [ops, coeff] : op.terms()) {
    QubitOperator term(Complex(1.0, 0.0));
    for (const auto& lop : ops) term = term * jordan_wigner_ladder(lop);
    term *= coeff;
    out += term;
  }
  return out;
}

}  // namespace dmetgeo
