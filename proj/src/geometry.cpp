#include "dmetgeo/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "dmetgeo/errors.hpp"

namespace dmetgeo {

namespace {

const std::unordered_map<std::string, int>& element_table() {
  static const std::unordered_map<std::string, int> table = {
      {"H", 1},  {"He", 2}, {"Li", 3}, {"Be", 4}, {"B", 5},  {"C", 6},
      {"N", 7},  {"O", 8},  {"F", 9},  {"Ne", 10}, {"Na", 11}, {"Mg", 12},
      {"Al", 13}, {"Si", 14}, {"P", 15}, {"S", 16}, {"Cl", 17}, {"Ar", 18}};
  return table;
}

constexpr double kMinPairDistance = 0.1;  // Angstrom

void check_pair_distances(const std::vector<Atom>& atoms) {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      const double r = (atoms[i].position - atoms[j].position).norm();
      if (r < kMinPairDistance) {
        std::ostringstream msg;
        msg << "atoms " << i << " and " << j << " are " << r
            << " Angstrom apart (minimum " << kMinPairDistance << ")";
        throw InvalidGeometryError(msg.str());
      }
    }
  }
}

Mat rotation_y(double angle) {
  Mat r(3, 3);
  const double c = std::cos(angle), s = std::sin(angle);
  r << c, 0, s, 0, 1, 0, -s, 0, c;
  return r;
}

Mat rotation_z(double angle) {
  Mat r(3, 3);
  const double c = std::cos(angle), s = std::sin(angle);
  r << c, -s, 0, s, c, 0, 0, 0, 1;
  return r;
}

struct LocalFrame {
  Vec3 x, y, z;
};

// Outward frame at `parent`: +z points from `partner` through `parent`, x is
// the projection of a fixed auxiliary axis, y completes the right-handed set.
LocalFrame attachment_frame(const Vec3& parent, const Vec3& partner) {
  LocalFrame f;
  f.z = (parent - partner).normalized();
  Vec3 aux = Vec3::UnitX();
  if (std::abs(f.z.dot(aux)) > 0.9) aux = Vec3::UnitY();
  f.x = (aux - f.z.dot(aux) * f.z).normalized();
  f.y = f.z.cross(f.x);
  return f;
}

}  // namespace

int atomic_number_for(const std::string& symbol) {
  auto it = element_table().find(symbol);
  if (it == element_table().end()) {
    throw ParseError("unknown element symbol '" + symbol + "'");
  }
  return it->second;
}

Molecule::Molecule(std::vector<Atom> atoms, int charge)
    : atoms_(std::move(atoms)), charge_(charge) {
  if (atoms_.empty()) throw InvalidGeometryError("molecule must contain at least one atom");
  int z_total = 0;
  for (const auto& a : atoms_) {
    if (a.atomic_number != atomic_number_for(a.element)) {
      throw InvalidGeometryError("atomic number does not match element symbol '" + a.element + "'");
    }
    if (!a.position.allFinite()) throw InvalidGeometryError("non-finite atomic coordinate");
    z_total += a.atomic_number;
  }
  n_electrons_ = z_total - charge_;
  if (n_electrons_ < 0) throw InvalidGeometryError("negative electron count");
  check_pair_distances(atoms_);
}

Molecule Molecule::with_positions(const std::vector<Vec3>& positions) const {
  if (positions.size() != atoms_.size()) {
    throw InvalidGeometryError("position list length does not match atom count");
  }
  std::vector<Atom> atoms = atoms_;
  for (std::size_t i = 0; i < atoms.size(); ++i) atoms[i].position = positions[i];
  return Molecule(std::move(atoms), charge_);
}

Molecule parse_xyz(const std::string& text, int charge) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  auto next_line = [&](bool required) -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      return true;
    }
    if (required) {
      throw ParseError("unexpected end of XYZ input after line " + std::to_string(line_no));
    }
    return false;
  };

  next_line(true);
  int count = 0;
  {
    std::istringstream ls(line);
    if (!(ls >> count) || count <= 0) {
      throw ParseError("line 1: malformed atom count '" + line + "'");
    }
    std::string rest;
    if (ls >> rest) throw ParseError("line 1: trailing tokens after atom count");
  }
  next_line(true);  // comment line

  std::vector<Atom> atoms;
  atoms.reserve(count);
  for (int i = 0; i < count; ++i) {
    next_line(true);
    std::istringstream ls(line);
    Atom a;
    if (!(ls >> a.element)) {
      throw ParseError("line " + std::to_string(line_no) + ": missing element symbol");
    }
    try {
      a.atomic_number = atomic_number_for(a.element);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    for (int k = 0; k < 3; ++k) {
      if (!(ls >> a.position[k])) {
        throw ParseError("line " + std::to_string(line_no) + ": non-numeric or missing coordinate");
      }
    }
    atoms.push_back(std::move(a));
  }
  return Molecule(std::move(atoms), charge);
}

Molecule load_xyz_file(const std::string& path, int charge) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open XYZ file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_xyz(ss.str(), charge);
}

GeometryParameterization GeometryParameterization::cartesian(Molecule reference) {
  GeometryParameterization p;
  p.kind_ = ParamKind::Cartesian;
  p.reference_ = std::move(reference);
  const char* axes = "xyz";
  for (int i = 0; i < p.reference_.n_atoms(); ++i) {
    for (int k = 0; k < 3; ++k) {
      p.names_.push_back(p.reference_.atoms()[i].element + std::to_string(i) + "_" + axes[k]);
      p.units_.push_back(ParamUnit::Length);
    }
  }
  p.finalize_reference();
  return p;
}

GeometryParameterization GeometryParameterization::bond_chain(Molecule reference,
                                                              std::vector<int> chain) {
  GeometryParameterization p;
  p.kind_ = ParamKind::BondChain;
  p.reference_ = std::move(reference);
  p.chain_ = std::move(chain);
  if (p.chain_.size() < 2) throw InvalidGeometryError("bond chain needs at least two atoms");
  for (int idx : p.chain_) {
    if (idx < 0 || idx >= p.reference_.n_atoms()) {
      throw InvalidGeometryError("bond chain atom index out of range");
    }
  }
  for (std::size_t i = 0; i + 1 < p.chain_.size(); ++i) {
    p.names_.push_back("d" + std::to_string(i + 1));
    p.units_.push_back(ParamUnit::Length);
  }
  p.finalize_reference();
  return p;
}

GeometryParameterization GeometryParameterization::spherical_attachment(
    Molecule reference, int axis_a, int axis_b, std::vector<SphericalAttachment> attached) {
  GeometryParameterization p;
  p.kind_ = ParamKind::SphericalAttachment;
  p.reference_ = std::move(reference);
  p.axis_a_ = axis_a;
  p.axis_b_ = axis_b;
  p.attached_ = std::move(attached);
  const int n = p.reference_.n_atoms();
  if (axis_a < 0 || axis_a >= n || axis_b < 0 || axis_b >= n || axis_a == axis_b) {
    throw InvalidGeometryError("invalid axis atom pair");
  }
  if (p.attached_.empty()) throw InvalidGeometryError("no attached atoms given");
  for (const auto& att : p.attached_) {
    if (att.child < 0 || att.child >= n) throw InvalidGeometryError("attached atom out of range");
    if (att.parent != axis_a && att.parent != axis_b) {
      throw InvalidGeometryError("attachment parent must be one of the axis atoms");
    }
  }
  p.names_ = {"d1", "d2", "theta", "phi"};
  p.units_ = {ParamUnit::Length, ParamUnit::Length, ParamUnit::Angle, ParamUnit::Angle};
  p.finalize_reference();
  return p;
}

GeometryParameterization GeometryParameterization::rigid_group_rotation(Molecule reference,
                                                                        int pivot,
                                                                        std::vector<int> group) {
  GeometryParameterization p;
  p.kind_ = ParamKind::RigidGroupRotation;
  p.reference_ = std::move(reference);
  p.pivot_ = pivot;
  p.group_ = std::move(group);
  const int n = p.reference_.n_atoms();
  if (pivot < 0 || pivot >= n) throw InvalidGeometryError("pivot atom out of range");
  if (p.group_.empty()) throw InvalidGeometryError("empty rotation group");
  for (int idx : p.group_) {
    if (idx < 0 || idx >= n) throw InvalidGeometryError("group atom out of range");
    if (idx == pivot) throw InvalidGeometryError("pivot atom cannot be part of the rotated group");
  }
  p.names_ = {"R_y", "R_z"};
  p.units_ = {ParamUnit::Angle, ParamUnit::Angle};
  p.finalize_reference();
  return p;
}

void GeometryParameterization::finalize_reference() {
  if (kind_ == ParamKind::RigidGroupRotation) {
    reference_x_ = Vec::Zero(2);
  } else {
    reference_x_ = extract(reference_);
  }
  const Molecule rebuilt = apply(reference_x_);
  for (int i = 0; i < reference_.n_atoms(); ++i) {
    const double err = (rebuilt.atoms()[i].position - reference_.atoms()[i].position).norm();
    if (err > 1e-10) {
      throw InvalidGeometryError(
          "reference structure is not reproduced by its own parameters (atom " +
          std::to_string(i) + ", error " + std::to_string(err) +
          " Angstrom); for shared spherical parameters the reference must be symmetric");
    }
  }
}

Molecule GeometryParameterization::apply(const Vec& x) const {
  if (x.size() != n_parameters()) {
    throw InvalidGeometryError("parameter vector has length " + std::to_string(x.size()) +
                               ", expected " + std::to_string(n_parameters()));
  }
  for (int i = 0; i < x.size(); ++i) {
    if (units_[i] == ParamUnit::Length && x[i] <= kMinPairDistance) {
      throw InvalidGeometryError("length parameter " + names_[i] + " = " + std::to_string(x[i]) +
                                 " Angstrom is below the 0.1 Angstrom floor");
    }
  }

  std::vector<Vec3> pos;
  pos.reserve(reference_.n_atoms());
  for (const auto& a : reference_.atoms()) pos.push_back(a.position);

  switch (kind_) {
    case ParamKind::Cartesian: {
      for (int i = 0; i < reference_.n_atoms(); ++i) {
        pos[i] = Vec3(x[3 * i], x[3 * i + 1], x[3 * i + 2]);
      }
      break;
    }
    case ParamKind::BondChain: {
      for (std::size_t i = 0; i + 1 < chain_.size(); ++i) {
        const Vec3 ref_a = reference_.atoms()[chain_[i]].position;
        const Vec3 ref_b = reference_.atoms()[chain_[i + 1]].position;
        const Vec3 dir = (ref_b - ref_a).normalized();
        pos[chain_[i + 1]] = pos[chain_[i]] + x[static_cast<int>(i)] * dir;
      }
      break;
    }
    case ParamKind::SphericalAttachment: {
      const double d1 = x[0], d2 = x[1], theta = x[2], phi = x[3];
      const Vec3 ref_a = reference_.atoms()[axis_a_].position;
      const Vec3 ref_b = reference_.atoms()[axis_b_].position;
      const Vec3 mid = 0.5 * (ref_a + ref_b);
      const Vec3 axis = (ref_a - ref_b).normalized();
      pos[axis_a_] = mid + 0.5 * d2 * axis;
      pos[axis_b_] = mid - 0.5 * d2 * axis;
      for (const auto& att : attached_) {
        const int partner = (att.parent == axis_a_) ? axis_b_ : axis_a_;
        const LocalFrame f = attachment_frame(pos[att.parent], pos[partner]);
        const double az = att.azimuth_sign * theta;
        const Vec3 offset = d1 * (std::sin(phi) * (std::cos(az) * f.x + std::sin(az) * f.y) +
                                  std::cos(phi) * f.z);
        pos[att.child] = pos[att.parent] + offset;
      }
      break;
    }
    case ParamKind::RigidGroupRotation: {
      const Mat rot = rotation_z(x[1]) * rotation_y(x[0]);
      const Vec3 pivot = reference_.atoms()[pivot_].position;
      for (int idx : group_) {
        pos[idx] = pivot + rot * (reference_.atoms()[idx].position - pivot);
      }
      break;
    }
  }
  return reference_.with_positions(pos);  // re-validates pair distances
}

Vec GeometryParameterization::extract(const Molecule& mol) const {
  if (mol.n_atoms() != reference_.n_atoms()) {
    throw InvalidGeometryError("molecule incompatible with parameterization");
  }
  switch (kind_) {
    case ParamKind::Cartesian: {
      Vec x(3 * mol.n_atoms());
      for (int i = 0; i < mol.n_atoms(); ++i) {
        x.segment<3>(3 * i) = mol.atoms()[i].position;
      }
      return x;
    }
    case ParamKind::BondChain: {
      Vec x(static_cast<int>(chain_.size()) - 1);
      for (std::size_t i = 0; i + 1 < chain_.size(); ++i) {
        x[static_cast<int>(i)] =
            (mol.atoms()[chain_[i + 1]].position - mol.atoms()[chain_[i]].position).norm();
      }
      return x;
    }
    case ParamKind::SphericalAttachment: {
      const Vec3 a = mol.atoms()[axis_a_].position;
      const Vec3 b = mol.atoms()[axis_b_].position;
      const auto& att = attached_.front();
      const int partner = (att.parent == axis_a_) ? axis_b_ : axis_a_;
      const LocalFrame f =
          attachment_frame(mol.atoms()[att.parent].position, mol.atoms()[partner].position);
      const Vec3 v = mol.atoms()[att.child].position - mol.atoms()[att.parent].position;
      Vec x(4);
      x[0] = v.norm();
      x[1] = (a - b).norm();
      x[3] = std::acos(std::clamp(v.dot(f.z) / x[0], -1.0, 1.0));
      x[2] = att.azimuth_sign * std::atan2(v.dot(f.y), v.dot(f.x));
      return x;
    }
    case ParamKind::RigidGroupRotation:
      throw InvalidGeometryError("rigid-group-rotation parameters cannot be extracted");
  }
  throw InvalidGeometryError("unreachable");
}

double nuclear_repulsion(const Molecule& mol) {
  const auto& atoms = mol.atoms();
  double e = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      const double r_bohr = (atoms[i].position - atoms[j].position).norm() * kBohrPerAngstrom;
      if (r_bohr < 1e-10) throw InvalidGeometryError("coincident nuclei");
      e += static_cast<double>(atoms[i].atomic_number) * atoms[j].atomic_number / r_bohr;
    }
  }
  return e;
}

}  // namespace dmetgeo
