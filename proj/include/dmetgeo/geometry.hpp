#pragma once

#include <string>
#include <vector>

#include "dmetgeo/types.hpp"

namespace dmetgeo {

/// One nucleus. Positions are Cartesian Angstrom.
struct Atom {
  std::string element;
  int atomic_number = 0;
  Vec3 position = Vec3::Zero();
};

/// A molecule with a fixed electron count. Construction validates that no two
/// atoms sit closer than 0.1 Angstrom and that the electron count is
/// consistent with the nuclear charges and the total charge.
class Molecule {
 public:
  Molecule(std::vector<Atom> atoms, int charge = 0);

  const std::vector<Atom>& atoms() const { return atoms_; }
  int charge() const { return charge_; }
  int n_electrons() const { return n_electrons_; }
  int n_atoms() const { return static_cast<int>(atoms_.size()); }

  Molecule with_positions(const std::vector<Vec3>& positions) const;

 private:
  std::vector<Atom> atoms_;
  int charge_ = 0;
  int n_electrons_ = 0;
};

int atomic_number_for(const std::string& symbol);  // throws ParseError if unknown

/// Parses standard XYZ text (count line, comment line, `El x y z` rows,
/// Angstrom). Errors carry the offending line number.
Molecule parse_xyz(const std::string& text, int charge = 0);

Molecule load_xyz_file(const std::string& path, int charge = 0);

enum class ParamKind { Cartesian, BondChain, SphericalAttachment, RigidGroupRotation };

enum class ParamUnit { Length, Angle };

/// One atom placed on a sphere around its parent. The local frame is derived
/// from the axis pair (parent -> away from partner defines +z, a fixed
/// auxiliary direction defines x); `azimuth_sign` mirrors the azimuthal angle
/// so symmetry-equivalent attachments can share one parameter triple.
struct SphericalAttachment {
  int child = -1;
  int parent = -1;
  double azimuth_sign = 1.0;
};

/// Maps an optimization parameter vector x onto Cartesian coordinates.
///
/// Kinds:
///   cartesian             x = all 3N coordinates (Angstrom), atom order.
///   bond-chain            x = consecutive gap lengths along a chain of atom
///                         indices; gap directions are taken from the
///                         reference structure, so the chain shape is kept.
///   spherical-attachment  x = (d1, d2, theta, phi): d2 scales the axis bond
///                         symmetrically about its midpoint, each attached
///                         atom is placed at spherical offset (d1, theta, phi)
///                         in its local frame; theta is the azimuth, phi the
///                         polar angle measured from the outward axis.
///   rigid-group-rotation  x = (R_y, R_z): the group is rotated about the
///                         global y axis by R_y, then about the global z axis
///                         by R_z, both centered on the pivot atom.
class GeometryParameterization {
 public:
  static GeometryParameterization cartesian(Molecule reference);
  static GeometryParameterization bond_chain(Molecule reference, std::vector<int> chain);
  static GeometryParameterization spherical_attachment(Molecule reference, int axis_a,
                                                       int axis_b,
                                                       std::vector<SphericalAttachment> attached);
  static GeometryParameterization rigid_group_rotation(Molecule reference, int pivot,
                                                       std::vector<int> group);

  ParamKind kind() const { return kind_; }
  const std::vector<std::string>& parameter_names() const { return names_; }
  int n_parameters() const { return static_cast<int>(names_.size()); }
  const Molecule& reference_structure() const { return reference_; }
  const Vec& reference_parameters() const { return reference_x_; }
  ParamUnit parameter_unit(int i) const { return units_[i]; }

  Molecule apply(const Vec& x) const;

  /// Inverse of apply for bond-chain, spherical-attachment and cartesian
  /// kinds; rigid-group-rotation is not invertible from coordinates alone.
  Vec extract(const Molecule& mol) const;

 private:
  GeometryParameterization() = default;
  void finalize_reference();

  ParamKind kind_ = ParamKind::Cartesian;
  std::vector<std::string> names_;
  std::vector<ParamUnit> units_;
  Molecule reference_{std::vector<Atom>{Atom{"H", 1, Vec3::Zero()}}, 0};
  Vec reference_x_;

  std::vector<int> chain_;
  int axis_a_ = -1, axis_b_ = -1;
  std::vector<SphericalAttachment> attached_;
  int pivot_ = -1;
  std::vector<int> group_;
};

/// Nuclear repulsion energy in Hartree (positions converted to Bohr).
double nuclear_repulsion(const Molecule& mol);

}  // namespace dmetgeo
