#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "diracosc/osc3d.hpp"
#include "diracosc/types.hpp"

/// Truncated second quantisation over a finite list of oscillator modes.
///
/// The Fock space of M modes has dimension 2^M; basis state k has mode i
/// occupied iff bit i of k is set. Fermionic signs follow the Jordan-Wigner
/// string over the mode order of the ModeSet.
namespace diracosc::fock {

using ModeLabel = std::variant<int, osc3d::Qnum3D>;

struct Mode {
  ModeLabel label;
  double energy = 0.0;
};

std::string label_string(const ModeLabel& label);

class ModeSet {
 public:
  static constexpr int kMaxModes = 14;

  /// Sorts by (energy, label). Throws DomainError on duplicates or M > 14.
  explicit ModeSet(std::vector<Mode> modes);

  /// Modes n = -n_minus .. n_plus of the (1+1) oscillator.
  static ModeSet one_dimensional(const OscParams& p, int n_minus, int n_plus);
  /// Arbitrary (1+1) labels.
  static ModeSet one_dimensional(const OscParams& p, const std::vector<int>& labels);
  /// All (3+1) states with |n| <= n_max, |kappa| <= kappa_max.
  static ModeSet three_dimensional(const OscParams& p, int n_max, int kappa_max);
  static ModeSet three_dimensional(const OscParams& p, const std::vector<osc3d::Qnum3D>& states);

  int size() const { return static_cast<int>(modes_.size()); }
  long dimension() const { return 1L << modes_.size(); }
  const Mode& operator[](int i) const { return modes_[static_cast<std::size_t>(i)]; }
  const std::vector<Mode>& modes() const { return modes_; }
  std::optional<int> index_of(const ModeLabel& label) const;
  /// Index of a (1+1) label; throws if absent.
  int index_of_1d(int n) const;
  bool is_one_dimensional() const;

 private:
  std::vector<Mode> modes_;
};

using FockOperator = Eigen::SparseMatrix<Complex>;
using FockState = Eigen::VectorXcd;

enum class Ladder { create, annihilate };

FockOperator ladder(const ModeSet& modes, int index, Ladder which);

/// sum_n E_n b_n^dagger b_n over every mode, negative energies included.
FockOperator hamiltonian_raw(const ModeSet& modes);

/// All negative-energy modes filled, everything else empty.
FockState sea_vacuum(const ModeSet& modes);

/// Basis index of the sea vacuum.
long sea_vacuum_index(const ModeSet& modes);

/// sum_{E>0} E c^dagger c + sum_{E<0} |E| d^dagger d with d^dagger = b.
/// Equals hamiltonian_raw minus the (truncated) sea energy.
FockOperator hamiltonian_normal_ordered(const ModeSet& modes);

/// Operator families after the particle/antiparticle relabelling.
///   (1+1): c (particles, E > 0), d (antiparticles, E < 0)
///   (3+1): b particles kappa > 0, c antiparticles kappa > 0,
///          d particles kappa < 0, f antiparticles kappa < 0
enum class Family { b, c, d, f };

char family_char(Family f);

struct ParticleLabel {
  Family family = Family::c;
  bool antiparticle = false;
  int index = 0;      // |n|
  int kappa_abs = 0;  // 0 in (1+1)
  int two_g = 0;      // 0 in (1+1)
  int mode = 0;       // position in the ModeSet
  double energy = 0.0;  // excitation energy, always >= 0
  std::string to_string() const;
};

std::vector<ParticleLabel> particle_labels(const ModeSet& modes);

/// Creation/annihilation operator of a relabelled family member. For an
/// antiparticle, creation is the raw annihilator of its mode.
FockOperator family_operator(const ModeSet& modes, const ParticleLabel& label, Ladder which);

/// Q = e (sum n^(particle) - sum n^(antiparticle)); zero on the sea vacuum.
FockOperator charge_operator(const ModeSet& modes, double e = 1.0);

/// sum_ab K_ab b_a^dagger b_b with K indexed in ModeSet order.
FockOperator one_body_lift(const ModeSet& modes, const Eigen::MatrixXcd& kernel);

/// K_ab = <psi_a| -i d/dz |psi_b> at t = 0 for a (1+1) ModeSet.
Eigen::MatrixXcd momentum_kernel(const OscParams& p, const ModeSet& modes, int order = 0);

Complex expectation(const FockOperator& op, const FockState& state);

/// Max entrywise |A - B|.
double max_abs_diff(const FockOperator& a, const FockOperator& b);
double max_abs(const FockOperator& a);

FockOperator identity(const ModeSet& modes);

}  // namespace diracosc::fock
