#include "diracosc/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "diracosc/osc1d.hpp"

namespace diracosc::fock {

namespace {

using Triplet = Eigen::Triplet<Complex>;

bool label_less(const ModeLabel& a, const ModeLabel& b) {
  if (a.index() != b.index()) return a.index() < b.index();
  if (std::holds_alternative<int>(a)) return std::get<int>(a) < std::get<int>(b);
  return std::get<osc3d::Qnum3D>(a) < std::get<osc3d::Qnum3D>(b);
}

void require_index(const ModeSet& modes, int index) {
  if (index < 0 || index >= modes.size())
    throw DomainError("mode index " + std::to_string(index) + " outside ModeSet of size " +
                      std::to_string(modes.size()));
}

}  // namespace

std::string label_string(const ModeLabel& label) {
  if (std::holds_alternative<int>(label)) return "n=" + std::to_string(std::get<int>(label));
  return std::get<osc3d::Qnum3D>(label).to_string();
}

ModeSet::ModeSet(std::vector<Mode> modes) : modes_(std::move(modes)) {
  if (static_cast<int>(modes_.size()) > kMaxModes)
    throw DomainError("ModeSet: " + std::to_string(modes_.size()) + " modes exceeds the limit of " +
                      std::to_string(kMaxModes) + " (Fock dimension 2^M)");
  std::stable_sort(modes_.begin(), modes_.end(), [](const Mode& a, const Mode& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return label_less(a.label, b.label);
  });
  for (std::size_t i = 1; i < modes_.size(); ++i) {
    if (!label_less(modes_[i - 1].label, modes_[i].label) &&
        !label_less(modes_[i].label, modes_[i - 1].label))
      throw DomainError("ModeSet: duplicate label " + label_string(modes_[i].label));
  }
  for (std::size_t i = 1; i < modes_.size(); ++i)
    if (modes_[i].label.index() != modes_[0].label.index())
      throw DomainError("ModeSet: cannot mix (1+1) and (3+1) labels");
}

ModeSet ModeSet::one_dimensional(const OscParams& p, int n_minus, int n_plus) {
  if (n_minus < 0 || n_plus < -1) throw DomainError("ModeSet: invalid (1+1) cutoffs");
  std::vector<int> labels;
  for (int n = -n_minus; n <= n_plus; ++n) labels.push_back(n);
  return one_dimensional(p, labels);
}

ModeSet ModeSet::one_dimensional(const OscParams& p, const std::vector<int>& labels) {
  std::vector<Mode> modes;
  for (int n : labels) modes.push_back(Mode{n, osc1d::energy(p, n)});
  return ModeSet(std::move(modes));
}

ModeSet ModeSet::three_dimensional(const OscParams& p, int n_max, int kappa_max) {
  return three_dimensional(p, osc3d::enumerate_states(n_max, kappa_max));
}

ModeSet ModeSet::three_dimensional(const OscParams& p, const std::vector<osc3d::Qnum3D>& states) {
  std::vector<Mode> modes;
  for (const auto& q : states) {
    osc3d::validate(q.n_sign, q.n_abs, q.kappa, q.two_g);
    modes.push_back(Mode{q, osc3d::energy3d(p, q)});
  }
  return ModeSet(std::move(modes));
}

std::optional<int> ModeSet::index_of(const ModeLabel& label) const {
  for (int i = 0; i < size(); ++i)
    if (!label_less(modes_[i].label, label) && !label_less(label, modes_[i].label)) return i;
  return std::nullopt;
}

int ModeSet::index_of_1d(int n) const {
  const auto i = index_of(ModeLabel{n});
  if (!i) throw DomainError("mode n=" + std::to_string(n) + " not in ModeSet");
  return *i;
}

bool ModeSet::is_one_dimensional() const {
  return modes_.empty() || std::holds_alternative<int>(modes_.front().label);
}

FockOperator ladder(const ModeSet& modes, int index, Ladder which) {
  require_index(modes, index);
  const long dim = modes.dimension();
  const unsigned long bit = 1UL << index;
  const unsigned long below = bit - 1;
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(dim / 2));
  for (long k = 0; k < dim; ++k) {
    const auto state = static_cast<unsigned long>(k);
    const bool occupied = (state & bit) != 0;
    if (which == Ladder::annihilate ? !occupied : occupied) continue;
    const double sign = (std::popcount(state & below) % 2 == 0) ? 1.0 : -1.0;
    const long target = static_cast<long>(state ^ bit);
    trip.emplace_back(target, k, sign);
  }
  FockOperator op(dim, dim);
  op.setFromTriplets(trip.begin(), trip.end());
  return op;
}

FockOperator identity(const ModeSet& modes) {
  FockOperator id(modes.dimension(), modes.dimension());
  id.setIdentity();
  return id;
}

FockOperator hamiltonian_raw(const ModeSet& modes) {
  FockOperator h(modes.dimension(), modes.dimension());
  for (int i = 0; i < modes.size(); ++i) {
    const FockOperator n_i =
        ladder(modes, i, Ladder::create) * ladder(modes, i, Ladder::annihilate);
    h += modes[i].energy * n_i;
  }
  h.prune(Complex(0.0));
  return h;
}

long sea_vacuum_index(const ModeSet& modes) {
  long idx = 0;
  for (int i = 0; i < modes.size(); ++i)
    if (modes[i].energy < 0.0) idx |= 1L << i;
  return idx;
}

FockState sea_vacuum(const ModeSet& modes) {
  // Fill the sea by applying creators to the empty state, lowest mode last,
  // so the product order matches prod_n b^dagger_{-n} |0_D>.
  FockState empty = FockState::Zero(modes.dimension());
  empty[0] = 1.0;
  FockState state = empty;
  for (int i = modes.size() - 1; i >= 0; --i)
    if (modes[i].energy < 0.0) state = ladder(modes, i, Ladder::create) * state;
  return state;
}

FockOperator hamiltonian_normal_ordered(const ModeSet& modes) {
  FockOperator h(modes.dimension(), modes.dimension());
  for (int i = 0; i < modes.size(); ++i) {
    const FockOperator cr = ladder(modes, i, Ladder::create);
    const FockOperator an = ladder(modes, i, Ladder::annihilate);
    const double e = modes[i].energy;
    if (e >= 0.0) {
      h += e * FockOperator(cr * an);
    } else {
      // d^dagger d = b b^dagger
      h += (-e) * FockOperator(an * cr);
    }
  }
  h.prune(Complex(0.0));
  return h;
}

char family_char(Family f) {
  switch (f) {
    case Family::b: return 'b';
    case Family::c: return 'c';
    case Family::d: return 'd';
    case Family::f: return 'f';
  }
  return '?';
}

std::string ParticleLabel::to_string() const {
  std::string s(1, family_char(family));
  s += "[n=" + std::to_string(index);
  if (kappa_abs > 0) s += ", |kappa|=" + std::to_string(kappa_abs) + ", g=" + std::to_string(two_g) + "/2";
  s += "]";
  return s;
}

std::vector<ParticleLabel> particle_labels(const ModeSet& modes) {
  std::vector<ParticleLabel> out;
  for (int i = 0; i < modes.size(); ++i) {
    const Mode& m = modes[i];
    ParticleLabel pl;
    pl.mode = i;
    pl.energy = std::abs(m.energy);
    pl.antiparticle = m.energy < 0.0;
    if (std::holds_alternative<int>(m.label)) {
      const int n = std::get<int>(m.label);
      pl.family = pl.antiparticle ? Family::d : Family::c;
      pl.index = std::abs(n);
    } else {
      const auto& q = std::get<osc3d::Qnum3D>(m.label);
      if (q.kappa > 0)
        pl.family = pl.antiparticle ? Family::c : Family::b;
      else
        pl.family = pl.antiparticle ? Family::f : Family::d;
      pl.index = q.n_abs;
      pl.kappa_abs = std::abs(q.kappa);
      pl.two_g = q.two_g;
    }
    out.push_back(pl);
  }
  return out;
}

FockOperator family_operator(const ModeSet& modes, const ParticleLabel& label, Ladder which) {
  if (!label.antiparticle) return ladder(modes, label.mode, which);
  return ladder(modes, label.mode, which == Ladder::create ? Ladder::annihilate : Ladder::create);
}

FockOperator charge_operator(const ModeSet& modes, double e) {
  FockOperator q(modes.dimension(), modes.dimension());
  for (const auto& pl : particle_labels(modes)) {
    const FockOperator n = family_operator(modes, pl, Ladder::create) *
                           family_operator(modes, pl, Ladder::annihilate);
    q += (pl.antiparticle ? -e : e) * n;
  }
  q.prune(Complex(0.0));
  return q;
}

FockOperator one_body_lift(const ModeSet& modes, const Eigen::MatrixXcd& kernel) {
  const int m = modes.size();
  if (kernel.rows() != m || kernel.cols() != m)
    throw DomainError("one_body_lift: kernel is " + std::to_string(kernel.rows()) + "x" +
                      std::to_string(kernel.cols()) + ", ModeSet has " + std::to_string(m) +
                      " modes");
  std::vector<FockOperator> cr, an;
  for (int i = 0; i < m; ++i) {
    cr.push_back(ladder(modes, i, Ladder::create));
    an.push_back(ladder(modes, i, Ladder::annihilate));
  }
  FockOperator out(modes.dimension(), modes.dimension());
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (kernel(a, b) != Complex(0.0)) out += kernel(a, b) * FockOperator(cr[a] * an[b]);
  out.prune(Complex(0.0));
  return out;
}

Eigen::MatrixXcd momentum_kernel(const OscParams& p, const ModeSet& modes, int order) {
  if (!modes.is_one_dimensional()) throw DomainError("momentum_kernel: (1+1) ModeSet required");
  int nmax = 0;
  for (const auto& m : modes.modes()) nmax = std::max(nmax, std::abs(std::get<int>(m.label)));
  if (order <= 0) order = default_quadrature_order(nmax);
  const auto rule = gauss_hermite_rule(order, WeightConvention::folded);
  const double s = std::sqrt(p.m_omega());
  const int m = modes.size();
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(m, m);
  const Complex mi(0.0, -1.0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double z = rule.nodes[i] / s;
    const double w = rule.weights[i] / s;
    std::vector<Spinor> psi(static_cast<std::size_t>(m)), dpsi(static_cast<std::size_t>(m));
    for (int a = 0; a < m; ++a) {
      const int n = std::get<int>(modes[a].label);
      psi[a] = osc1d::wavefunction(p, n, z);
      dpsi[a] = osc1d::wavefunction_dz(p, n, z);
    }
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) k(a, b) += w * mi * dot(psi[a], dpsi[b]);
  }
  return k;
}

Complex expectation(const FockOperator& op, const FockState& state) {
  return state.dot(op * state);
}

double max_abs(const FockOperator& a) {
  double m = 0.0;
  for (int k = 0; k < a.outerSize(); ++k)
    for (FockOperator::InnerIterator it(a, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

double max_abs_diff(const FockOperator& a, const FockOperator& b) {
  const FockOperator d = a - b;
  return max_abs(d);
}

}  // namespace diracosc::fock
