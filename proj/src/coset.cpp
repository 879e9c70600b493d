#include "cosetmod/coset.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "cosetmod/errors.hpp"

namespace cosetmod {

bool rationality_proven(const CosetSpec& spec) {
  return spec.algebra.series == 'E' && spec.algebra.rank == 8 && (spec.k == 2 || spec.l == 2);
}

std::string triple_str(const ModuleTriple& t) {
  return "(" + weight_str(t.dot) + ", " + weight_str(t.ddot) + ", " + weight_str(t.lam) + ")";
}

CosetData::CosetData(const CosetSpec& spec)
    : spec_(spec), datum_(build_algebra(spec.algebra)) {
  if (spec.k < 1 || spec.l < 1)
    throw std::invalid_argument("coset levels must be positive integers");
  const LevelSpec sk = make_level(datum_, spec.k);
  const LevelSpec sl = make_level(datum_, spec.l);
  const LevelSpec skl = make_level(datum_, spec.k + spec.l);
  listing_k_ = enumerate_level_weights(sk);
  listing_l_ = enumerate_level_weights(sl);
  listing_kl_ = enumerate_level_weights(skl);
  table_k_ = simple_current_action(sk, listing_k_);
  table_l_ = simple_current_action(sl, listing_l_);
  table_kl_ = simple_current_action(skl, listing_kl_);
  row0_k_ = s_row_vacuum(sk, listing_k_);
  row0_l_ = s_row_vacuum(sl, listing_l_);
  row0_kl_ = s_row_vacuum(skl, listing_kl_);

  // Omega: triples whose label difference lies in the root lattice,
  // in lexicographic order of listing indices.
  for (int a = 0; a < listing_k_.size(); ++a)
    for (int b = 0; b < listing_l_.size(); ++b)
      for (int c = 0; c < listing_kl_.size(); ++c) {
        const Weight diff = weight_sub(weight_add(listing_k_.weights[a], listing_l_.weights[b]),
                                       listing_kl_.weights[c]);
        if (!in_root_lattice(datum_, diff)) continue;
        omega_.push_back({listing_k_.weights[a], listing_l_.weights[b], listing_kl_.weights[c]});
        omega_idx_.push_back({a, b, c});
      }

  // Orbit decomposition under the diagonal action.
  const int nclasses = static_cast<int>(datum_.coweight_reps.size());
  orbits_.group_order = nclasses;
  std::map<std::array<int, 3>, int> pos;
  for (size_t i = 0; i < omega_idx_.size(); ++i) pos[omega_idx_[i]] = static_cast<int>(i);
  rep_of_.assign(omega_.size(), -1);
  for (size_t i = 0; i < omega_.size(); ++i) {
    if (rep_of_[i] >= 0) continue;
    Orbit orb;
    orb.rep = omega_[i];
    const int orbit_id = static_cast<int>(orbits_.orbits.size());
    for (int c = 0; c < nclasses; ++c) {
      const std::array<int, 3> img{table_k_.perms[c][omega_idx_[i][0]],
                                   table_l_.perms[c][omega_idx_[i][1]],
                                   table_kl_.perms[c][omega_idx_[i][2]]};
      const auto it = pos.find(img);
      if (it == pos.end())
        throw std::logic_error("diagonal action left the candidate set");
      if (img == omega_idx_[i]) orb.stabilizer.push_back(c);
      if (rep_of_[it->second] < 0) {
        rep_of_[it->second] = orbit_id;
        orb.members.push_back(it->second);
      }
    }
    std::sort(orb.members.begin(), orb.members.end());
    orb.rep = omega_[orb.members.front()];  // lex-least member
    if (static_cast<long long>(orb.members.size()) * orb.stabilizer.size() !=
        orbits_.group_order)
      throw std::logic_error("orbit size times stabilizer order mismatch");
    orbits_.orbits.push_back(std::move(orb));
  }
}

int CosetData::triple_index(int a, int b, int c) const {
  for (size_t i = 0; i < omega_idx_.size(); ++i)
    if (omega_idx_[i] == std::array<int, 3>{a, b, c}) return static_cast<int>(i);
  return -1;
}

bool CosetData::free_action() const {
  for (const auto& orb : orbits_.orbits)
    if (orb.stabilizer.size() != 1) return false;
  return true;
}

std::vector<ModuleTriple> CosetData::classify() const {
  if (!spec_.rationality_assumed && !rationality_proven(spec_))
    throw HypothesisViolation(
        "classification refused: rationality and C2-cofiniteness of the coset algebra are "
        "neither established for this configuration nor assumed (pass --assume-rational "
        "to proceed under the hypothesis)");
  for (const auto& orb : orbits_.orbits) {
    if (orb.stabilizer.size() != 1) {
      throw HypothesisViolation(
          "classification refused: the free-action hypothesis fails; the candidate module " +
          triple_str(orb.rep) + " is fixed by a nontrivial simple-current class");
    }
  }
  std::vector<ModuleTriple> reps;
  reps.reserve(orbits_.orbits.size());
  for (const auto& orb : orbits_.orbits) reps.push_back(orb.rep);
  return reps;
}

double CosetData::quantum_dimension(const ModuleTriple& t) const {
  const int a = listing_k_.index_of(t.dot);
  const int b = listing_l_.index_of(t.ddot);
  const int c = listing_kl_.index_of(t.lam);
  if (triple_index(a, b, c) < 0)
    throw std::invalid_argument("quantum_dimension: triple not a candidate module: " +
                                triple_str(t));
  return (row0_k_[a] / row0_k_[0]) * (row0_l_[b] / row0_l_[0]) * (row0_kl_[c] / row0_kl_[0]);
}

double CosetData::global_dimension() const {
  const double p = static_cast<double>(datum_.center_order);
  return 1.0 /
         (p * p * row0_k_[0] * row0_k_[0] * row0_l_[0] * row0_l_[0] * row0_kl_[0] * row0_kl_[0]);
}

double CosetData::global_dimension_sum() const {
  double acc = 0;
  for (const auto& orb : orbits_.orbits) {
    const double q = quantum_dimension(orb.rep);
    acc += q * q;
  }
  return acc;
}

const ModularS& CosetData::s_k() {
  if (!s_k_) s_k_ = s_matrix(make_level(datum_, spec_.k));
  return *s_k_;
}
const ModularS& CosetData::s_l() {
  if (!s_l_) s_l_ = s_matrix(make_level(datum_, spec_.l));
  return *s_l_;
}
const ModularS& CosetData::s_kl() {
  if (!s_kl_) s_kl_ = s_matrix(make_level(datum_, spec_.k + spec_.l));
  return *s_kl_;
}

CosetModularS CosetData::coset_s_matrix() {
  const auto reps = classify();
  const Eigen::MatrixXcd& Sk = s_k().entries;
  const Eigen::MatrixXcd& Sl = s_l().entries;
  const Eigen::MatrixXcd& Skl = s_kl().entries;
  const int n = static_cast<int>(reps.size());
  CosetModularS out;
  out.index = reps;
  out.entries.resize(n, n);
  const double p = static_cast<double>(datum_.center_order);
  std::vector<std::array<int, 3>> idx(n);
  for (int i = 0; i < n; ++i)
    idx[i] = {listing_k_.index_of(reps[i].dot), listing_l_.index_of(reps[i].ddot),
              listing_kl_.index_of(reps[i].lam)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.entries(i, j) = p * Sk(idx[i][0], idx[j][0]) * Sl(idx[i][1], idx[j][1]) *
                          std::conj(Skl(idx[i][2], idx[j][2]));

  // Same structural requirements as for the level S-matrices.
  double sym = 0, uni = 0;
  const Eigen::MatrixXcd G = out.entries * out.entries.adjoint();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      sym = std::max(sym, std::abs(out.entries(i, j) - out.entries(j, i)));
      uni = std::max(uni, std::abs(G(i, j) - (i == j ? 1.0 : 0.0)));
    }
  if (sym >= 1e-9) throw CheckFailure("coset S-matrix symmetry violated");
  if (uni >= 1e-9) throw CheckFailure("coset S-matrix unitarity violated");
  for (int j = 0; j < n; ++j)
    if (std::abs(out.entries(0, j).imag()) >= 1e-9 || out.entries(0, j).real() <= 0)
      throw CheckFailure("coset S-matrix vacuum row not strictly positive real");
  return out;
}

FusionTensor CosetData::coset_fusion(double tol) {
  return verlinde(coset_s_matrix().entries, tol);
}

bool CosetData::fusion_factorizes(const FusionTensor& t, double /*tol*/) {
  const auto reps = classify();
  if (static_cast<size_t>(t.n) != reps.size() || reps.size() != omega_.size()) return false;
  const FusionTensor fk = verlinde(s_k().entries);
  const FusionTensor fl = verlinde(s_l().entries);
  const FusionTensor fkl = verlinde(s_kl().entries);
  const int n = t.n;
  std::vector<std::array<int, 3>> idx(n);
  for (int i = 0; i < n; ++i)
    idx[i] = {listing_k_.index_of(reps[i].dot), listing_l_.index_of(reps[i].ddot),
              listing_kl_.index_of(reps[i].lam)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const long long prod = fk.at(idx[i][0], idx[j][0], idx[k][0]) *
                               fl.at(idx[i][1], idx[j][1], idx[k][1]) *
                               fkl.at(idx[i][2], idx[j][2], idx[k][2]);
        if (t.at(i, j, k) != prod) return false;
      }
  return true;
}

}  // namespace cosetmod
