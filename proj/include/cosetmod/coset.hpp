#pragma once

#include <Eigen/Dense>

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cosetmod/affine.hpp"
#include "cosetmod/fusion.hpp"
#include "cosetmod/liealg.hpp"

namespace cosetmod {

/// One diagonal coset configuration: the commutant of the level-(k+l)
/// diagonal subalgebra inside the level-k times level-l tensor product.
/// `rationality_assumed` records the standing regularity hypothesis; it
/// defaults to true exactly where that hypothesis is established
/// (series E rank 8 with k = 2 or l = 2).
struct CosetSpec {
  AlgebraSpec algebra;
  long long k = 1;
  long long l = 1;
  bool rationality_assumed = false;
};

/// True where the regularity hypothesis is a theorem rather than an
/// assumption.
bool rationality_proven(const CosetSpec& spec);

/// A candidate module: weights at levels k, l and k+l whose difference
/// lies in the root lattice.
struct ModuleTriple {
  Weight dot, ddot, lam;
  bool operator==(const ModuleTriple&) const = default;
};

std::string triple_str(const ModuleTriple& t);

struct Orbit {
  ModuleTriple rep;                // lex-least member
  std::vector<int> members;        // indices into the Omega listing
  std::vector<int> stabilizer;     // class positions (0 = identity)
};

struct OrbitSet {
  std::vector<Orbit> orbits;
  long long group_order = 1;
};

struct CosetModularS {
  std::vector<ModuleTriple> index;
  Eigen::MatrixXcd entries;
};

/// All coset data derived from one CosetSpec, built once and reused:
/// the candidate-module set, its orbit decomposition under the diagonal
/// simple-current action, and (lazily) the three level S-matrices.
class CosetData {
 public:
  explicit CosetData(const CosetSpec& spec);

  const CosetSpec& spec() const { return spec_; }
  const RootDatum& datum() const { return datum_; }
  const WeightListing& listing_k() const { return listing_k_; }
  const WeightListing& listing_l() const { return listing_l_; }
  const WeightListing& listing_kl() const { return listing_kl_; }

  /// Omega, in lexicographic order of (dot, ddot, lam) listing indices.
  const std::vector<ModuleTriple>& omega() const { return omega_; }
  ModuleTriple omega_at(int i) const { return omega_[i]; }

  const OrbitSet& orbits() const { return orbits_; }

  /// True iff every stabilizer is trivial. The trivial group acts
  /// freely by convention, so a trivial coweight quotient passes.
  bool free_action() const;

  /// Orbit representatives = the inequivalent irreducible modules under
  /// the standing hypotheses; throws HypothesisViolation otherwise,
  /// naming the failed assumption (and a fixed point if one exists).
  std::vector<ModuleTriple> classify() const;

  /// Triple product of vacuum-row ratios at the three levels.
  double quantum_dimension(const ModuleTriple& t) const;

  /// Closed form 1 / (|P/Q|^2 S_k(0,0)^2 S_l(0,0)^2 S_{k+l}(0,0)^2).
  double global_dimension() const;

  /// Independent route: sum of squared quantum dimensions over orbit
  /// representatives.
  double global_dimension_sum() const;

  const ModularS& s_k();
  const ModularS& s_l();
  const ModularS& s_kl();

  /// S over orbit representatives:
  /// |P/Q| S_k(dot,dot') S_l(ddot,ddot') conj(S_{k+l}(lam,lam')).
  /// Requires the classification hypotheses; checked unitary/symmetric.
  CosetModularS coset_s_matrix();

  /// Verlinde tensor of the coset S-matrix.
  FusionTensor coset_fusion(double tol = 1e-6);

  /// Entrywise equality of the coset tensor with the product of the
  /// three level fusion tensors (meaningful when the orbit set is all
  /// of Omega, i.e. a trivial coweight quotient).
  bool fusion_factorizes(const FusionTensor& coset_tensor, double tol = 1e-6);

 private:
  int triple_index(int a, int b, int c) const;

  CosetSpec spec_;
  RootDatum datum_;
  WeightListing listing_k_, listing_l_, listing_kl_;
  SimpleCurrentTable table_k_, table_l_, table_kl_;
  std::vector<ModuleTriple> omega_;
  std::vector<std::array<int, 3>> omega_idx_;
  std::vector<int> rep_of_;  // orbit id per omega element
  OrbitSet orbits_;
  std::vector<double> row0_k_, row0_l_, row0_kl_;
  std::optional<ModularS> s_k_, s_l_, s_kl_;
};

}  // namespace cosetmod
