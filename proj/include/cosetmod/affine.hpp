#pragma once

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "cosetmod/liealg.hpp"
#include "cosetmod/rational.hpp"

namespace cosetmod {

/// One affine algebra at a fixed positive integer level.
struct LevelSpec {
  RootDatum datum;
  long long level = 1;
};

LevelSpec make_level(const RootDatum& datum, long long level);

/// The level-k dominant weights, graded-lexicographically ordered with
/// the vacuum first. The order is the canonical index for all modular
/// data downstream.
struct WeightListing {
  AlgebraSpec algebra;
  long long level = 1;
  std::vector<Weight> weights;
  std::map<Weight, int> index;

  int size() const { return static_cast<int>(weights.size()); }
  int index_of(const Weight& w) const;
};

WeightListing enumerate_level_weights(const LevelSpec& spec);

/// <Lambda, theta>, the level of a weight.
long long weight_level(const RootDatum& g, const Weight& w);

/// Sugawara conformal weight <L, L + 2 rho> / (2(k + h_vee)), exact.
Rat conformal_weight(const LevelSpec& spec, const Weight& lam);

/// k dim g / (k + h_vee), exact.
Rat central_charge(const LevelSpec& spec);

/// Vacuum row of the modular S-matrix by the sine product formula;
/// strictly positive, squares summing to 1.
std::vector<double> s_row_vacuum(const LevelSpec& spec, const WeightListing& listing);
std::vector<double> s_row_vacuum(const LevelSpec& spec);

/// Modular S-matrix over the listing: symmetric, unitary, positive
/// vacuum row. Construction fails hard if any of these checks fails.
struct ModularS {
  WeightListing listing;
  Eigen::MatrixXcd entries;
};

/// Off-vacuum rows by finite character evaluation at rational points
/// (exact phases through a root-of-unity table). OpenMP across entries;
/// summation order inside each entry is fixed, so results are
/// bit-identical to the serial reference.
ModularS s_matrix(const LevelSpec& spec);

/// Plain serial reference of the same kernel, kept for testing.
ModularS s_matrix_serial(const LevelSpec& spec);

/// Structural tolerances for modular data.
struct ModularTolerances {
  double structural = 1e-9;
  double vacuum_row = 1e-10;
};

/// Throws CheckFailure when symmetry/unitarity/vacuum-row checks fail.
void validate_modular(const ModularS& s, const LevelSpec& spec,
                      const ModularTolerances& tol = {});

/// Sum of squared vacuum-row entries over each congruence class of the
/// listing mod the root lattice; keys are canonical coordinate residues.
std::vector<std::pair<std::string, double>> congruence_class_sums(const LevelSpec& spec);

/// Permutations of the listing realized by the affine-diagram
/// automorphisms attached to the comark-one classes of the coweight
/// quotient; class 0 is the identity.
struct SimpleCurrentTable {
  AlgebraSpec algebra;
  long long level = 1;
  std::vector<int> classes;             // 0, then 1-based node indices
  std::vector<std::vector<int>> perms;  // per class, permutation of listing
};

SimpleCurrentTable simple_current_action(const LevelSpec& spec, const WeightListing& listing);
SimpleCurrentTable simple_current_action(const LevelSpec& spec);

}  // namespace cosetmod
