#pragma once

#include <map>
#include <vector>

#include "cosetmod/affine.hpp"
#include "cosetmod/liealg.hpp"
#include "cosetmod/rational.hpp"

namespace cosetmod {

/// Formal power series in q with a rational leading exponent and
/// integer coefficients; coeffs[i] multiplies q^(offset + i).
struct QSeries {
  Rat offset = 0;
  std::vector<long long> coeffs;
  int order = 0;  // truncation grade

  bool is_zero() const { return coeffs.empty(); }
};

/// Graded multiplicities of one integrable module, grades 0..order.
/// Layers carry the full weight support; each layer is a finite
/// Weyl-invariant multiset.
struct FormalCharacter {
  int order = 0;
  std::vector<std::map<Weight, long long>> layers;

  std::map<Weight, long long> dominant_layer(int n) const;
  long long layer_dim(int n) const;
};

struct AffineCharacter {
  FormalCharacter character;
  QSeries q;  // offset = conformal weight - c/24
};

/// Graded character of L(k, lam) to grade N via the truncated affine
/// Weyl numerator (finite Weyl group times scaled coroot translations)
/// divided by the affine denominator. Guarded to rank <= 3.
AffineCharacter affine_character(const LevelSpec& spec, const Weight& lam, int order);

/// Branching series of L(k, dot) x L(l, ddot) over the level-(k+l)
/// diagonal: one series per level-(k+l) weight (zero where excluded).
struct BranchingResult {
  WeightListing listing_kl;
  std::vector<QSeries> series;           // per listing index
  std::vector<Rat> conformal_weights;    // offset + cd/24 (0 for zero series)
  Rat coset_central_charge = 0;          // cd = c_k + c_l - c_{k+l}
};

BranchingResult branching(const LevelSpec& spec_k, const Weight& dot, const LevelSpec& spec_l,
                          const Weight& ddot, int order);

/// Exact integer identity to the truncation grade: the graded product
/// character equals the sum of level-(k+l) characters convolved with
/// their branching series.
struct VerifyResult {
  bool ok = true;
  int grade = -1;
  Weight where;
};

VerifyResult verify_decomposition(const LevelSpec& spec_k, const Weight& dot,
                                  const LevelSpec& spec_l, const Weight& ddot, int order);

}  // namespace cosetmod
