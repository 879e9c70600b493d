#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cosetmod/rational.hpp"

namespace cosetmod {

/// A weight written in Dynkin labels with respect to the fundamental
/// weights. Integral throughout; dominant iff every label >= 0.
using Weight = std::vector<long long>;

bool is_dominant(const Weight& w);
bool is_zero(const Weight& w);
std::string weight_str(const Weight& w);  // "[a,b,...]"
Weight weight_add(const Weight& a, const Weight& b);
Weight weight_sub(const Weight& a, const Weight& b);

struct AlgebraSpec {
  char series = 'A';  // one of A B C D E F G
  int rank = 1;
  bool operator==(const AlgebraSpec&) const = default;
};

/// Positive root, carried both in Dynkin labels and in simple-root
/// coordinates.
struct PosRoot {
  Weight labels;
  std::vector<long long> coords;
  long long height = 0;
  bool is_long = false;
};

/// Complete combinatorial data of one simple Lie algebra, with the
/// invariant form normalized so the highest root has squared length 2.
/// Node numbering follows Bourbaki. Immutable after construction.
struct RootDatum {
  AlgebraSpec spec;
  std::vector<Weight> cartan;  // row i = Dynkin labels of alpha_i
  QVec half_norms;             // d_i = <alpha_i,alpha_i>/2
  QMat form;                   // F_ij = <Lambda_i, Lambda_j>
  long long form_scale = 1;    // least s with s*F integral
  std::vector<std::vector<long long>> form_scaled;  // s*F
  std::vector<PosRoot> positive_roots;
  Weight rho;    // all labels 1
  Weight theta;  // highest root
  long long dual_coxeter = 0;
  std::vector<long long> marks;    // theta = sum marks_i alpha_i
  std::vector<long long> comarks;  // marks_i * d_i
  long long center_order = 1;      // |P/Q|
  long long long_index = 1;        // |P/Q_L|, Q_L spanned by long roots
  std::vector<int> J;              // 0-based nodes with mark 1
  std::vector<int> coweight_reps;  // classes of the coweight quotient:
                                   // 0 = identity, then 1-based nodes of J
  QMat inv_cartan_t;               // labels -> simple-root coordinates
  long long coord_scale = 1;
  std::vector<std::vector<long long>> inv_cartan_t_scaled;

  int rank() const { return spec.rank; }
  long long dim() const { return spec.rank + 2 * static_cast<long long>(positive_roots.size()); }
};

/// Builds the full datum; throws std::invalid_argument on a bad
/// series/rank combination. Every structural invariant is verified.
RootDatum build_algebra(const AlgebraSpec& spec);

/// <lam, mu> under the normalized invariant form, exact.
Rat inner_product(const RootDatum& g, const Weight& lam, const Weight& mu);

/// form_scale * <lam, mu>, as a plain integer.
long long ip_scaled(const RootDatum& g, const Weight& lam, const Weight& mu);

/// Simple-root coordinates of w (exact rationals).
QVec root_coords(const RootDatum& g, const Weight& w);

/// True iff w lies in the root lattice Q.
bool in_root_lattice(const RootDatum& g, const Weight& w);

/// coord_scale * (coordinates of w); always integral.
std::vector<long long> root_coords_scaled(const RootDatum& g, const Weight& w);

/// Unique dominant Weyl-orbit representative together with the sign of
/// the reflecting element; sign 0 iff w lies on a wall.
std::pair<Weight, int> to_dominant(const RootDatum& g, Weight w);

/// Dominant representative only (walls allowed).
Weight dominant_of(const RootDatum& g, Weight w);

/// w - w_i * alpha_i.
void apply_simple_reflection(const RootDatum& g, Weight& w, int i);

/// dim L(lam) by the Weyl dimension formula, exact. Requires lam dominant.
long long weyl_dimension(const RootDatum& g, const Weight& lam);

/// Dominant weights of the irreducible module L(lam) with multiplicities
/// (Freudenthal recursion, exact integer arithmetic).
std::map<Weight, long long> weight_system(const RootDatum& g, const Weight& lam);

/// Full Weyl orbit of w, sorted.
std::vector<Weight> weyl_orbit(const RootDatum& g, const Weight& w);

/// All weights of L(lam) with multiplicities, expanded over Weyl orbits,
/// in a fixed deterministic order.
std::vector<std::pair<Weight, long long>> full_weight_list(const RootDatum& g, const Weight& lam);

/// The finite Weyl group as matrices acting on label vectors (row-vector
/// convention), with determinant signs. Guarded to rank <= 3.
struct WeylElement {
  std::vector<Weight> rows;  // image of e_i as label vector
  int sign = 1;
};
std::vector<WeylElement> weyl_group_elements(const RootDatum& g);
Weight weyl_apply(const WeylElement& w, const Weight& v);

}  // namespace cosetmod
