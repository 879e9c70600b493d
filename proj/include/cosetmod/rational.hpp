#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace cosetmod {

/// Exact rational scalar. Lattice arithmetic is done exactly; floating
/// point enters only when modular data is evaluated numerically.
using Rat = mpq_class;
using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;

// gmpxx has no long long overloads; on LP64 long is wide enough.
static_assert(sizeof(long) == sizeof(long long));
inline mpz_class to_mpz(long long v) { return mpz_class(static_cast<long>(v)); }
inline Rat to_rat(long long v) { return Rat(static_cast<long>(v)); }
inline Rat to_rat(long long num, long long den) {
  Rat r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

/// "p" for integers, "p/q" otherwise; canonical (reduced, q > 0).
std::string rat_str(const Rat& r);

QMat qmat_identity(int n);

/// Exact Gauss-Jordan inverse; throws std::invalid_argument if singular.
QMat qmat_inverse(const QMat& m);

QVec qmat_apply(const QMat& m, const QVec& v);

/// Least positive integer s such that s*m has integer entries.
long long lcm_denominators(const QMat& m);

/// Index in Z^rank of the sublattice spanned by the given generators
/// (computed from the Hermite normal form). Throws if not full rank.
long long lattice_index(std::vector<std::vector<long long>> rows, int rank);

/// Triangular basis of the sublattice spanned by the generators.
std::vector<std::vector<long long>> lattice_basis(std::vector<std::vector<long long>> rows,
                                                  int rank);

/// Exact conversion; throws if r is not an integer fitting in long long.
long long rat_to_ll(const Rat& r);

}  // namespace cosetmod
