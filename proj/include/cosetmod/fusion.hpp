#pragma once

#include <Eigen/Dense>

#include <vector>

#include "cosetmod/affine.hpp"

namespace cosetmod {

/// Nonnegative integer fusion coefficients N_{ij}^k over an ordered
/// module list whose index 0 is the vacuum. Unit law, commutativity and
/// associativity hold exactly on construction.
struct FusionTensor {
  int n = 0;
  std::vector<long long> coeff;  // n^3, layout (i*n + j)*n + k

  long long at(int i, int j, int k) const {
    return coeff[(static_cast<size_t>(i) * n + j) * n + k];
  }
};

/// Verlinde sum from a unitary S-matrix with S^{-1} taken as the
/// conjugate transpose. Every raw value must sit within `tol` of a
/// nonnegative integer; otherwise CheckFailure reports the worst
/// offender. OpenMP across (i,j) pairs, fixed inner summation order.
FusionTensor verlinde(const Eigen::MatrixXcd& s, double tol = 1e-6);
FusionTensor verlinde(const ModularS& s, double tol = 1e-6);

/// Serial reference of the same kernel, kept for testing.
FusionTensor verlinde_serial(const Eigen::MatrixXcd& s, double tol = 1e-6);

/// Truncated Clebsch-Gordan rule for level-k sl2: 1 iff
/// |a-b| <= c <= min(a+b, 2k-a-b) and a+b+c even.
int sl2_fusion_oracle(long long k, long long a, long long b, long long c);

/// S_{0,i} / S_{0,0}; each at least 1 up to tolerance.
std::vector<double> quantum_dimensions(const Eigen::MatrixXcd& s);
std::vector<double> quantum_dimensions(const ModularS& s);

}  // namespace cosetmod
