#include "cosetmod/fusion.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "cosetmod/errors.hpp"

namespace cosetmod {

namespace {

struct RawWorst {
  double dist = 0;
  int i = 0, j = 0, k = 0;
  double re = 0, im = 0;
};

FusionTensor compute(const Eigen::MatrixXcd& s, double tol, bool parallel) {
  const int n = static_cast<int>(s.rows());
  if (s.cols() != n) throw std::invalid_argument("verlinde: S must be square");
  for (int a = 0; a < n; ++a)
    if (std::abs(s(0, a)) < 1e-14)
      throw std::invalid_argument("verlinde: vanishing vacuum-row entry");

  FusionTensor t;
  t.n = n;
  t.coeff.assign(static_cast<size_t>(n) * n * n, 0);
  std::vector<RawWorst> worst_per_pair(static_cast<size_t>(n) * n);

#pragma omp parallel for schedule(static) if (parallel)
  for (long long p = 0; p < static_cast<long long>(n) * n; ++p) {
    const int i = static_cast<int>(p / n);
    const int j = static_cast<int>(p % n);
    RawWorst w;
    for (int k = 0; k < n; ++k) {
      std::complex<double> acc(0.0, 0.0);
      for (int a = 0; a < n; ++a) acc += s(j, a) * s(i, a) * std::conj(s(k, a)) / s(0, a);
      const double re = acc.real();
      const long long r = std::llround(re);
      const double dist = std::hypot(re - static_cast<double>(r), acc.imag());
      if (dist > w.dist) w = {dist, i, j, k, re, acc.imag()};
      t.coeff[(static_cast<size_t>(i) * n + j) * n + k] = r;
    }
    worst_per_pair[p] = w;
  }

  RawWorst worst;
  for (const auto& w : worst_per_pair)
    if (w.dist > worst.dist) worst = w;
  if (worst.dist > tol) {
    std::ostringstream os;
    os << "fusion integrality failure: entry (" << worst.i << "," << worst.j << "," << worst.k
       << ") raw value (" << worst.re << "," << worst.im << ") is " << worst.dist
       << " from an integer (tolerance " << tol << ")";
    throw CheckFailure(os.str());
  }
  for (size_t idx = 0; idx < t.coeff.size(); ++idx)
    if (t.coeff[idx] < 0)
      throw CheckFailure("fusion consistency failure: negative coefficient after rounding");

  // Unit law and commutativity are exact on the rounded tensor.
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (t.at(0, j, k) != (j == k ? 1 : 0))
        throw CheckFailure("fusion unit law violated at (0," + std::to_string(j) + "," +
                           std::to_string(k) + ")");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      for (int k = 0; k < n; ++k)
        if (t.at(i, j, k) != t.at(j, i, k))
          throw CheckFailure("fusion commutativity violated");

  // Associativity: sum_m N_ij^m N_mk^q == sum_m N_jk^m N_im^q.
  bool assoc_ok = true;
#pragma omp parallel for schedule(dynamic) reduction(&& : assoc_ok) if (parallel)
  for (long long p = 0; p < static_cast<long long>(n) * n; ++p) {
    const int i = static_cast<int>(p / n);
    const int j = static_cast<int>(p % n);
    for (int k = 0; k < n && assoc_ok; ++k)
      for (int q = 0; q < n; ++q) {
        long long lhs = 0, rhs = 0;
        for (int m = 0; m < n; ++m) {
          lhs += t.at(i, j, m) * t.at(m, k, q);
          rhs += t.at(j, k, m) * t.at(i, m, q);
        }
        if (lhs != rhs) { assoc_ok = false; break; }
      }
  }
  if (!assoc_ok) throw CheckFailure("fusion associativity violated");
  return t;
}

}  // namespace

FusionTensor verlinde(const Eigen::MatrixXcd& s, double tol) { return compute(s, tol, true); }

FusionTensor verlinde_serial(const Eigen::MatrixXcd& s, double tol) { return compute(s, tol, false); }

FusionTensor verlinde(const ModularS& s, double tol) { return verlinde(s.entries, tol); }

int sl2_fusion_oracle(long long k, long long a, long long b, long long c) {
  if (a < 0 || b < 0 || c < 0 || a > k || b > k || c > k)
    throw std::out_of_range("sl2_fusion_oracle: labels must lie in [0,k]");
  if ((a + b + c) % 2 != 0) return 0;
  const long long lo = std::llabs(a - b);
  const long long hi = std::min(a + b, 2 * k - a - b);
  return (lo <= c && c <= hi) ? 1 : 0;
}

std::vector<double> quantum_dimensions(const Eigen::MatrixXcd& s) {
  const int n = static_cast<int>(s.rows());
  std::vector<double> q(n, 0.0);
  const double s00 = s(0, 0).real();
  if (s00 <= 0) throw std::invalid_argument("quantum_dimensions: vacuum entry not positive");
  for (int i = 0; i < n; ++i) {
    q[i] = s(0, i).real() / s00;
    if (q[i] < 1.0 - 1e-9)
      throw CheckFailure("quantum dimension below 1 at index " + std::to_string(i));
  }
  return q;
}

std::vector<double> quantum_dimensions(const ModularS& s) { return quantum_dimensions(s.entries); }

}  // namespace cosetmod
