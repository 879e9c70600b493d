#include "cosetmod/rational.hpp"

#include <stdexcept>

namespace cosetmod {

std::string rat_str(const Rat& r) {
  Rat c(r);
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

QMat qmat_identity(int n) {
  QMat m(n, QVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

QMat qmat_inverse(const QMat& in) {
  const int n = static_cast<int>(in.size());
  QMat a(in);
  QMat inv = qmat_identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (a[r][col] != 0) { pivot = r; break; }
    }
    if (pivot < 0) throw std::invalid_argument("qmat_inverse: singular matrix");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Rat p = a[col][col];
    for (int j = 0; j < n; ++j) { a[col][j] /= p; inv[col][j] /= p; }
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rat f = a[r][col];
      for (int j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

QVec qmat_apply(const QMat& m, const QVec& v) {
  QVec out(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

long long lcm_denominators(const QMat& m) {
  mpz_class l = 1;
  for (const auto& row : m)
    for (const auto& x : row) {
      mpz_class d = x.get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
  if (!l.fits_slong_p()) throw std::overflow_error("lcm_denominators: overflow");
  return l.get_si();
}

namespace {

// Row-style Hermite reduction with exact integers; returns the reduced
// matrix whose first `rank` rows are a triangular lattice basis.
std::vector<std::vector<mpz_class>> hermite_reduce(const std::vector<std::vector<long long>>& rows,
                                                   int rank) {
  std::vector<std::vector<mpz_class>> m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<mpz_class> z;
    z.reserve(r.size());
    for (long long x : r) z.push_back(to_mpz(x));
    m.push_back(std::move(z));
  }
  int top = 0;
  for (int col = 0; col < rank; ++col) {
    // Euclid over all rows below `top` to leave a single nonzero pivot.
    while (true) {
      int nz = -1, cnt = 0;
      for (size_t r = top; r < m.size(); ++r) {
        if (m[r][col] != 0) { ++cnt; if (nz < 0) nz = static_cast<int>(r); }
      }
      if (cnt == 0) break;
      if (cnt == 1) {
        std::swap(m[top], m[nz]);
        break;
      }
      // Reduce the row with larger |entry| by the smaller one.
      int a = -1, b = -1;
      for (size_t r = top; r < m.size(); ++r) {
        if (m[r][col] == 0) continue;
        if (a < 0 || abs(m[r][col]) < abs(m[a][col])) a = static_cast<int>(r);
      }
      for (size_t r = top; r < m.size(); ++r) {
        if (static_cast<int>(r) == a || m[r][col] == 0) continue;
        b = static_cast<int>(r);
        mpz_class q = m[b][col] / m[a][col];
        for (int j = 0; j < rank; ++j) m[b][j] -= q * m[a][j];
      }
    }
    if (static_cast<size_t>(top) >= m.size() || m[top][col] == 0)
      throw std::invalid_argument("lattice_index: generators do not span full rank");
    ++top;
    if (top == rank) break;
  }
  if (top < rank) throw std::invalid_argument("lattice_index: generators do not span full rank");
  return m;
}

}  // namespace

long long lattice_index(std::vector<std::vector<long long>> rows, int rank) {
  const auto m = hermite_reduce(rows, rank);
  mpz_class det = 1;
  // The pivot of reduced row i sits in column i.
  for (int i = 0; i < rank; ++i) det *= abs(m[i][i]);
  if (!det.fits_slong_p()) throw std::overflow_error("lattice_index: overflow");
  return det.get_si();
}

std::vector<std::vector<long long>> lattice_basis(std::vector<std::vector<long long>> rows,
                                                  int rank) {
  const auto m = hermite_reduce(rows, rank);
  std::vector<std::vector<long long>> out(rank, std::vector<long long>(rank, 0));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      if (!m[i][j].fits_slong_p()) throw std::overflow_error("lattice_basis: overflow");
      out[i][j] = m[i][j].get_si();
    }
  return out;
}

long long rat_to_ll(const Rat& r) {
  Rat c(r);
  c.canonicalize();
  if (c.get_den() != 1) throw std::invalid_argument("rat_to_ll: not an integer: " + rat_str(r));
  if (!c.get_num().fits_slong_p()) throw std::overflow_error("rat_to_ll: overflow");
  return c.get_num().get_si();
}

}  // namespace cosetmod
