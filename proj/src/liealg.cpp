#include "cosetmod/liealg.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>
#include <unordered_map>

#include "cosetmod/errors.hpp"

namespace cosetmod {

bool is_dominant(const Weight& w) {
  for (long long x : w)
    if (x < 0) return false;
  return true;
}

bool is_zero(const Weight& w) {
  for (long long x : w)
    if (x != 0) return false;
  return true;
}

std::string weight_str(const Weight& w) {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) os << ',';
    os << w[i];
  }
  os << ']';
  return os.str();
}

Weight weight_add(const Weight& a, const Weight& b) {
  Weight r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Weight weight_sub(const Weight& a, const Weight& b) {
  Weight r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

namespace {

struct SeriesData {
  std::vector<Weight> cartan;
  QVec d;
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::logic_error("root datum inconsistency: " + msg);
}

// Cartan matrix rows carry the Dynkin labels of the simple roots:
// cartan[i][j] = 2(alpha_i, alpha_j)/(alpha_j, alpha_j).
SeriesData series_data(const AlgebraSpec& s) {
  const int n = s.rank;
  auto chain = [&](void) {
    std::vector<Weight> c(n, Weight(n, 0));
    for (int i = 0; i < n; ++i) {
      c[i][i] = 2;
      if (i + 1 < n) { c[i][i + 1] = -1; c[i + 1][i] = -1; }
    }
    return c;
  };
  auto valid = [&](bool ok) {
    if (!ok)
      throw std::invalid_argument(std::string("invalid algebra: series ") + s.series +
                                  " rank " + std::to_string(s.rank));
  };
  SeriesData out;
  switch (s.series) {
    case 'A': {
      valid(n >= 1);
      out.cartan = chain();
      out.d = QVec(n, 1);
      break;
    }
    case 'B': {
      valid(n >= 2);
      out.cartan = chain();
      out.cartan[n - 2][n - 1] = -2;  // last node short
      out.d = QVec(n, 1);
      out.d[n - 1] = Rat(1, 2);
      break;
    }
    case 'C': {
      valid(n >= 2);
      out.cartan = chain();
      out.cartan[n - 1][n - 2] = -2;  // last node long
      out.d = QVec(n, Rat(1, 2));
      out.d[n - 1] = 1;
      break;
    }
    case 'D': {
      valid(n >= 3);
      out.cartan = chain();
      out.cartan[n - 2][n - 1] = 0;
      out.cartan[n - 1][n - 2] = 0;
      out.cartan[n - 3][n - 1] = -1;
      out.cartan[n - 1][n - 3] = -1;
      out.d = QVec(n, 1);
      break;
    }
    case 'E': {
      valid(n >= 6 && n <= 8);
      std::vector<Weight> c(n, Weight(n, 0));
      for (int i = 0; i < n; ++i) c[i][i] = 2;
      auto edge = [&](int a, int b) { c[a - 1][b - 1] = -1; c[b - 1][a - 1] = -1; };
      edge(1, 3); edge(3, 4); edge(2, 4);
      for (int v = 4; v < n; ++v) edge(v, v + 1);
      out.cartan = std::move(c);
      out.d = QVec(n, 1);
      break;
    }
    case 'F': {
      valid(n == 4);
      out.cartan = {{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}};
      out.d = {1, 1, Rat(1, 2), Rat(1, 2)};
      break;
    }
    case 'G': {
      valid(n == 2);
      out.cartan = {{2, -1}, {-3, 2}};  // node 1 short, node 2 long
      out.d = {Rat(1, 3), 1};
      break;
    }
    default:
      valid(false);
  }
  return out;
}

long long expected_pos_roots(const AlgebraSpec& s) {
  const long long n = s.rank;
  switch (s.series) {
    case 'A': return n * (n + 1) / 2;
    case 'B':
    case 'C': return n * n;
    case 'D': return n * (n - 1);
    case 'E': return n == 6 ? 36 : (n == 7 ? 63 : 120);
    case 'F': return 24;
    case 'G': return 6;
  }
  return -1;
}

long long expected_dual_coxeter(const AlgebraSpec& s) {
  const long long n = s.rank;
  switch (s.series) {
    case 'A': return n + 1;
    case 'B': return 2 * n - 1;
    case 'C': return n + 1;
    case 'D': return 2 * n - 2;
    case 'E': return n == 6 ? 12 : (n == 7 ? 18 : 30);
    case 'F': return 9;
    case 'G': return 4;
  }
  return -1;
}

uint64_t weight_key(const Weight& w) {
  uint64_t h = 1469598103934665603ULL;
  for (long long x : w) {
    h ^= static_cast<uint64_t>(x);
    h *= 1099511628211ULL;
  }
  return h;
}

struct WeightHash {
  size_t operator()(const Weight& w) const { return static_cast<size_t>(weight_key(w)); }
};

}  // namespace

RootDatum build_algebra(const AlgebraSpec& spec) {
  RootDatum g;
  g.spec = spec;
  const int n = spec.rank;
  SeriesData sd = series_data(spec);
  g.cartan = std::move(sd.cartan);
  g.half_norms = std::move(sd.d);

  // (alpha_i, alpha_j) = cartan[i][j] * d_j must be symmetric.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      require(to_rat(g.cartan[i][j]) * g.half_norms[j] == to_rat(g.cartan[j][i]) * g.half_norms[i],
              "symmetrized Cartan matrix");

  // Form on fundamental weights: F * C^T = diag(d).
  {
    QMat ct(n, QVec(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) ct[i][j] = to_rat(g.cartan[j][i]);
    g.inv_cartan_t = qmat_inverse(ct);
    g.form.assign(n, QVec(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g.form[i][j] = g.half_norms[i] * g.inv_cartan_t[i][j];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) require(g.form[i][j] == g.form[j][i], "form symmetry");
    g.form_scale = lcm_denominators(g.form);
    g.form_scaled.assign(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g.form_scaled[i][j] = rat_to_ll(g.form[i][j] * to_rat(g.form_scale));
    g.coord_scale = lcm_denominators(g.inv_cartan_t);
    g.inv_cartan_t_scaled.assign(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        g.inv_cartan_t_scaled[i][j] = rat_to_ll(g.inv_cartan_t[i][j] * to_rat(g.coord_scale));
  }

  // Reflection closure from the simple roots; track simple-root coordinates.
  {
    std::map<Weight, std::vector<long long>> roots;
    std::vector<Weight> todo;
    for (int i = 0; i < n; ++i) {
      std::vector<long long> e(n, 0);
      e[i] = 1;
      roots[g.cartan[i]] = e;
      todo.push_back(g.cartan[i]);
    }
    while (!todo.empty()) {
      Weight r = todo.back();
      todo.pop_back();
      const std::vector<long long> rc = roots.at(r);
      for (int i = 0; i < n; ++i) {
        if (r[i] == 0) continue;
        Weight img(r);
        const long long c = img[i];
        for (int m = 0; m < n; ++m) img[m] -= c * g.cartan[i][m];
        std::vector<long long> ic(rc);
        ic[i] -= c;
        if (roots.emplace(img, ic).second) todo.push_back(img);
      }
    }
    for (const auto& [labels, coords] : roots) {
      bool pos = true, neg = true;
      for (long long c : coords) {
        if (c > 0) neg = false;
        if (c < 0) pos = false;
      }
      require(pos != neg, "root with mixed-sign coordinates");
      if (!pos) continue;
      PosRoot pr;
      pr.labels = labels;
      pr.coords = coords;
      for (long long c : coords) pr.height += c;
      g.positive_roots.push_back(std::move(pr));
    }
    std::sort(g.positive_roots.begin(), g.positive_roots.end(),
              [](const PosRoot& a, const PosRoot& b) {
                if (a.height != b.height) return a.height < b.height;
                return a.labels < b.labels;
              });
  }
  require(static_cast<long long>(g.positive_roots.size()) == expected_pos_roots(spec),
          "positive root count");

  g.rho.assign(n, 1);
  g.theta = g.positive_roots.back().labels;
  g.marks = g.positive_roots.back().coords;
  require(is_dominant(g.theta), "highest root dominant");

  for (auto& pr : g.positive_roots) {
    Rat nsq = 0;
    for (int i = 0; i < n; ++i)
      if (pr.labels[i] != 0)
        for (int j = 0; j < n; ++j) nsq += to_rat(pr.labels[i]) * g.form[i][j] * to_rat(pr.labels[j]);
    pr.is_long = (nsq == 2);
  }
  require(g.positive_roots.back().is_long, "highest root normalized to squared length 2");

  g.comarks.assign(n, 0);
  for (int i = 0; i < n; ++i) g.comarks[i] = rat_to_ll(to_rat(g.marks[i]) * g.half_norms[i]);
  {
    Rat rt = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rt += to_rat(g.rho[i]) * g.form[i][j] * to_rat(g.theta[j]);
    g.dual_coxeter = rat_to_ll(rt + 1);
  }
  require(g.dual_coxeter == expected_dual_coxeter(spec), "dual Coxeter number");

  for (int i = 0; i < n; ++i)
    if (g.marks[i] == 1) g.J.push_back(i);
  g.coweight_reps.push_back(0);
  for (int i : g.J) g.coweight_reps.push_back(i + 1);

  // |P/Q| = |det Cartan|, cross-checked against |J| + 1.
  {
    std::vector<std::vector<long long>> rows;
    for (int i = 0; i < n; ++i) rows.push_back(std::vector<long long>(g.cartan[i].begin(), g.cartan[i].end()));
    g.center_order = lattice_index(rows, n);
    require(g.center_order == static_cast<long long>(g.J.size()) + 1, "|P/Q| = |J|+1");
  }
  {
    std::vector<std::vector<long long>> rows;
    for (const auto& pr : g.positive_roots)
      if (pr.is_long) rows.push_back(std::vector<long long>(pr.labels.begin(), pr.labels.end()));
    g.long_index = lattice_index(rows, n);
  }
  return g;
}

Rat inner_product(const RootDatum& g, const Weight& lam, const Weight& mu) {
  if (lam.size() != mu.size() || static_cast<int>(lam.size()) != g.rank())
    throw std::invalid_argument("inner_product: length mismatch");
  Rat acc = 0;
  for (int i = 0; i < g.rank(); ++i) {
    if (lam[i] == 0) continue;
    for (int j = 0; j < g.rank(); ++j) acc += to_rat(lam[i]) * g.form[i][j] * to_rat(mu[j]);
  }
  return acc;
}

long long ip_scaled(const RootDatum& g, const Weight& lam, const Weight& mu) {
  long long acc = 0;
  for (int i = 0; i < g.rank(); ++i) {
    if (lam[i] == 0) continue;
    long long row = 0;
    for (int j = 0; j < g.rank(); ++j) row += g.form_scaled[i][j] * mu[j];
    acc += lam[i] * row;
  }
  return acc;
}

QVec root_coords(const RootDatum& g, const Weight& w) {
  QVec v;
  v.reserve(w.size());
  for (long long x : w) v.push_back(to_rat(x));
  return qmat_apply(g.inv_cartan_t, v);
}

std::vector<long long> root_coords_scaled(const RootDatum& g, const Weight& w) {
  std::vector<long long> out(g.rank(), 0);
  for (int i = 0; i < g.rank(); ++i) {
    long long acc = 0;
    for (int j = 0; j < g.rank(); ++j) acc += g.inv_cartan_t_scaled[i][j] * w[j];
    out[i] = acc;
  }
  return out;
}

bool in_root_lattice(const RootDatum& g, const Weight& w) {
  const auto c = root_coords_scaled(g, w);
  for (long long x : c)
    if (x % g.coord_scale != 0) return false;
  return true;
}

void apply_simple_reflection(const RootDatum& g, Weight& w, int i) {
  const long long c = w[i];
  if (c == 0) return;
  for (int m = 0; m < g.rank(); ++m) w[m] -= c * g.cartan[i][m];
}

std::pair<Weight, int> to_dominant(const RootDatum& g, Weight w) {
  int sign = 1;
  for (long long guard = 0;; ++guard) {
    if (guard > 4'000'000) throw std::logic_error("to_dominant: no convergence");
    int neg = -1;
    for (int i = 0; i < g.rank(); ++i)
      if (w[i] < 0) { neg = i; break; }
    if (neg < 0) break;
    apply_simple_reflection(g, w, neg);
    sign = -sign;
  }
  for (long long x : w)
    if (x == 0) { sign = 0; break; }
  return {std::move(w), sign};
}

Weight dominant_of(const RootDatum& g, Weight w) {
  for (long long guard = 0;; ++guard) {
    if (guard > 4'000'000) throw std::logic_error("dominant_of: no convergence");
    int neg = -1;
    for (int i = 0; i < g.rank(); ++i)
      if (w[i] < 0) { neg = i; break; }
    if (neg < 0) break;
    apply_simple_reflection(g, w, neg);
  }
  return w;
}

long long weyl_dimension(const RootDatum& g, const Weight& lam) {
  if (!is_dominant(lam)) throw std::invalid_argument("weyl_dimension: non-dominant weight");
  const Weight lr = weight_add(lam, g.rho);
  mpz_class num = 1, den = 1;
  for (const auto& pr : g.positive_roots) {
    num *= to_mpz(ip_scaled(g, lr, pr.labels));
    den *= to_mpz(ip_scaled(g, g.rho, pr.labels));
  }
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  require(r == 0, "Weyl dimension divisibility");
  if (!q.fits_slong_p()) throw std::overflow_error("weyl_dimension: overflow");
  return q.get_si();
}

namespace {

// Dominant weights mu <= lam; the dominance order on dominants is
// connected through positive-root steps, so a BFS over dominants closes.
std::vector<Weight> dominant_weights_below(const RootDatum& g, const Weight& lam) {
  auto below = [&](const Weight& mu) {
    const auto c = root_coords_scaled(g, weight_sub(lam, mu));
    for (long long x : c)
      if (x < 0 || x % g.coord_scale != 0) return false;
    return true;
  };
  std::set<Weight> seen{lam};
  std::vector<Weight> todo{lam};
  while (!todo.empty()) {
    Weight mu = todo.back();
    todo.pop_back();
    for (const auto& pr : g.positive_roots) {
      Weight nu = weight_sub(mu, pr.labels);
      if (!is_dominant(nu) || seen.count(nu) || !below(nu)) continue;
      seen.insert(nu);
      todo.push_back(nu);
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

std::map<Weight, long long> weight_system(const RootDatum& g, const Weight& lam) {
  if (!is_dominant(lam)) throw std::invalid_argument("weight_system: non-dominant weight");
  std::vector<Weight> doms = dominant_weights_below(g, lam);
  // Freudenthal needs higher weights first: sort by depth below lam.
  auto depth = [&](const Weight& mu) {
    long long d = 0;
    for (long long x : root_coords_scaled(g, weight_sub(lam, mu))) d += x;
    return d / g.coord_scale;
  };
  std::sort(doms.begin(), doms.end(), [&](const Weight& a, const Weight& b) {
    const long long da = depth(a), db = depth(b);
    if (da != db) return da < db;
    return a < b;
  });

  std::unordered_map<Weight, long long, WeightHash> mult;
  mult.reserve(doms.size() * 2);
  const Weight lr = weight_add(lam, g.rho);
  const long long lr_sq = ip_scaled(g, lr, lr);
  std::map<Weight, long long> out;
  for (const auto& mu : doms) {
    if (mu == lam) {
      mult[mu] = 1;
      out[mu] = 1;
      continue;
    }
    long long num = 0;
    for (const auto& pr : g.positive_roots) {
      const long long step = ip_scaled(g, pr.labels, pr.labels);
      long long ip = ip_scaled(g, mu, pr.labels);
      Weight nu(mu);
      for (long long t = 1;; ++t) {
        nu = weight_add(nu, pr.labels);
        ip += step;  // <mu + t alpha, alpha> scaled
        const auto it = mult.find(dominant_of(g, nu));
        if (it == mult.end() || it->second == 0) break;  // root strings are unbroken
        num += it->second * ip;
      }
    }
    const Weight mr = weight_add(mu, g.rho);
    const long long den = lr_sq - ip_scaled(g, mr, mr);
    require(den > 0, "Freudenthal denominator positive");
    require((2 * num) % den == 0, "Freudenthal divisibility");
    const long long m = 2 * num / den;
    require(m > 0, "Freudenthal positivity");
    mult[mu] = m;
    out[mu] = m;
  }
  return out;
}

namespace {

// Packed-label fast path for orbit enumeration at rank <= 8.
bool packable(const Weight& w) {
  if (w.size() > 8) return false;
  for (long long x : w)
    if (x < -120 || x > 120) return false;
  return true;
}

uint64_t pack_weight(const Weight& w) {
  uint64_t k = 0;
  for (size_t i = 0; i < w.size(); ++i)
    k |= static_cast<uint64_t>(static_cast<uint8_t>(w[i] + 128)) << (8 * i);
  return k;
}

Weight unpack_weight(uint64_t k, int rank) {
  Weight w(rank, 0);
  for (int i = 0; i < rank; ++i)
    w[i] = static_cast<long long>(static_cast<uint8_t>(k >> (8 * i))) - 128;
  return w;
}

}  // namespace

std::vector<Weight> weyl_orbit(const RootDatum& g, const Weight& w) {
  const int n = g.rank();
  if (packable(w)) {
    std::unordered_set<uint64_t> seen;
    std::vector<uint64_t> todo{pack_weight(w)};
    seen.insert(todo[0]);
    seen.reserve(1 << 12);
    Weight v(n, 0), img(n, 0);
    while (!todo.empty()) {
      const uint64_t key = todo.back();
      todo.pop_back();
      v = unpack_weight(key, n);
      for (int i = 0; i < n; ++i) {
        if (v[i] == 0) continue;
        img = v;
        apply_simple_reflection(g, img, i);
        if (!packable(img)) throw std::overflow_error("weyl_orbit: label out of packed range");
        const uint64_t ik = pack_weight(img);
        if (seen.insert(ik).second) todo.push_back(ik);
      }
    }
    std::vector<Weight> out;
    out.reserve(seen.size());
    for (uint64_t k : seen) out.push_back(unpack_weight(k, n));
    std::sort(out.begin(), out.end());
    return out;
  }
  std::unordered_set<Weight, WeightHash> seen;
  std::vector<Weight> todo{w};
  seen.insert(w);
  while (!todo.empty()) {
    Weight v = todo.back();
    todo.pop_back();
    for (int i = 0; i < n; ++i) {
      if (v[i] == 0) continue;
      Weight img(v);
      apply_simple_reflection(g, img, i);
      if (seen.insert(img).second) todo.push_back(img);
    }
  }
  std::vector<Weight> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Weight, long long>> full_weight_list(const RootDatum& g, const Weight& lam) {
  std::vector<std::pair<Weight, long long>> out;
  for (const auto& [mu, m] : weight_system(g, lam)) {
    for (const auto& nu : weyl_orbit(g, mu)) out.emplace_back(nu, m);
  }
  return out;
}

std::vector<WeylElement> weyl_group_elements(const RootDatum& g) {
  if (g.rank() > 3)
    throw ScaleGuard("weyl_group_elements: group materialization restricted to rank <= 3");
  const int n = g.rank();
  WeylElement id;
  id.rows.assign(n, Weight(n, 0));
  for (int i = 0; i < n; ++i) id.rows[i][i] = 1;
  std::map<std::vector<Weight>, int> seen{{id.rows, 1}};
  std::vector<WeylElement> out{id}, todo{id};
  while (!todo.empty()) {
    WeylElement w = todo.back();
    todo.pop_back();
    for (int i = 0; i < n; ++i) {
      WeylElement img;
      img.sign = -w.sign;
      img.rows.reserve(n);
      for (int r = 0; r < n; ++r) {
        Weight row = w.rows[r];
        apply_simple_reflection(g, row, i);
        img.rows.push_back(std::move(row));
      }
      if (seen.emplace(img.rows, img.sign).second) {
        out.push_back(img);
        todo.push_back(img);
      }
    }
  }
  return out;
}

Weight weyl_apply(const WeylElement& w, const Weight& v) {
  const int n = static_cast<int>(v.size());
  Weight out(n, 0);
  for (int i = 0; i < n; ++i) {
    if (v[i] == 0) continue;
    for (int j = 0; j < n; ++j) out[j] += v[i] * w.rows[i][j];
  }
  return out;
}

}  // namespace cosetmod
