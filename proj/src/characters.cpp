#include "cosetmod/characters.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cosetmod/errors.hpp"

namespace cosetmod {

std::map<Weight, long long> FormalCharacter::dominant_layer(int n) const {
  std::map<Weight, long long> out;
  for (const auto& [w, c] : layers[n])
    if (is_dominant(w)) out[w] = c;
  return out;
}

long long FormalCharacter::layer_dim(int n) const {
  long long acc = 0;
  for (const auto& [w, c] : layers[n]) acc += c;
  return acc;
}

namespace {

using WPoly = std::map<Weight, long long>;

void check_rank_guard(const RootDatum& g) {
  if (g.rank() > 3)
    throw ScaleGuard("character expansion restricted to rank <= 3 (affine Weyl truncation "
                     "grows exponentially with rank)");
}

// Basis vectors of the long-root sublattice, as label vectors.
std::vector<Weight> long_root_basis(const RootDatum& g) {
  std::vector<std::vector<long long>> rows;
  for (const auto& pr : g.positive_roots)
    if (pr.is_long) rows.push_back(std::vector<long long>(pr.labels.begin(), pr.labels.end()));
  const auto basis = lattice_basis(rows, g.rank());
  std::vector<Weight> out;
  for (const auto& b : basis) out.push_back(Weight(b.begin(), b.end()));
  return out;
}

// Integer relative height of mu below ref (both in ref + Q).
long long rel_height(const RootDatum& g, const Weight& ref, const Weight& mu) {
  const auto c = root_coords_scaled(g, weight_sub(ref, mu));
  long long acc = 0;
  for (long long x : c) acc += x;
  if (acc % g.coord_scale != 0)
    throw std::logic_error("rel_height: weight outside the reference coset");
  return acc / g.coord_scale;
}

// Shared expansion data per algebra and truncation order.
struct CharContext {
  const RootDatum& g;
  int order;
  std::vector<WeylElement> weyl;
  WPoly weyl_denominator;          // product over positive roots of (1 - e^{-alpha})
  std::vector<WPoly> denom;        // full affine denominator by grade
  std::vector<Weight> long_basis;  // translations lattice
  QMat gram;                       // <b_i, b_j>

  CharContext(const RootDatum& datum, int n) : g(datum), order(n) {
    check_rank_guard(g);
    if (n < 0) throw std::invalid_argument("character order must be nonnegative");
    weyl = weyl_group_elements(g);
    weyl_denominator[Weight(g.rank(), 0)] = 1;
    for (const auto& pr : g.positive_roots) {
      WPoly next;
      for (const auto& [w, c] : weyl_denominator) {
        next[w] += c;
        next[weight_sub(w, pr.labels)] -= c;
      }
      std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
      weyl_denominator = std::move(next);
    }
    denom.assign(order + 1, {});
    denom[0] = weyl_denominator;
    // Multiply in the grade-positive factors (1 - q^n)^rank and
    // (1 - q^n e^{-alpha}) over all roots alpha, truncating at `order`.
    auto mul_factor = [&](int grade_step, const Weight& shift) {
      for (int t = order; t >= grade_step; --t) {
        for (const auto& [w, c] : denom[t - grade_step]) {
          auto& slot = denom[t][weight_sub(w, shift)];
          slot -= c;
          if (slot == 0) denom[t].erase(weight_sub(w, shift));
        }
      }
    };
    const Weight zero(g.rank(), 0);
    for (int n2 = 1; n2 <= order; ++n2) {
      for (int r = 0; r < g.rank(); ++r) mul_factor(n2, zero);
      for (const auto& pr : g.positive_roots) {
        mul_factor(n2, pr.labels);
        Weight neg(pr.labels);
        for (auto& x : neg) x = -x;
        mul_factor(n2, neg);
      }
    }
    long_basis = long_root_basis(g);
    const int r = g.rank();
    gram.assign(r, QVec(r, 0));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) gram[i][j] = inner_product(g, long_basis[i], long_basis[j]);
  }
};

// Enumerate lattice coefficient vectors c with Q(c) = v.c + c^T A c <= bound,
// A positive definite rational (Fincke-Pohst with exact final filter).
std::vector<std::vector<long long>> enumerate_quadratic(const QMat& a, const QVec& v, const Rat& bound) {
  const int r = static_cast<int>(a.size());
  // u = A^{-1} v / 2, R = bound + u^T A u; enumerate x = c + u with x^T A x <= R.
  QMat ainv = qmat_inverse(a);
  QVec u(r, 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) u[i] += ainv[i][j] * v[j] / 2;
  Rat radius = bound;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) radius += u[i] * a[i][j] * u[j];
  if (radius < 0) return {};
  // LDL^T with unit upper triangular factor: x^T A x = sum_i d_i (x_i + sum_{j>i} U_ij x_j)^2.
  QMat m(a);
  QMat umat = qmat_identity(r);
  QVec d(r, 0);
  for (int i = 0; i < r; ++i) {
    d[i] = m[i][i];
    if (d[i] <= 0) throw std::logic_error("enumerate_quadratic: form not positive definite");
    for (int j = i + 1; j < r; ++j) umat[i][j] = m[i][j] / d[i];
    for (int j = i + 1; j < r; ++j)
      for (int k2 = i + 1; k2 < r; ++k2) m[j][k2] -= m[i][j] * m[i][k2] / d[i];
  }
  std::vector<std::vector<long long>> out;
  std::vector<long long> c(r, 0);
  auto rec = [&](auto&& self, int i, const Rat& budget) -> void {
    if (i < 0) {
      out.push_back(c);
      return;
    }
    // x_i + t where t = sum_{j>i} U_ij x_j, x_j = c_j + u_j.
    Rat t = u[i];
    for (int j = i + 1; j < r; ++j) t += umat[i][j] * (to_rat(c[j]) + u[j]);
    const double s = std::sqrt(std::max(0.0, budget.get_d() / d[i].get_d()));
    const double center = -t.get_d();
    const long long lo = static_cast<long long>(std::floor(center - s)) - 1;
    const long long hi = static_cast<long long>(std::ceil(center + s)) + 1;
    for (long long ci = lo; ci <= hi; ++ci) {
      const Rat y = to_rat(ci) + t;
      const Rat term = d[i] * y * y;
      if (term > budget) continue;
      c[i] = ci;
      self(self, i - 1, budget - term);
    }
    c[i] = 0;
  };
  rec(rec, r - 1, radius);
  std::sort(out.begin(), out.end());
  return out;
}

// Divide a weight polynomial by the Weyl denominator; exact, with the
// quotient supported on the layer weights. `ref` anchors the height order.
WPoly divide_by_weyl_denominator(const CharContext& ctx, const Weight& ref, const WPoly& rhs) {
  using Key = std::pair<long long, Weight>;
  std::map<Key, long long> work;
  for (const auto& [w, c] : rhs)
    if (c != 0) work[{rel_height(ctx.g, ref, w), w}] = c;
  WPoly quot;
  long long guard = 0;
  while (!work.empty()) {
    if (++guard > 20'000'000) throw CheckFailure("character division does not terminate");
    auto it = work.begin();  // smallest relative height = highest weight
    const long long c = it->second;
    if (c == 0) { work.erase(it); continue; }
    const Weight top = it->first.second;
    quot[top] += c;
    // Subtract c e^{top} * denominator; its leading term cancels `top`.
    for (const auto& [dw, dc] : ctx.weyl_denominator) {
      const Weight w2 = weight_add(top, dw);
      const Key k2{rel_height(ctx.g, ref, w2), w2};
      auto& slot = work[k2];
      slot -= c * dc;
      if (slot == 0) work.erase(k2);
    }
  }
  std::erase_if(quot, [](const auto& kv) { return kv.second == 0; });
  return quot;
}

FormalCharacter expand_character(const CharContext& ctx, const LevelSpec& spec, const Weight& lam) {
  const RootDatum& g = ctx.g;
  const long long m = spec.level + g.dual_coxeter;
  const Weight top = weight_add(lam, g.rho);

  // Numerator: for each translation beta in the long-root lattice with
  // grade <= order, all finite Weyl images of top + m*beta.
  const int r = g.rank();
  QMat a(r, QVec(r, 0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) a[i][j] = to_rat(m) * ctx.gram[i][j] / 2;
  QVec v(r, 0);
  for (int i = 0; i < r; ++i) v[i] = inner_product(g, top, ctx.long_basis[i]);
  std::vector<WPoly> numer(ctx.order + 1);
  for (const auto& c : enumerate_quadratic(a, v, to_rat(ctx.order))) {
    Weight beta(r, 0);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) beta[j] += c[i] * ctx.long_basis[i][j];
    Rat grade_r = inner_product(g, top, beta) + to_rat(m) * inner_product(g, beta, beta) / 2;
    const long long grade = rat_to_ll(grade_r);
    if (grade < 0 || grade > ctx.order)
      throw std::logic_error("translation grade outside truncation window");
    Weight shifted(top);
    for (int j = 0; j < r; ++j) shifted[j] += m * beta[j];
    for (const auto& w : ctx.weyl) {
      const Weight img = weight_sub(weyl_apply(w, shifted), g.rho);
      numer[grade][img] += w.sign;
    }
  }

  // Solve ch * denom = numer grade by grade.
  FormalCharacter ch;
  ch.order = ctx.order;
  ch.layers.assign(ctx.order + 1, {});
  for (int n = 0; n <= ctx.order; ++n) {
    WPoly rhs = numer[n];
    for (int j = 1; j <= n; ++j) {
      if (ctx.denom[j].empty()) continue;
      for (const auto& [w1, c1] : ch.layers[n - j])
        for (const auto& [w2, c2] : ctx.denom[j]) {
          auto& slot = rhs[weight_add(w1, w2)];
          slot -= c1 * c2;
          if (slot == 0) rhs.erase(weight_add(w1, w2));
        }
    }
    ch.layers[n] = divide_by_weyl_denominator(ctx, lam, rhs);
    for (const auto& [w, c] : ch.layers[n])
      if (c < 0)
        throw CheckFailure("negative graded multiplicity at grade " + std::to_string(n) +
                           " weight " + weight_str(w));
  }
  return ch;
}

}  // namespace

AffineCharacter affine_character(const LevelSpec& spec, const Weight& lam, int order) {
  const RootDatum& g = spec.datum;
  check_rank_guard(g);
  if (!is_dominant(lam) || weight_level(g, lam) > spec.level)
    throw std::invalid_argument("affine_character: weight not at this level");
  CharContext ctx(g, order);
  AffineCharacter out;
  out.character = expand_character(ctx, spec, lam);
  out.q.order = order;
  out.q.offset = conformal_weight(spec, lam) - central_charge(spec) / 24;
  out.q.coeffs.resize(order + 1);
  for (int n = 0; n <= order; ++n) out.q.coeffs[n] = out.character.layer_dim(n);
  return out;
}

namespace {

struct BranchingInternal {
  WeightListing listing_kl;
  std::vector<std::vector<long long>> bcoeff;  // per listing index, grades 0..N
  std::vector<FormalCharacter> chars_kl;       // per listing index
  std::vector<std::map<Weight, long long>> tensor;  // product character by grade
};

BranchingInternal branch_internal(const LevelSpec& spec_k, const Weight& dot,
                                  const LevelSpec& spec_l, const Weight& ddot, int order) {
  if (!(spec_k.datum.spec == spec_l.datum.spec))
    throw std::invalid_argument("branching: factors must share the algebra");
  const RootDatum& g = spec_k.datum;
  check_rank_guard(g);
  CharContext ctx(g, order);
  const FormalCharacter ch1 = expand_character(ctx, spec_k, dot);
  const FormalCharacter ch2 = expand_character(ctx, spec_l, ddot);

  BranchingInternal out;
  const long long kl = spec_k.level + spec_l.level;
  const LevelSpec spec_kl = make_level(g, kl);
  out.listing_kl = enumerate_level_weights(spec_kl);
  out.bcoeff.assign(out.listing_kl.size(), std::vector<long long>(order + 1, 0));
  out.chars_kl.resize(out.listing_kl.size());

  out.tensor.assign(order + 1, {});
  for (int n = 0; n <= order; ++n)
    for (int a2 = 0; a2 <= n; ++a2)
      for (const auto& [w1, c1] : ch1.layers[a2])
        for (const auto& [w2, c2] : ch2.layers[n - a2]) out.tensor[n][weight_add(w1, w2)] += c1 * c2;

  // Peel level-(k+l) primaries grade by grade, highest weights first.
  const Weight ref = weight_add(dot, ddot);
  std::vector<std::map<Weight, long long>> residual = out.tensor;
  std::vector<char> have_char(out.listing_kl.size(), 0);
  for (int n = 0; n <= order; ++n) {
    while (true) {
      long long best_h = 0;
      const Weight* best = nullptr;
      long long best_c = 0;
      for (const auto& [w, c] : residual[n]) {
        if (c == 0) continue;
        const long long h = rel_height(g, ref, w);
        if (best == nullptr || h < best_h || (h == best_h && w < *best)) {
          best = &w;
          best_h = h;
          best_c = c;
        }
      }
      if (best == nullptr) break;
      const Weight mu = *best;
      if (best_c < 0)
        throw CheckFailure("branching: negative leftover multiplicity at grade " +
                           std::to_string(n) + " weight " + weight_str(mu));
      if (!is_dominant(mu) || weight_level(g, mu) > kl)
        throw CheckFailure("branching: residual top weight is not a level-bounded primary: " +
                           weight_str(mu));
      const int idx = out.listing_kl.index_of(mu);
      if (!have_char[idx]) {
        out.chars_kl[idx] = expand_character(ctx, spec_kl, mu);
        have_char[idx] = 1;
      }
      out.bcoeff[idx][n] += best_c;
      for (int j = 0; n + j <= order; ++j)
        for (const auto& [w, c] : out.chars_kl[idx].layers[j]) {
          auto& slot = residual[n + j][w];
          slot -= best_c * c;
          if (slot == 0) residual[n + j].erase(w);
        }
    }
  }
  // Characters for indices that never occurred are left empty.
  return out;
}

}  // namespace

BranchingResult branching(const LevelSpec& spec_k, const Weight& dot, const LevelSpec& spec_l,
                          const Weight& ddot, int order) {
  auto data = branch_internal(spec_k, dot, spec_l, ddot, order);
  const RootDatum& g = spec_k.datum;
  const LevelSpec spec_kl = make_level(g, spec_k.level + spec_l.level);
  BranchingResult out;
  out.listing_kl = data.listing_kl;
  out.coset_central_charge =
      central_charge(spec_k) + central_charge(spec_l) - central_charge(spec_kl);
  const Rat hsum = conformal_weight(spec_k, dot) + conformal_weight(spec_l, ddot);
  out.series.resize(out.listing_kl.size());
  out.conformal_weights.assign(out.listing_kl.size(), Rat(0));
  for (int i = 0; i < out.listing_kl.size(); ++i) {
    QSeries s;
    s.order = order;
    const auto& bc = data.bcoeff[i];
    int first = -1;
    for (int n = 0; n <= order; ++n)
      if (bc[n] != 0) { first = n; break; }
    if (first >= 0) {
      const Rat h = hsum - conformal_weight(spec_kl, out.listing_kl.weights[i]) + to_rat(first);
      s.offset = h - out.coset_central_charge / 24;
      s.coeffs.assign(bc.begin() + first, bc.end());
      out.conformal_weights[i] = h;
    }
    out.series[i] = std::move(s);
  }
  return out;
}

VerifyResult verify_decomposition(const LevelSpec& spec_k, const Weight& dot,
                                  const LevelSpec& spec_l, const Weight& ddot, int order) {
  auto data = branch_internal(spec_k, dot, spec_l, ddot, order);
  VerifyResult res;
  for (int n = 0; n <= order; ++n) {
    std::map<Weight, long long> rebuilt;
    for (int i = 0; i < data.listing_kl.size(); ++i) {
      const auto& bc = data.bcoeff[i];
      for (int j = 0; j <= n; ++j) {
        if (bc[j] == 0) continue;
        for (const auto& [w, c] : data.chars_kl[i].layers[n - j]) rebuilt[w] += bc[j] * c;
      }
    }
    std::erase_if(rebuilt, [](const auto& kv) { return kv.second == 0; });
    std::map<Weight, long long> expect = data.tensor[n];
    std::erase_if(expect, [](const auto& kv) { return kv.second == 0; });
    if (rebuilt != expect) {
      res.ok = false;
      res.grade = n;
      for (const auto& [w, c] : expect) {
        auto it = rebuilt.find(w);
        if (it == rebuilt.end() || it->second != c) { res.where = w; break; }
      }
      return res;
    }
  }
  return res;
}

}  // namespace cosetmod
