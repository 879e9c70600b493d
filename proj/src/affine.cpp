#include "cosetmod/affine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cosetmod/errors.hpp"

namespace cosetmod {

LevelSpec make_level(const RootDatum& datum, long long level) {
  if (level < 1) throw std::invalid_argument("level must be a positive integer");
  return LevelSpec{datum, level};
}

int WeightListing::index_of(const Weight& w) const {
  auto it = index.find(w);
  if (it == index.end()) throw std::invalid_argument("weight not at this level: " + weight_str(w));
  return it->second;
}

long long weight_level(const RootDatum& g, const Weight& w) {
  long long lv = 0;
  for (int i = 0; i < g.rank(); ++i) lv += g.comarks[i] * w[i];
  return lv;
}

WeightListing enumerate_level_weights(const LevelSpec& spec) {
  const RootDatum& g = spec.datum;
  WeightListing out;
  out.algebra = g.spec;
  out.level = spec.level;
  Weight cur(g.rank(), 0);
  // Depth-first over labels within the comark level budget.
  auto rec = [&](auto&& self, int i, long long budget) -> void {
    if (i == g.rank()) {
      out.weights.push_back(cur);
      return;
    }
    for (long long v = 0; v * g.comarks[i] <= budget; ++v) {
      cur[i] = v;
      self(self, i + 1, budget - v * g.comarks[i]);
    }
    cur[i] = 0;
  };
  rec(rec, 0, spec.level);
  std::stable_sort(out.weights.begin(), out.weights.end(), [&](const Weight& a, const Weight& b) {
    const long long la = weight_level(g, a), lb = weight_level(g, b);
    if (la != lb) return la < lb;
    return a < b;
  });
  for (int i = 0; i < out.size(); ++i) out.index[out.weights[i]] = i;
  return out;
}

Rat conformal_weight(const LevelSpec& spec, const Weight& lam) {
  const RootDatum& g = spec.datum;
  if (!is_dominant(lam) || weight_level(g, lam) > spec.level)
    throw std::invalid_argument("conformal_weight: weight not at this level: " + weight_str(lam));
  Weight shifted(lam);
  for (auto& x : shifted) x += 2;  // lam + 2 rho has labels lam_i + 2
  return inner_product(g, lam, shifted) / (2 * to_rat(spec.level + g.dual_coxeter));
}

Rat central_charge(const LevelSpec& spec) {
  const RootDatum& g = spec.datum;
  return to_rat(spec.level * g.dim(), spec.level + g.dual_coxeter);
}

std::vector<double> s_row_vacuum(const LevelSpec& spec, const WeightListing& listing) {
  const RootDatum& g = spec.datum;
  const long long m = spec.level + g.dual_coxeter;
  const double denom = static_cast<double>(g.form_scale) * static_cast<double>(m);
  const double pref =
      1.0 / (std::sqrt(static_cast<double>(g.long_index)) *
             std::pow(static_cast<double>(m), static_cast<double>(g.rank()) / 2.0));
  std::vector<double> row;
  row.reserve(listing.size());
  for (const auto& lam : listing.weights) {
    const Weight lr = weight_add(lam, g.rho);
    double prod = pref;
    for (const auto& pr : g.positive_roots)
      prod *= 2.0 * std::sin(std::numbers::pi * static_cast<double>(ip_scaled(g, lr, pr.labels)) / denom);
    row.push_back(prod);
  }
  return row;
}

std::vector<double> s_row_vacuum(const LevelSpec& spec) {
  return s_row_vacuum(spec, enumerate_level_weights(spec));
}

namespace {

struct RepData {
  // Flattened weight list of one irreducible: labels concatenated, with
  // parallel multiplicities. Iteration order is fixed.
  std::vector<long long> labels;
  std::vector<long long> mult;
  int count = 0;
};

RepData rep_data(const RootDatum& g, const Weight& lam) {
  RepData rd;
  const auto list = full_weight_list(g, lam);
  rd.count = static_cast<int>(list.size());
  rd.labels.reserve(list.size() * g.rank());
  rd.mult.reserve(list.size());
  for (const auto& [w, m] : list) {
    rd.labels.insert(rd.labels.end(), w.begin(), w.end());
    rd.mult.push_back(m);
  }
  return rd;
}

ModularS assemble_s_matrix(const LevelSpec& spec, bool parallel) {
  const RootDatum& g = spec.datum;
  ModularS out;
  out.listing = enumerate_level_weights(spec);
  const int n = out.listing.size();
  const int rank = g.rank();
  const long long m = spec.level + g.dual_coxeter;
  const long long mprime = g.form_scale * m;

  std::vector<std::complex<double>> tab(mprime);
  for (long long r = 0; r < mprime; ++r) {
    const double a = -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(mprime);
    tab[r] = {std::cos(a), std::sin(a)};
  }

  std::vector<RepData> reps(n);
  for (int i = 0; i < n; ++i) reps[i] = rep_data(g, out.listing.weights[i]);

  // Column phase vectors: y_j = scaled_form * (Lambda_j + rho).
  std::vector<std::vector<long long>> ycol(n, std::vector<long long>(rank, 0));
  for (int j = 0; j < n; ++j) {
    const Weight lr = weight_add(out.listing.weights[j], g.rho);
    for (int a = 0; a < rank; ++a) {
      long long acc = 0;
      for (int b = 0; b < rank; ++b) acc += g.form_scaled[a][b] * lr[b];
      ycol[j][a] = acc;
    }
  }
  const std::vector<double> row0 = s_row_vacuum(spec, out.listing);

  out.entries.resize(n, n);
  auto entry = [&](int i, int j) {
    const RepData& rd = reps[i];
    const long long* y = ycol[j].data();
    std::complex<double> acc(0.0, 0.0);
    const long long* lab = rd.labels.data();
    for (int t = 0; t < rd.count; ++t, lab += rank) {
      long long dot = 0;
      for (int a = 0; a < rank; ++a) dot += lab[a] * y[a];
      dot %= mprime;
      if (dot < 0) dot += mprime;
      acc += static_cast<double>(rd.mult[t]) * tab[dot];
    }
    return row0[j] * acc;
  };

  const long long total = static_cast<long long>(n) * n;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long long e = 0; e < total; ++e) {
    const int i = static_cast<int>(e / n);
    const int j = static_cast<int>(e % n);
    out.entries(i, j) = entry(i, j);
  }
  validate_modular(out, spec);
  return out;
}

}  // namespace

ModularS s_matrix(const LevelSpec& spec) { return assemble_s_matrix(spec, true); }

ModularS s_matrix_serial(const LevelSpec& spec) { return assemble_s_matrix(spec, false); }

void validate_modular(const ModularS& s, const LevelSpec& spec, const ModularTolerances& tol) {
  const int n = s.listing.size();
  const Eigen::MatrixXcd& S = s.entries;
  double sym = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) sym = std::max(sym, std::abs(S(i, j) - S(j, i)));
  if (sym >= tol.structural)
    throw CheckFailure("S-matrix symmetry violated: max deviation " + std::to_string(sym));
  const Eigen::MatrixXcd G = S * S.adjoint();
  double uni = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      uni = std::max(uni, std::abs(G(i, j) - (i == j ? 1.0 : 0.0)));
  if (uni >= tol.structural)
    throw CheckFailure("S-matrix unitarity violated: max deviation " + std::to_string(uni));
  for (int j = 0; j < n; ++j) {
    if (std::abs(S(0, j).imag()) >= tol.vacuum_row || S(0, j).real() <= 0)
      throw CheckFailure("vacuum row not strictly positive real at index " + std::to_string(j));
  }
  const auto row0 = s_row_vacuum(spec, s.listing);
  for (int j = 0; j < n; ++j)
    if (std::abs(S(0, j).real() - row0[j]) >= tol.vacuum_row)
      throw CheckFailure("vacuum row disagrees with the product formula at index " +
                         std::to_string(j));
}

std::vector<std::pair<std::string, double>> congruence_class_sums(const LevelSpec& spec) {
  const RootDatum& g = spec.datum;
  const auto listing = enumerate_level_weights(spec);
  const auto row0 = s_row_vacuum(spec, listing);
  std::map<std::string, double> sums;
  for (int i = 0; i < listing.size(); ++i) {
    const QVec c = root_coords(g, listing.weights[i]);
    std::ostringstream key;
    for (int a = 0; a < g.rank(); ++a) {
      Rat fr = c[a] - Rat(mpz_class(c[a].get_num() / c[a].get_den()));  // toward zero
      if (fr < 0) fr += 1;
      fr.canonicalize();
      if (a) key << ',';
      key << rat_str(fr);
    }
    sums[key.str()] += row0[i] * row0[i];
  }
  return {sums.begin(), sums.end()};
}

namespace {

// Affine Dynkin diagram automorphism attached to a comark-one node,
// as a permutation of nodes 0..rank (0 = affine node).
std::vector<int> node_permutation(const AlgebraSpec& s, int node /*1-based*/) {
  const int n = s.rank;
  std::vector<int> sigma(n + 1);
  for (int j = 0; j <= n; ++j) sigma[j] = j;
  switch (s.series) {
    case 'A':
      for (int j = 0; j <= n; ++j) sigma[j] = (j + node) % (n + 1);
      break;
    case 'B':
      std::swap(sigma[0], sigma[1]);
      break;
    case 'C':
      for (int j = 0; j <= n; ++j) sigma[j] = n - j;
      break;
    case 'D': {
      auto swap01 = [&](std::vector<int>& p) {
        std::swap(p[0], p[1]);
        std::swap(p[n - 1], p[n]);
      };
      if (node == 1) {
        swap01(sigma);
      } else if (n % 2 == 0) {
        for (int j = 0; j <= n; ++j) sigma[j] = n - j;  // spinor flip
        if (node == n - 1) {
          std::vector<int> s1(n + 1);
          for (int j = 0; j <= n; ++j) s1[j] = j;
          swap01(s1);
          for (int j = 0; j <= n; ++j) sigma[j] = s1[sigma[j]];
        }
      } else {
        // Order-four rotation: 0 -> n -> 1 -> n-1 -> 0, middle reversed.
        std::vector<int> rho(n + 1);
        for (int j = 2; j <= n - 2; ++j) rho[j] = n - j;
        rho[0] = n; rho[n] = 1; rho[1] = n - 1; rho[n - 1] = 0;
        if (node == n) {
          sigma = rho;
        } else {
          for (int j = 0; j <= n; ++j) sigma[rho[j]] = j;  // inverse
        }
      }
      break;
    }
    case 'E': {
      if (n == 6) {
        std::vector<int> rho(n + 1);
        rho[0] = 1; rho[1] = 6; rho[6] = 0;
        rho[2] = 3; rho[3] = 5; rho[5] = 2;
        rho[4] = 4;
        if (node == 1) {
          sigma = rho;
        } else {
          for (int j = 0; j <= n; ++j) sigma[rho[j]] = j;
        }
      } else if (n == 7) {
        std::swap(sigma[0], sigma[7]);
        std::swap(sigma[1], sigma[6]);
        std::swap(sigma[3], sigma[5]);
      }
      break;
    }
    default:
      break;
  }
  return sigma;
}

}  // namespace

SimpleCurrentTable simple_current_action(const LevelSpec& spec, const WeightListing& listing) {
  const RootDatum& g = spec.datum;
  const long long k = spec.level;
  SimpleCurrentTable out;
  out.algebra = g.spec;
  out.level = k;
  out.classes = g.coweight_reps;
  const int n = listing.size();
  std::vector<int> ident(n);
  for (int i = 0; i < n; ++i) ident[i] = i;
  out.perms.push_back(ident);
  for (int node : g.J) {
    const auto sigma = node_permutation(g.spec, node + 1);
    std::vector<int> perm(n, -1);
    for (int i = 0; i < n; ++i) {
      const Weight& w = listing.weights[i];
      std::vector<long long> aff(g.rank() + 1, 0);
      aff[0] = k - weight_level(g, w);
      for (int a = 0; a < g.rank(); ++a) aff[a + 1] = w[a];
      std::vector<long long> img(g.rank() + 1, 0);
      for (int j = 0; j <= g.rank(); ++j) img[sigma[j]] = aff[j];
      Weight iw(img.begin() + 1, img.end());
      if (!is_dominant(iw) || img[0] != k - weight_level(g, iw))
        throw std::logic_error("simple current action left the level set");
      perm[i] = listing.index_of(iw);
    }
    // Bijection and vacuum image kLambda_node.
    std::vector<char> hit(n, 0);
    for (int p : perm) {
      if (p < 0 || hit[p]) throw std::logic_error("simple current action not a permutation");
      hit[p] = 1;
    }
    Weight vac_img(g.rank(), 0);
    vac_img[node] = k;
    if (perm[listing.index_of(Weight(g.rank(), 0))] != listing.index_of(vac_img))
      throw std::logic_error("simple current vacuum image mismatch");
    out.perms.push_back(std::move(perm));
  }
  return out;
}

SimpleCurrentTable simple_current_action(const LevelSpec& spec) {
  return simple_current_action(spec, enumerate_level_weights(spec));
}

}  // namespace cosetmod
