#pragma once

// Border-rank lower-bound certificates: flattening, Strassen commutator,
// Koszul flattening, and Strassen's minimal-border-rank equations. Every
// certificate embeds the tensor and enough witness data to be re-verified
// from scratch by verify_certificate.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brank/errors.hpp"
#include "brank/json_io.hpp"
#include "brank/matrix.hpp"
#include "brank/prng.hpp"
#include "brank/tensor.hpp"
#include "brank/version.hpp"
#include "brank/wedge.hpp"

namespace brank {

struct BoundCertificate {
  std::string method;  // "flattening" | "strassen_commutator" | "koszul"
  int bound = 0;
  std::string hash;  // digest of the input tensor's canonical JSON
  Json witness = Json::object();
  std::optional<std::uint64_t> seed;
  bool verified = false;
  Tensor3 tensor;  // embedded so certificates re-verify standalone
};

inline Json certificate_to_json(const BoundCertificate& c) {
  Json j;
  j["method"] = c.method;
  j["bound"] = c.bound;
  j["tensor_hash"] = c.hash;
  j["witness"] = c.witness;
  if (c.seed)
    j["seed"] = *c.seed;
  else
    j["seed"] = nullptr;
  j["verified"] = c.verified;
  j["tool_version"] = kVersion;
  j["tensor"] = tensor_to_json(c.tensor);
  return j;
}

inline BoundCertificate certificate_from_json(const Json& j) {
  BoundCertificate c;
  c.method = j.at("method").get<std::string>();
  c.bound = j.at("bound").get<int>();
  c.hash = j.at("tensor_hash").get<std::string>();
  c.witness = j.at("witness");
  if (j.contains("seed") && !j["seed"].is_null()) c.seed = j["seed"].get<std::uint64_t>();
  c.verified = j.value("verified", false);
  c.tensor = tensor_from_json(j.at("tensor"));
  return c;
}

// ---------------------------------------------------------------------------
// Flattening bound

inline BoundCertificate flattening_bound(const Tensor3& t) {
  MlRanks ml = multilinear_ranks(t);
  Factor best = Factor::A;
  int rank = ml.mlA;
  if (ml.mlB > rank) {
    best = Factor::B;
    rank = ml.mlB;
  }
  if (ml.mlC > rank) {
    best = Factor::C;
    rank = ml.mlC;
  }
  BoundCertificate c;
  c.method = "flattening";
  c.bound = rank;
  c.tensor = t;
  c.hash = tensor_hash(t);
  c.witness = Json{{"factor", factor_name(best)}, {"rank", rank}};
  c.verified = true;
  return c;
}

// ---------------------------------------------------------------------------
// Strassen commutator bound

namespace detail {

inline int commutator_rank(const QMat& t_alpha_inv, const Tensor3& t, const std::vector<Rat>& beta,
                           const std::vector<Rat>& gamma) {
  QMat x = t_alpha_inv * contract(t, Factor::A, beta);
  QMat y = t_alpha_inv * contract(t, Factor::A, gamma);
  return rank_exact(x * y - y * x);
}

inline std::vector<Rat> coordinate_covector(int len, int idx) {
  std::vector<Rat> v(static_cast<size_t>(len), Rat(0));
  v[static_cast<size_t>(idx)] = 1;
  return v;
}

}  // namespace detail

// bound = m + ceil(max_rank/2) over all coordinate covector pairs plus
// `trials` random pairs. Sampling can understate the max commutator rank but
// never overstate it, so every emitted certificate is sound.
inline BoundCertificate strassen_commutator_bound(const Tensor3& t, int trials = 64, std::uint64_t seed = 2024) {
  if (t.b != t.c) throw DimensionMismatch("strassen_commutator_bound: needs dims (a,m,m)");
  const int m = t.b;
  GenericityReport gen = is_1generic(t, Factor::A, derive_seed(seed, 1));
  if (!gen.one_generic) throw NotOneGeneric("strassen_commutator_bound: no invertible T(alpha) exists");
  QMat t_alpha = contract(t, Factor::A, gen.witness);
  QMat t_alpha_inv = inverse(t_alpha);

  int max_rank = 0;
  std::vector<Rat> best_beta = detail::coordinate_covector(t.a, 0), best_gamma = best_beta;
  auto consider = [&](const std::vector<Rat>& beta, const std::vector<Rat>& gamma) {
    int r = detail::commutator_rank(t_alpha_inv, t, beta, gamma);
    if (r > max_rank) {
      max_rank = r;
      best_beta = beta;
      best_gamma = gamma;
    }
  };

  for (int i = 0; i < t.a && max_rank < m; ++i)
    for (int j = i + 1; j < t.a && max_rank < m; ++j)
      consider(detail::coordinate_covector(t.a, i), detail::coordinate_covector(t.a, j));
  Prng rng(derive_seed(seed, 2));
  for (int trial = 0; trial < trials && max_rank < m; ++trial) {
    std::vector<Rat> beta(static_cast<size_t>(t.a)), gamma(static_cast<size_t>(t.a));
    for (int i = 0; i < t.a; ++i) beta[static_cast<size_t>(i)] = rat_of(rng.int_in(-10, 10));
    for (int i = 0; i < t.a; ++i) gamma[static_cast<size_t>(i)] = rat_of(rng.int_in(-10, 10));
    consider(beta, gamma);
  }

  BoundCertificate c;
  c.method = "strassen_commutator";
  c.bound = m + (max_rank + 1) / 2;
  c.tensor = t;
  c.hash = tensor_hash(t);
  c.seed = seed;
  c.witness = Json{{"alpha", vec_to_json(gen.witness)},
                   {"beta", vec_to_json(best_beta)},
                   {"gamma", vec_to_json(best_gamma)},
                   {"commutator_rank", max_rank},
                   {"m", m}};
  c.verified = true;
  return c;
}

struct MinrankResult {
  bool pass = false;
  // On failure: the covector indices and the nonzero commutator.
  int i = -1, j = -1;
  QMat commutator;
};

// Strassen's equations for minimal border rank: pass is necessary, not
// sufficient, for border rank m.
inline MinrankResult strassen_minrank_test(const Tensor3& t, std::uint64_t seed = 2024) {
  if (t.a != t.b || t.b != t.c) throw DimensionMismatch("strassen_minrank_test: needs dims (m,m,m)");
  if (!is_concise(t)) throw BadInput("strassen_minrank_test: tensor is not concise");
  GenericityReport gen = is_1generic(t, Factor::A, derive_seed(seed, 1));
  if (!gen.one_generic) throw NotOneGeneric("strassen_minrank_test: no invertible T(alpha) exists");
  QMat t_alpha_inv = inverse(contract(t, Factor::A, gen.witness));
  std::vector<QMat> xs;
  xs.reserve(static_cast<size_t>(t.a));
  for (int i = 0; i < t.a; ++i) xs.push_back(t_alpha_inv * slice(t, Factor::A, i));
  for (int i = 0; i < t.a; ++i)
    for (int j = i + 1; j < t.a; ++j) {
      QMat comm = xs[static_cast<size_t>(i)] * xs[static_cast<size_t>(j)] -
                  xs[static_cast<size_t>(j)] * xs[static_cast<size_t>(i)];
      if (!comm.is_zero()) return {false, i, j, std::move(comm)};
    }
  return {true, -1, -1, QMat()};
}

// ---------------------------------------------------------------------------
// Koszul flattening bound

namespace detail {

// Matrix of Lambda^p A' (x) B* -> Lambda^{p+1} A' (x) C for the restriction
// T' of T by R: rows (S', k) as rank(S')*c + k, cols (S, j) as rank(S)*b + j.
inline QMat koszul_matrix(const Tensor3& t, const QMat& restriction, int p) {
  const int d = restriction.rows();  // 2p+1
  Tensor3 tr = apply({restriction, QMat::identity(t.b), QMat::identity(t.c)}, t);
  auto cols_sets = subsets_lex(d, p);
  auto rows_sets = subsets_lex(d, p + 1);
  (void)rows_sets;
  const int n_cols = static_cast<int>(cols_sets.size()) * t.b;
  const int n_rows = static_cast<int>(binom(d, p + 1)) * t.c;
  QMat m(n_rows, n_cols);
  for (size_t si = 0; si < cols_sets.size(); ++si) {
    const auto& s = cols_sets[si];
    for (int i = 0; i < d; ++i) {
      int sign = insertion_sign(i, s);
      if (sign == 0) continue;
      int row_set = subset_rank_lex(subset_insert(s, i), d);
      for (int j = 0; j < t.b; ++j) {
        int col = static_cast<int>(si) * t.b + j;
        for (int k = 0; k < t.c; ++k) {
          const Rat& x = tr.at(i, j, k);
          if (x == 0) continue;
          Rat& cell = m(row_set * t.c + k, col);
          if (sign > 0)
            cell += x;
          else
            cell -= x;
        }
      }
    }
  }
  return m;
}

inline QMat coordinate_restriction(const std::vector<int>& subset, int a) {
  QMat r(static_cast<int>(subset.size()), a);
  for (size_t i = 0; i < subset.size(); ++i) r(static_cast<int>(i), subset[i]) = 1;
  return r;
}

}  // namespace detail

struct KoszulStrategy {
  // automatic = sweep coordinate subsets first, then seeded random trials,
  // keep the best. Coordinate restrictions of matmul tensors are degenerate
  // (M<3>, p=2 tops out at rank 69), so automatic is the default.
  enum Kind { automatic, coordinate, random, explicit_matrix } kind = automatic;
  std::uint64_t seed = 2024;
  int trials = 24;
  QMat matrix;  // for explicit_matrix

  static KoszulStrategy coord() { return {coordinate, 0, 0, QMat()}; }
  static KoszulStrategy rnd(std::uint64_t seed, int trials = 24) { return {random, seed, trials, QMat()}; }
  static KoszulStrategy expl(QMat m) { return {explicit_matrix, 0, 0, std::move(m)}; }
};

inline BoundCertificate koszul_bound(const Tensor3& t, int p, const KoszulStrategy& strategy = {}) {
  if (p < 1) throw BadInput("koszul_bound: p must be >= 1");
  const int d = 2 * p + 1;
  if (d > t.a) throw DimensionTooSmall("koszul_bound: 2p+1 exceeds dim A");
  const std::int64_t divisor = binom(2 * p, p);
  const int max_rank_possible =
      std::min(static_cast<int>(binom(d, p)) * t.b, static_cast<int>(binom(d, p + 1)) * t.c);

  int best_rank = -1;
  QMat best_restriction;
  auto consider = [&](const QMat& r) {
    int rank = rank_exact(detail::koszul_matrix(t, r, p));
    if (rank > best_rank) {
      best_rank = rank;
      best_restriction = r;
    }
    return best_rank >= max_rank_possible;
  };

  auto sweep_coordinates = [&]() {
    if (binom(t.a, d) > 100000) throw ResourceBudget("koszul_bound: too many coordinate subsets");
    for (const auto& subset : subsets_lex(t.a, d))
      if (consider(detail::coordinate_restriction(subset, t.a))) return true;
    return false;
  };
  auto sweep_random = [&]() {
    Prng rng(derive_seed(strategy.seed, 0x6b7a));
    for (int trial = 0; trial < strategy.trials; ++trial) {
      QMat r(d, t.a);
      do {
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < t.a; ++j) r(i, j) = rat_of(rng.int_in(-10, 10));
      } while (rank_exact(r) < d);
      if (consider(r)) return true;
    }
    return false;
  };

  switch (strategy.kind) {
    case KoszulStrategy::automatic: {
      bool saturated = false;
      if (binom(t.a, d) <= 100000) saturated = sweep_coordinates();
      if (!saturated) sweep_random();
      break;
    }
    case KoszulStrategy::coordinate:
      sweep_coordinates();
      break;
    case KoszulStrategy::random:
      sweep_random();
      break;
    case KoszulStrategy::explicit_matrix: {
      if (strategy.matrix.rows() != d || strategy.matrix.cols() != t.a)
        throw BadInput("koszul_bound: explicit restriction must be (2p+1) x a");
      if (rank_exact(strategy.matrix) != d) throw BadInput("koszul_bound: explicit restriction not full rank");
      consider(strategy.matrix);
      break;
    }
  }

  BoundCertificate c;
  c.method = "koszul";
  c.bound = static_cast<int>((best_rank + divisor - 1) / divisor);
  c.tensor = t;
  c.hash = tensor_hash(t);
  if (strategy.kind == KoszulStrategy::random || strategy.kind == KoszulStrategy::automatic)
    c.seed = strategy.seed;
  c.witness = Json{{"p", p},
                   {"restriction", qmat_to_json(best_restriction)},
                   {"rank", best_rank},
                   {"divisor", divisor}};
  c.verified = true;
  return c;
}

// ---------------------------------------------------------------------------
// Verification and best-of

// Recomputes the certificate's bound from its witness data; true iff every
// recomputed quantity matches bit-exactly.
inline bool verify_certificate(const BoundCertificate& c) {
  try {
    if (tensor_hash(c.tensor) != c.hash) return false;
    if (c.method == "flattening") {
      std::string f = c.witness.at("factor").get<std::string>();
      Factor factor = f == "A" ? Factor::A : (f == "B" ? Factor::B : Factor::C);
      int rank = rank_exact(flatten(c.tensor, factor));
      return rank == c.witness.at("rank").get<int>() && rank == c.bound;
    }
    if (c.method == "strassen_commutator") {
      if (c.tensor.b != c.tensor.c) return false;
      std::vector<Rat> alpha = vec_from_json(c.witness.at("alpha"));
      QMat t_alpha = contract(c.tensor, Factor::A, alpha);
      QMat inv;
      if (!try_inverse(t_alpha, inv)) return false;
      int rank = detail::commutator_rank(inv, c.tensor, vec_from_json(c.witness.at("beta")),
                                         vec_from_json(c.witness.at("gamma")));
      return rank == c.witness.at("commutator_rank").get<int>() && c.bound == c.tensor.b + (rank + 1) / 2;
    }
    if (c.method == "koszul") {
      int p = c.witness.at("p").get<int>();
      QMat r = qmat_from_json(c.witness.at("restriction"));
      if (r.rows() != 2 * p + 1 || r.cols() != c.tensor.a || rank_exact(r) != 2 * p + 1) return false;
      int rank = rank_exact(detail::koszul_matrix(c.tensor, r, p));
      std::int64_t divisor = binom(2 * p, p);
      return rank == c.witness.at("rank").get<int>() &&
             divisor == c.witness.at("divisor").get<std::int64_t>() &&
             c.bound == static_cast<int>((rank + divisor - 1) / divisor);
    }
    return false;
  } catch (const std::exception&) {
    return false;
  }
}

// Runs every applicable method within a deterministic work budget (abstract
// steps, not wall time: see README) and returns the largest verified bound.
inline BoundCertificate best_bound(const Tensor3& t, long budget = 200, std::uint64_t seed = 2024) {
  BoundCertificate best = flattening_bound(t);
  long remaining = budget;

  if (t.b == t.c && remaining > 0) {
    try {
      int trials = static_cast<int>(std::min<long>(remaining, 64));
      BoundCertificate c = strassen_commutator_bound(t, trials, seed);
      remaining -= trials;
      if (c.bound > best.bound) best = c;
    } catch (const NotOneGeneric&) {
    } catch (const ResourceBudget&) {
    }
  }
  for (int p = 1; 2 * p + 1 <= t.a && remaining > 0; ++p) {
    // Random restrictions; a handful of trials nearly always attains the
    // generic (maximal) Koszul rank.
    int trials = static_cast<int>(std::min<long>(remaining, 6));
    try {
      BoundCertificate c = koszul_bound(t, p, KoszulStrategy::rnd(derive_seed(seed, 100 + p), trials));
      remaining -= trials;
      if (c.bound > best.bound) best = c;
    } catch (const ResourceBudget&) {
      break;
    }
  }
  return best;
}

}  // namespace brank
