// Explicit bilinear decompositions: exact rank witnesses, float search
// output, and polynomial families whose t -> 0 limits witness border rank.
//
// A decomposition of M<l,m,n> doubles as a multiplication algorithm: with
// products m_j = (u_j . X)(v_j . Y), the entry C[u][w] of C = XY is
// sum_j m_j * w_j[w*l + u] (the C factor is indexed (w,u) row-major, same
// chain convention as make_matmul).

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "brank/errors.hpp"
#include "brank/json_io.hpp"
#include "brank/qpoly.hpp"
#include "brank/tensor.hpp"

namespace brank {

struct BilinearDecomposition {
  enum class Mode { exact, floating };
  Mode mode = Mode::exact;
  int r = 0;
  int a = 0, b = 0, c = 0;
  // Exact triples, r rows each. Empty in float mode.
  std::vector<std::vector<Rat>> u, v, w;
  // Float triples; empty in exact mode.
  std::vector<std::vector<double>> fu, fv, fw;
};

struct VerifyResult {
  bool exact_ok = false;       // exact mode only
  double residual = 0.0;       // float mode: max-norm of T - sum
  BilinearDecomposition::Mode mode = BilinearDecomposition::Mode::exact;
};

inline void check_decomposition_dims(const Tensor3& t, const BilinearDecomposition& d) {
  if (d.a != t.a || d.b != t.b || d.c != t.c)
    throw DimensionMismatch("verify_decomposition: dims do not match tensor");
  const size_t r = static_cast<size_t>(d.r);
  bool exact = d.mode == BilinearDecomposition::Mode::exact;
  if ((exact ? d.u.size() : d.fu.size()) != r || (exact ? d.v.size() : d.fv.size()) != r ||
      (exact ? d.w.size() : d.fw.size()) != r)
    throw DimensionMismatch("verify_decomposition: triple count does not match r");
  for (size_t j = 0; j < r; ++j) {
    size_t ua = exact ? d.u[j].size() : d.fu[j].size();
    size_t vb = exact ? d.v[j].size() : d.fv[j].size();
    size_t wc = exact ? d.w[j].size() : d.fw[j].size();
    if (ua != static_cast<size_t>(d.a) || vb != static_cast<size_t>(d.b) ||
        wc != static_cast<size_t>(d.c))
      throw DimensionMismatch("verify_decomposition: triple " + std::to_string(j) +
                              " has a wrong-length vector");
  }
}

inline VerifyResult verify_decomposition(const Tensor3& t, const BilinearDecomposition& d) {
  check_decomposition_dims(t, d);
  VerifyResult result;
  result.mode = d.mode;
  if (d.mode == BilinearDecomposition::Mode::exact) {
    Tensor3 sum(t.a, t.b, t.c);
    for (int j = 0; j < d.r; ++j)
      for (int i = 0; i < t.a; ++i) {
        if (d.u[j][i] == 0) continue;
        for (int p = 0; p < t.b; ++p) {
          if (d.v[j][p] == 0) continue;
          Rat uv = d.u[j][i] * d.v[j][p];
          for (int q = 0; q < t.c; ++q)
            if (d.w[j][q] != 0) sum.at(i, p, q) += uv * d.w[j][q];
        }
      }
    result.exact_ok = sum == t;
    return result;
  }
  // Fixed summation order: triples outermost in index order, then i, p, q.
  double residual = 0.0;
  for (int i = 0; i < t.a; ++i)
    for (int p = 0; p < t.b; ++p)
      for (int q = 0; q < t.c; ++q) {
        double acc = 0.0;
        for (int j = 0; j < d.r; ++j) acc += d.fu[j][i] * d.fv[j][p] * d.fw[j][q];
        double diff = std::fabs(rat_double(t.at(i, p, q)) - acc);
        if (diff > residual) residual = diff;
      }
  result.residual = residual;
  return result;
}

// ---------------------------------------------------------------------------
// Stock decompositions

// The seven products I..VII and the four recombinations, transcribed with
// X entries indexed u*2+v, Y entries v*2+w, and C[u][w] read off at w*2+u.
inline BilinearDecomposition strassen_decomposition() {
  BilinearDecomposition d;
  d.r = 7;
  d.a = d.b = d.c = 4;
  auto row = [](int x11, int x12, int x21, int x22) {
    return std::vector<Rat>{Rat(x11), Rat(x12), Rat(x21), Rat(x22)};
  };
  d.u = {row(1, 0, 0, 1),   // I:   (a11+a22)
         row(0, 0, 1, 1),   // II:  (a21+a22)
         row(1, 0, 0, 0),   // III: a11
         row(0, 0, 0, 1),   // IV:  a22
         row(1, 1, 0, 0),   // V:   (a11+a12)
         row(-1, 0, 1, 0),  // VI:  (-a11+a21)
         row(0, 1, 0, -1)}; // VII: (a12-a22)
  d.v = {row(1, 0, 0, 1),   // I:   (b11+b22)
         row(1, 0, 0, 0),   // II:  b11
         row(0, 1, 0, -1),  // III: (b12-b22)
         row(-1, 0, 1, 0),  // IV:  (-b11+b21)
         row(0, 0, 0, 1),   // V:   b22
         row(1, 1, 0, 0),   // VI:  (b11+b12)
         row(0, 0, 1, 1)};  // VII: (b21+b22)
  // c11 = I+IV-V+VII, c21 = II+IV, c12 = III+V, c22 = I+III-II+VI,
  // written against the (w,u) slot order (c11, c21, c12, c22).
  d.w = {row(1, 0, 0, 1),   // I   -> c11, c22
         row(0, 1, 0, -1),  // II  -> c21, -c22
         row(0, 0, 1, 1),   // III -> c12, c22
         row(1, 1, 0, 0),   // IV  -> c11, c21
         row(-1, 0, 1, 0),  // V   -> -c11, c12
         row(0, 0, 0, 1),   // VI  -> c22
         row(1, 0, 0, 0)};  // VII -> c11
  return d;
}

inline BilinearDecomposition classical_decomposition(int l, int m, int n) {
  if (l < 1 || m < 1 || n < 1) throw BadInput("classical_decomposition: dims must be positive");
  BilinearDecomposition d;
  d.r = l * m * n;
  d.a = l * m;
  d.b = m * n;
  d.c = n * l;
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < n; ++k) {
        std::vector<Rat> uu(d.a), vv(d.b), ww(d.c);
        uu[i * m + j] = 1;
        vv[j * n + k] = 1;
        ww[k * l + i] = 1;
        d.u.push_back(std::move(uu));
        d.v.push_back(std::move(vv));
        d.w.push_back(std::move(ww));
      }
  return d;
}

// ---------------------------------------------------------------------------
// JSON round trip: {"r":R,"mode":"exact"|"float","triples":[[[u],[v],[w]],...]}

inline Json decomposition_to_json(const BilinearDecomposition& d) {
  Json triples = Json::array();
  for (int j = 0; j < d.r; ++j) {
    Json triple = Json::array();
    if (d.mode == BilinearDecomposition::Mode::exact) {
      triple.push_back(vec_to_json(d.u[j]));
      triple.push_back(vec_to_json(d.v[j]));
      triple.push_back(vec_to_json(d.w[j]));
    } else {
      triple.push_back(Json(d.fu[j]));
      triple.push_back(Json(d.fv[j]));
      triple.push_back(Json(d.fw[j]));
    }
    triples.push_back(std::move(triple));
  }
  return Json{{"r", d.r},
              {"mode", d.mode == BilinearDecomposition::Mode::exact ? "exact" : "float"},
              {"triples", std::move(triples)}};
}

inline BilinearDecomposition decomposition_from_json(const Json& j) {
  BilinearDecomposition d;
  d.r = j.at("r").get<int>();
  std::string mode = j.at("mode").get<std::string>();
  if (mode == "exact")
    d.mode = BilinearDecomposition::Mode::exact;
  else if (mode == "float")
    d.mode = BilinearDecomposition::Mode::floating;
  else
    throw BadInput("decomposition_from_json: mode must be exact or float");
  const Json& triples = j.at("triples");
  if (!triples.is_array() || static_cast<int>(triples.size()) != d.r)
    throw BadInput("decomposition_from_json: triples length != r");
  for (const Json& triple : triples) {
    if (!triple.is_array() || triple.size() != 3)
      throw BadInput("decomposition_from_json: each triple needs 3 vectors");
    if (d.mode == BilinearDecomposition::Mode::exact) {
      d.u.push_back(vec_from_json(triple[0]));
      d.v.push_back(vec_from_json(triple[1]));
      d.w.push_back(vec_from_json(triple[2]));
    } else {
      d.fu.push_back(triple[0].get<std::vector<double>>());
      d.fv.push_back(triple[1].get<std::vector<double>>());
      d.fw.push_back(triple[2].get<std::vector<double>>());
    }
  }
  if (d.r > 0) {
    d.a = static_cast<int>(d.mode == BilinearDecomposition::Mode::exact ? d.u[0].size()
                                                                        : d.fu[0].size());
    d.b = static_cast<int>(d.mode == BilinearDecomposition::Mode::exact ? d.v[0].size()
                                                                        : d.fv[0].size());
    d.c = static_cast<int>(d.mode == BilinearDecomposition::Mode::exact ? d.w[0].size()
                                                                        : d.fw[0].size());
  }
  return d;
}

// ---------------------------------------------------------------------------
// Border rank families: triples with entries in Q[t]

struct BorderDecomposition {
  int r = 0;
  int a = 0, b = 0, c = 0;
  std::vector<std::vector<QPoly>> u, v, w;  // r rows each
  // The family is t^{-s} * sum; -1 means use the minimal t-power present.
  int denom_exponent = -1;
};

struct BorderEval {
  Tensor3 limit;   // coefficient of t^s in the polynomial sum
  Tensor3 at_t0;   // the family member at t = t0 (equals limit when t0 = 0)
  int s = 0;
};

inline BorderEval border_decomposition_eval(const BorderDecomposition& d, const Rat& t0) {
  if (d.r < 1 || d.a < 1 || d.b < 1 || d.c < 1)
    throw BadInput("border_decomposition_eval: empty decomposition");
  std::vector<QPoly> sum(static_cast<size_t>(d.a) * d.b * d.c);
  for (int j = 0; j < d.r; ++j)
    for (int i = 0; i < d.a; ++i) {
      if (d.u[j][i].is_zero()) continue;
      for (int p = 0; p < d.b; ++p) {
        if (d.v[j][p].is_zero()) continue;
        QPoly uv = d.u[j][i] * d.v[j][p];
        for (int q = 0; q < d.c; ++q)
          if (!d.w[j][q].is_zero())
            sum[(static_cast<size_t>(i) * d.b + p) * d.c + q] =
                sum[(static_cast<size_t>(i) * d.b + p) * d.c + q] + uv * d.w[j][q];
      }
    }

  int min_val = -1;
  for (const QPoly& e : sum) {
    if (e.is_zero()) continue;
    int val = e.valuation();
    if (min_val < 0 || val < min_val) min_val = val;
  }
  if (min_val < 0) min_val = 0;  // identically zero family
  int s = d.denom_exponent >= 0 ? d.denom_exponent : min_val;
  if (min_val < s)
    throw NotConvergent("border_decomposition_eval: t-expansion has negative-degree terms after normalization");

  BorderEval result{Tensor3(d.a, d.b, d.c), Tensor3(d.a, d.b, d.c), s};
  for (int i = 0; i < d.a; ++i)
    for (int p = 0; p < d.b; ++p)
      for (int q = 0; q < d.c; ++q) {
        const QPoly& e = sum[(static_cast<size_t>(i) * d.b + p) * d.c + q];
        result.limit.at(i, p, q) = e.coeff(s);
        if (t0 != 0) {
          Rat scale = 1;
          for (int k = 0; k < s; ++k) scale *= t0;
          result.at_t0.at(i, p, q) = e.eval(t0) / scale;
        }
      }
  if (t0 == 0) result.at_t0 = result.limit;
  return result;
}

}  // namespace brank
