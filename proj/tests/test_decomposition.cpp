#include "brank/decomposition.hpp"

#include <gtest/gtest.h>

#include <vector>

#include "brank/bounds.hpp"
#include "brank/tensor.hpp"

using namespace brank;

namespace {

// W = e1*e0*e0 + e0*e1*e0 + e0*e0*e1, the rank-3 border-rank-2 cube.
Tensor3 w_tensor() {
  Tensor3 t(2, 2, 2);
  t.at(1, 0, 0) = 1;
  t.at(0, 1, 0) = 1;
  t.at(0, 0, 1) = 1;
  return t;
}

QPoly qp(long c0, long c1 = 0) {
  return QPoly::monomial(0, rat_of(c0)) + QPoly::monomial(1, rat_of(c1));
}

// Tangent line through the diagonal point: P(t) = (e0+t e1)^{x3} - e0^{x3}.
BorderDecomposition tangent_family() {
  BorderDecomposition d;
  d.r = 2;
  d.a = d.b = d.c = 2;
  d.u = {{qp(1), qp(0, 1)}, {qp(-1), qp(0)}};
  d.v = {{qp(1), qp(0, 1)}, {qp(1), qp(0)}};
  d.w = {{qp(1), qp(0, 1)}, {qp(1), qp(0)}};
  return d;
}

TEST(VerifyDecomposition, StrassenReproducesMatmulTwo) {
  BilinearDecomposition d = strassen_decomposition();
  EXPECT_EQ(d.r, 7);
  VerifyResult res = verify_decomposition(make_matmul(2, 2, 2), d);
  EXPECT_TRUE(res.exact_ok);
}

TEST(VerifyDecomposition, ClassicalMatchesEveryShape) {
  for (auto [l, m, n] : {std::tuple<int, int, int>{1, 1, 1},
                         {2, 2, 2},
                         {2, 3, 4},
                         {3, 1, 2}}) {
    BilinearDecomposition d = classical_decomposition(l, m, n);
    EXPECT_EQ(d.r, l * m * n);
    EXPECT_TRUE(verify_decomposition(make_matmul(l, m, n), d).exact_ok)
        << l << "x" << m << "x" << n;
  }
}

TEST(VerifyDecomposition, SignFlipBreaksStrassen) {
  BilinearDecomposition d = strassen_decomposition();
  for (Rat& x : d.w[6]) x = -x;
  EXPECT_FALSE(verify_decomposition(make_matmul(2, 2, 2), d).exact_ok);
}

TEST(VerifyDecomposition, RejectsShapeMismatch) {
  EXPECT_THROW(verify_decomposition(make_matmul(2, 2, 3), strassen_decomposition()),
               DimensionMismatch);
  BilinearDecomposition ragged = classical_decomposition(2, 2, 2);
  ragged.v[3].push_back(Rat(0));
  EXPECT_THROW(verify_decomposition(make_matmul(2, 2, 2), ragged), DimensionMismatch);
}

TEST(VerifyDecomposition, FloatModeReportsMaxNormResidual) {
  BilinearDecomposition exact = classical_decomposition(2, 2, 2);
  BilinearDecomposition d;
  d.mode = BilinearDecomposition::Mode::floating;
  d.r = exact.r;
  d.a = exact.a;
  d.b = exact.b;
  d.c = exact.c;
  for (int j = 0; j < d.r; ++j) {
    auto to_doubles = [](const std::vector<Rat>& row) {
      std::vector<double> out;
      for (const Rat& x : row) out.push_back(rat_double(x));
      return out;
    };
    d.fu.push_back(to_doubles(exact.u[j]));
    d.fv.push_back(to_doubles(exact.v[j]));
    d.fw.push_back(to_doubles(exact.w[j]));
  }
  Tensor3 t = make_matmul(2, 2, 2);
  VerifyResult clean = verify_decomposition(t, d);
  EXPECT_EQ(clean.mode, BilinearDecomposition::Mode::floating);
  EXPECT_EQ(clean.residual, 0.0);

  d.fu[0][0] += 1e-3;
  VerifyResult bumped = verify_decomposition(t, d);
  EXPECT_NEAR(bumped.residual, 1e-3, 1e-12);
}

// A verified decomposition is a bilinear algorithm: run Strassen's seven
// products on a concrete rational matrix pair and read the product back off
// the w rows.
TEST(VerifyDecomposition, StrassenTriplesMultiplyMatrices) {
  BilinearDecomposition d = strassen_decomposition();
  std::vector<Rat> x = {rat_of(3), Rat(-1, 2), rat_of(0), rat_of(5)};    // row-major 2x2
  std::vector<Rat> y = {Rat(1, 3), rat_of(2), rat_of(-4), Rat(7, 5)};
  std::vector<Rat> c(4, Rat(0));  // c[w*2+u]
  for (int j = 0; j < d.r; ++j) {
    Rat xu(0), yv(0);
    for (int i = 0; i < 4; ++i) xu += d.u[j][i] * x[i];
    for (int i = 0; i < 4; ++i) yv += d.v[j][i] * y[i];
    for (int i = 0; i < 4; ++i) c[i] += xu * yv * d.w[j][i];
  }
  for (int u = 0; u < 2; ++u)
    for (int w = 0; w < 2; ++w) {
      Rat direct(0);
      for (int v = 0; v < 2; ++v) direct += x[u * 2 + v] * y[v * 2 + w];
      EXPECT_EQ(c[w * 2 + u], direct) << "entry " << u << w;
    }
}

TEST(DecompositionJson, ExactRoundTripIsByteIdentical) {
  BilinearDecomposition d = strassen_decomposition();
  Json j = decomposition_to_json(d);
  BilinearDecomposition back = decomposition_from_json(j);
  EXPECT_EQ(back.a, 4);
  EXPECT_EQ(back.mode, BilinearDecomposition::Mode::exact);
  EXPECT_TRUE(verify_decomposition(make_matmul(2, 2, 2), back).exact_ok);
  EXPECT_EQ(decomposition_to_json(back).dump(), j.dump());
}

TEST(DecompositionJson, FloatRoundTripKeepsEveryBit) {
  BilinearDecomposition d;
  d.mode = BilinearDecomposition::Mode::floating;
  d.r = 1;
  d.a = d.b = d.c = 2;
  d.fu = {{0.1, -2.25}};
  d.fv = {{1.0 / 3.0, 0.0}};
  d.fw = {{5e-324, 1e308}};  // denormal floor and near overflow both survive
  BilinearDecomposition back = decomposition_from_json(decomposition_to_json(d));
  EXPECT_EQ(back.fu[0], d.fu[0]);
  EXPECT_EQ(back.fv[0], d.fv[0]);
  EXPECT_EQ(back.fw[0], d.fw[0]);
}

TEST(DecompositionJson, RejectsMalformedInput) {
  Json good = decomposition_to_json(strassen_decomposition());
  Json bad_mode = good;
  bad_mode["mode"] = "rational";
  EXPECT_THROW(decomposition_from_json(bad_mode), BadInput);

  Json short_list = good;
  short_list["triples"].erase(6);
  EXPECT_THROW(decomposition_from_json(short_list), BadInput);

  Json pair_only = good;
  pair_only["triples"][0].erase(2);
  EXPECT_THROW(decomposition_from_json(pair_only), BadInput);
}

TEST(BorderEval, TangentFamilyDegeneratesToW) {
  BorderEval e = border_decomposition_eval(tangent_family(), Rat(0));
  EXPECT_EQ(e.s, 1);
  EXPECT_EQ(e.limit, w_tensor());
  EXPECT_EQ(e.at_t0, e.limit);
}

TEST(BorderEval, FamilyMemberApproximatesToFirstOrder) {
  Rat t0(1, 8);
  BorderEval e = border_decomposition_eval(tangent_family(), t0);
  // P(t0)/t0 differs from W only in the higher corners: t0 at (1,1,0) and
  // (1,0,1), t0^2 at (1,1,1).
  Tensor3 diff = e.at_t0;
  Tensor3 w = w_tensor();
  for (int i = 0; i < 2; ++i)
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q) diff.at(i, p, q) -= w.at(i, p, q);
  EXPECT_EQ(diff.at(1, 1, 0), t0);
  EXPECT_EQ(diff.at(1, 0, 1), t0);
  EXPECT_EQ(diff.at(1, 1, 1), t0 * t0);
  EXPECT_EQ(diff.at(0, 0, 0), Rat(0));
  EXPECT_EQ(diff.at(1, 0, 0), Rat(0));
}

TEST(BorderEval, ConstantFamilyIsItsOwnLimit) {
  BorderDecomposition d;
  d.r = 2;
  d.a = d.b = d.c = 2;
  d.u = {{qp(1), qp(0)}, {qp(0), qp(1)}};
  d.v = {{qp(1), qp(0)}, {qp(0), qp(1)}};
  d.w = {{qp(1), qp(0)}, {qp(0), qp(1)}};
  BorderEval e = border_decomposition_eval(d, Rat(3, 7));
  EXPECT_EQ(e.s, 0);
  EXPECT_EQ(e.limit, make_unit(2));
  EXPECT_EQ(e.at_t0, make_unit(2));
}

TEST(BorderEval, DeclaredExponentAboveValuationDoesNotConverge) {
  BorderDecomposition d = tangent_family();
  d.denom_exponent = 2;  // the t^1 term would blow up under t^{-2}
  EXPECT_THROW(border_decomposition_eval(d, Rat(0)), NotConvergent);
}

TEST(BorderEval, DeclaredExponentBelowValuationGivesZeroCoefficient) {
  BorderDecomposition d = tangent_family();
  d.denom_exponent = 0;
  BorderEval e = border_decomposition_eval(d, Rat(0));
  EXPECT_EQ(e.s, 0);
  EXPECT_TRUE(e.limit.is_zero());
}

TEST(BorderEval, GapFamilySkipsToTheSquareTerm) {
  BorderDecomposition d;
  d.r = 2;
  d.a = d.b = d.c = 2;
  d.u = {{qp(1), QPoly::monomial(2)}, {qp(-1), qp(0)}};
  d.v = {{qp(1), qp(0)}, {qp(1), qp(0)}};
  d.w = {{qp(1), qp(0)}, {qp(1), qp(0)}};
  BorderEval e = border_decomposition_eval(d, Rat(0));
  EXPECT_EQ(e.s, 2);
  Tensor3 expected(2, 2, 2);
  expected.at(1, 0, 0) = 1;
  EXPECT_EQ(e.limit, expected);
}

TEST(BorderEval, RejectsEmptyFamily) {
  BorderDecomposition d;
  EXPECT_THROW(border_decomposition_eval(d, Rat(0)), BadInput);
}

// The W limit point ties the border machinery to the bound machinery: its
// flattening certifies border rank 2, strictly below the rank-3 tangent
// presentation it came from.
TEST(BorderEval, WLimitSandwichesBetweenFlatteningAndFamilySize) {
  BorderDecomposition fam = tangent_family();
  BorderEval e = border_decomposition_eval(fam, Rat(0));
  BoundCertificate flat = flattening_bound(e.limit);
  EXPECT_EQ(flat.bound, 2);
  EXPECT_LE(flat.bound, fam.r);
}

TEST(Sandwich, StrassenUpperMeetsCommutatorLower) {
  Tensor3 t = make_matmul(2, 2, 2);
  BilinearDecomposition d = strassen_decomposition();
  ASSERT_TRUE(verify_decomposition(t, d).exact_ok);
  BoundCertificate lower = best_bound(t);
  EXPECT_EQ(lower.bound, 6);
  EXPECT_LE(lower.bound, d.r);
}

}  // namespace
