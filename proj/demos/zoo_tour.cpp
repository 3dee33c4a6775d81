// Walks the tensor zoo and prints dimensions, multilinear ranks, and
// conciseness for each family member.

#include <cstdio>

#include "brank/tensor.hpp"

using namespace brank;

static void report(const char* name, const Tensor3& t) {
  MlRanks ml = multilinear_ranks(t);
  std::printf("%-22s dims (%d,%d,%d)  ml (%d,%d,%d)  concise %s\n", name, t.a, t.b, t.c, ml.mlA, ml.mlB, ml.mlC,
              is_concise(t) ? "yes" : "no");
}

int main() {
  report("unit(4)", make_unit(4));
  report("matmul(2,2,2)", make_matmul(2, 2, 2));
  report("matmul(2,2,3)", make_matmul(2, 2, 3));
  report("cw_2", make_cw_little(2));
  report("cw_variant(2,skew)", make_cw_variant(2, FormKind::skew));
  report("skeletal(7,identity)", make_skeletal(7, FormKind::symmetric));
  report("skeletal(8,skew)", make_skeletal(8, FormKind::skew));
  report("bini", make_bini());
  return 0;
}
