#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <weightforge/matrix.hpp>
#include <weightforge/selftest.hpp>

using namespace weightforge;

namespace {

RatMatrix mat(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Rat>> r;
  for (const auto& row : rows) {
    std::vector<Rat> rr;
    for (long x : row) rr.emplace_back(x);
    r.push_back(std::move(rr));
  }
  return RatMatrix::from_rows(r);
}

RatMatrix random_matrix(Rng& rng, int rows, int cols) {
  RatMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = rng.rat_small();
  return m;
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(rat_str(rat_checked("-3/6")) == "-1/2");
  CHECK(rat_str(rat_checked("4/2")) == "2");
  CHECK(rat_str(rat_checked("0")) == "0");
  CHECK(!rat_parse("2/0"));
  CHECK(!rat_parse("1/"));
  CHECK(!rat_parse("x"));
  CHECK(!rat_parse(""));
  CHECK_THROWS_AS(rat_checked("2/0"), std::invalid_argument);
}

TEST_CASE("rref fixtures") {
  auto [r0, p0] = rref(RatMatrix(0, 0));
  CHECK(r0.rows() == 0);
  CHECK(p0.empty());

  auto [r1, p1] = rref(RatMatrix::identity(2));
  CHECK(r1 == RatMatrix::identity(2));
  CHECK(p1 == std::vector<int>{0, 1});

  auto [r2, p2] = rref(mat({{2, 4}, {1, 2}}));
  CHECK(r2 == mat({{1, 2}, {0, 0}}));
  CHECK(p2 == std::vector<int>{0});
}

TEST_CASE("kernel and image fixtures") {
  CHECK(kernel_basis(RatMatrix::identity(3)).dim() == 0);
  CHECK(kernel_basis(RatMatrix(2, 3)).dim() == 3);
  Subspace k = kernel_basis(mat({{1, 2}}));
  REQUIRE(k.dim() == 1);
  CHECK(k.basis == mat({{-2}, {1}}));

  CHECK(image_basis(RatMatrix(3, 2)).dim() == 0);
  CHECK(image_basis(RatMatrix::identity(4)).dim() == 4);
  Subspace im = image_basis(mat({{1}, {2}}));
  REQUIRE(im.dim() == 1);
  CHECK(im.basis == mat({{1}, {2}}));
}

TEST_CASE("solve fixtures") {
  RatMatrix b = mat({{5}, {7}});
  auto x = solve(RatMatrix::identity(2), b);
  REQUIRE(x);
  CHECK(*x == b);

  auto y = solve(mat({{1, 1}}), mat({{3}}));
  REQUIRE(y);
  CHECK(mat({{1, 1}}) * *y == mat({{3}}));

  CHECK(!solve(mat({{0}}), mat({{1}})));
  CHECK_THROWS_AS(solve(mat({{1, 1}}), mat({{1}, {2}})), std::invalid_argument);
}

TEST_CASE("quotient_map fixtures") {
  auto [p0, d0] = quotient_map(3, Subspace::zero(3));
  CHECK(p0 == RatMatrix::identity(3));
  CHECK(d0 == 3);

  auto [p1, d1] = quotient_map(2, Subspace::full(2));
  CHECK(d1 == 0);
  CHECK(p1.rows() == 0);

  Subspace diag(2, mat({{1}, {1}}));
  auto [p2, d2] = quotient_map(2, diag);
  CHECK(d2 == 1);
  CHECK(p2.rows() == 1);
  CHECK((p2 * diag.basis).is_zero());
  CHECK(rank(p2) == 1);
}

TEST_CASE("rank-nullity, rref idempotence, quotient kills subspace") {
  Rng rng(42);
  for (int iter = 0; iter < 60; ++iter) {
    RatMatrix m = random_matrix(rng, rng.range(0, 6), rng.range(0, 6));
    CHECK(kernel_basis(m).dim() + image_basis(m).dim() == m.cols());
    RatMatrix r = rref(m).mat;
    CHECK(rref(r).mat == r);
    Subspace im = image_basis(m);
    auto [proj, qdim] = quotient_map(m.rows(), im);
    CHECK(qdim == m.rows() - im.dim());
    CHECK((proj * im.basis).is_zero());
  }
}

TEST_CASE("subspace algebra") {
  Rng rng(7);
  for (int iter = 0; iter < 40; ++iter) {
    int n = rng.range(1, 5);
    Subspace a = image_basis(random_matrix(rng, n, rng.range(0, n)));
    Subspace b = image_basis(random_matrix(rng, n, rng.range(0, n)));
    Subspace s = subspace_sum(a, b);
    Subspace i = subspace_intersect(a, b);
    CHECK(subspace_contains(s, a));
    CHECK(subspace_contains(s, b));
    CHECK(subspace_contains(a, i));
    CHECK(subspace_contains(b, i));
    CHECK(s.dim() + i.dim() == a.dim() + b.dim());
    RatMatrix f = random_matrix(rng, rng.range(0, 4), n);
    Subspace pre = preimage_subspace(f, image_basis(random_matrix(rng, f.rows(), 2)));
    CHECK(pre.dim() >= kernel_basis(f).dim());
  }
}

TEST_CASE("restrict and induced maps") {
  Rng rng(11);
  for (int iter = 0; iter < 30; ++iter) {
    int n = rng.range(1, 5);
    RatMatrix f = random_matrix(rng, n, n);
    Subspace a = image_basis(random_matrix(rng, n, rng.range(1, n)));
    Subspace fa = map_subspace(f, a);
    RatMatrix r = restrict_matrix(f, a, fa);
    CHECK(fa.basis * r == f * a.basis);
  }
}
