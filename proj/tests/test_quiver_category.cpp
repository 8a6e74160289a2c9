#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <weightforge/rep.hpp>
#include <weightforge/selftest.hpp>

using namespace weightforge;

namespace {

int vtx(const QuiverPtr& q, const std::string& id) { return q->vertex_index(id); }

}  // namespace

TEST_CASE("quiver validation") {
  auto q1 = fixture_q1();
  CHECK(q1->validate().acyclic);
  CHECK(q1->validate().admissible);

  auto q0 = fixture_q0();
  CHECK(q0->validate().acyclic);
  CHECK(!q0->validate().admissible);

  auto single = make_quiver({{"x", 5}}, {});
  CHECK(single->validate().acyclic);
  CHECK(single->validate().admissible);

  CHECK_THROWS_AS(make_quiver({{"x", 0}, {"x", 1}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(make_quiver({{"x", 0}}, {{"a", "x", "nowhere"}}), std::invalid_argument);

  WeightedQuiver cyclic({{"x", 1}, {"y", 0}}, {{"a", "x", "y"}, {"b", "y", "x"}});
  CHECK(!cyclic.validate().acyclic);
  CHECK(!cyclic.validate().admissible);
}

TEST_CASE("simples and projectives over Q1") {
  auto q = fixture_q1();
  int u = vtx(q, "u"), v = vtx(q, "v");
  Rep su = simple(q, u), sv = simple(q, v);
  CHECK(su.total_dim() == 1);
  CHECK(hom_dim(su, sv) == 0);
  CHECK(hom_dim(sv, su) == 0);
  CHECK(hom_dim(sv, sv) == 1);

  Rep pv = projective(q, v);
  CHECK(pv == sv);
  Rep pu = projective(q, u);
  CHECK(pu.dim(u) == 1);
  CHECK(pu.dim(v) == 1);
  CHECK(pu.arrow_matrix(0) == RatMatrix::identity(1));

  auto arrowless = make_quiver({{"w", 2}}, {});
  CHECK(projective(arrowless, 0) == simple(arrowless, 0));
}

TEST_CASE("kernel, cokernel, image") {
  auto q = fixture_q1();
  int u = vtx(q, "u");
  Rep pu = projective(q, u), su = simple(q, u);
  CHECK(kernel(RepMap::identity(pu)).rep.total_dim() == 0);
  CHECK(cokernel(RepMap::zero(Rep::zero(q), pu)).rep == pu);

  auto maps = hom_basis(pu, su);
  REQUIRE(maps.size() == 1);
  ImageData img = image(maps[0]);
  CHECK(img.image.dims() == su.dims());
  CHECK(compose(img.inclusion, img.corestriction) == maps[0]);
}

TEST_CASE("hom_basis contains identity") {
  auto q = fixture_q1();
  Rep pu = projective(q, vtx(q, "u"));
  auto endos = hom_basis(pu, pu);
  CHECK(!endos.empty());
  bool found = false;
  for (const auto& f : endos)
    if (f.is_identity()) found = true;
  // the identity is in the span; with a 1-dimensional End this is on the nose
  CHECK((found || endos.size() > 1));
}

TEST_CASE("ext1 fixtures") {
  auto q = fixture_q1();
  int u = vtx(q, "u"), v = vtx(q, "v");
  CHECK(ext1(simple(q, u), simple(q, v)).dim == 1);
  CHECK(ext1(simple(q, v), simple(q, u)).dim == 0);
  auto arrowless = make_quiver({{"w", 0}}, {});
  CHECK(ext1(simple(arrowless, 0), simple(arrowless, 0)).dim == 0);
}

TEST_CASE("minimal resolution of S_u") {
  auto q = fixture_q1();
  int u = vtx(q, "u"), v = vtx(q, "v");
  Resolution r = minimal_resolution(simple(q, u));
  CHECK(r.p0 == projective(q, u));
  CHECK(r.p1.dims() == projective(q, v).dims());
  CHECK(r.d.is_injective());
  CHECK(r.eps.is_surjective());
  CHECK(is_projective(projective(q, u)));
  CHECK(!is_projective(simple(q, u)));
}

TEST_CASE("weight subfunctor fixtures") {
  auto q = fixture_q1();
  int u = vtx(q, "u"), v = vtx(q, "v");
  Rep pu = projective(q, u);
  CHECK(w_le_module(pu, 0).rep == simple(q, v));
  CHECK(w_le_module(pu, 1).rep.dims() == pu.dims());
  CHECK(w_le_module(pu, -1).rep.total_dim() == 0);
  CHECK(gr_module(pu, 1) == simple(q, u));
  CHECK(gr_module(pu, 0) == simple(q, v));
  CHECK(gr_module(pu, 5).total_dim() == 0);
  CHECK(gr_module(simple(q, v), 0) == simple(q, v));

  auto q0 = fixture_q0();
  CHECK_THROWS_AS(w_le_module(simple(q0, 0), 0), std::invalid_argument);
}

TEST_CASE("gr matches the subquotient computation") {
  Rng rng(3);
  for (int iter = 0; iter < 20; ++iter) {
    auto q = random_admissible_quiver(rng, 4);
    Rep m = random_rep(rng, q, 3);
    for (int i : q->occurring_weights()) {
      auto wle = w_le_module(m, i).rep;
      auto quotient = w_ge_quotient(wle, i);
      CHECK(quotient.rep.dims() == gr_module(m, i).dims());
      CHECK(in_weight_slice(gr_module(m, i), i));
    }
  }
}

TEST_CASE("split idempotent of modules") {
  auto q = fixture_q1();
  int u = vtx(q, "u"), v = vtx(q, "v");
  Rep su = simple(q, u), sv = simple(q, v);
  RepSum s = direct_sum({su, sv});

  auto full = split_idempotent_module(s.sum, RepMap::identity(s.sum));
  CHECK(full.summand.dims() == s.sum.dims());
  auto zero = split_idempotent_module(s.sum, RepMap::zero(s.sum, s.sum));
  CHECK(zero.summand.total_dim() == 0);

  RepMap e = compose(s.inject[0], s.project[0]);
  auto sp = split_idempotent_module(s.sum, e);
  CHECK(sp.summand.dims() == su.dims());
  CHECK(compose(sp.inclusion, sp.projection) == e);
  CHECK(compose(sp.projection, sp.inclusion).is_identity());

  RepMap not_idem = compose(s.inject[0], s.project[0]) * Rat(2);
  CHECK_THROWS_AS(split_idempotent_module(s.sum, not_idem), std::invalid_argument);
}

TEST_CASE("semisimple slices") {
  CHECK(is_semisimple_slice(fixture_q1(), 0).semisimple);
  CHECK(is_semisimple_slice(fixture_q1(), 1).semisimple);
  auto r = is_semisimple_slice(fixture_q0(), 0);
  CHECK(!r.semisimple);
  CHECK(!r.witness.empty());
  CHECK(is_semisimple_slice(fixture_q1(), 17).semisimple);  // empty slice
}

TEST_CASE("euler form equals hom - ext1") {
  Rng rng(19);
  for (int iter = 0; iter < 25; ++iter) {
    auto q = random_acyclic_quiver(rng, 4);
    Rep m = random_rep(rng, q, 3);
    Rep n = random_rep(rng, q, 3);
    CHECK(hom_dim(m, n) - ext1(m, n).dim == euler_form(m, n));
  }
}

TEST_CASE("w_le is exact on short exact sequences and functorial") {
  Rng rng(23);
  int checked = 0;
  for (int iter = 0; iter < 30 && checked < 20; ++iter) {
    auto q = random_admissible_quiver(rng, 4);
    Rep m = random_rep(rng, q, 3);
    Rep n = random_rep(rng, q, 3);
    RepMap f = random_rep_map(rng, m, n);
    auto [k, kincl] = kernel(f);
    ImageData img = image(f);
    if (k.total_dim() == 0 && img.image.total_dim() == 0) continue;
    ++checked;
    for (int i : q->occurring_weights()) {
      // 0 -> ker -> m -> im -> 0 stays exact after W_{<=i}.
      RepMap wf = w_le_restrict(img.corestriction, i);
      auto wk = w_le_module(k, i);
      CHECK(kernel(wf).rep.dims() == wk.rep.dims());
      CHECK(image(wf).image.dims() == w_le_module(img.image, i).rep.dims());
      // Separated / exhaustive.
      CHECK(w_le_module(m, q->max_weight()).rep.dims() == m.dims());
      CHECK(w_le_module(m, q->min_weight() - 1).rep.total_dim() == 0);
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("slice orthogonality") {
  Rng rng(29);
  for (int iter = 0; iter < 15; ++iter) {
    auto q = random_admissible_quiver(rng, 4);
    Rep m = random_rep(rng, q, 3);
    auto ws = q->occurring_weights();
    for (size_t a = 0; a < ws.size(); ++a)
      for (size_t b = 0; b < ws.size(); ++b) {
        if (a == b) continue;
        Rep ga = gr_module(m, ws[a]);
        Rep gb = gr_module(m, ws[b]);
        CHECK(hom_dim(ga, gb) == 0);
      }
  }
}

TEST_CASE("module isomorphism search") {
  auto q = fixture_q1();
  int u = vtx(q, "u"), v = vtx(q, "v");
  Rep pu = projective(q, u);
  CHECK(modules_isomorphic(pu, pu));
  CHECK(!modules_isomorphic(pu, direct_sum({simple(q, u), simple(q, v)}).sum));
  CHECK(!modules_isomorphic(simple(q, u), simple(q, v)));
  // Same dimension vector, different structure: P_u vs S_u + S_v.
  Rep split = direct_sum({simple(q, u), simple(q, v)}).sum;
  CHECK(pu.dims() == split.dims());
  CHECK(!modules_isomorphic(pu, split));
}
