#include <catch2/catch_amalgamated.hpp>

#include "shl/homotopy.hpp"

using namespace shl;

namespace {

const AlgElem ZERO;

SimplexPoly<AlgElem> apoly(const std::map<std::vector<int>, Int>& terms) {
    SimplexPoly<AlgElem> p = SimplexPoly<AlgElem>::zero(1);
    for (const auto& [m, c] : terms) p += SimplexPoly<AlgElem>::monomial(m, AlgElem::integer(c));
    return p;
}

// Interval family with the given edge polynomial over the full interval pair.
PolyFamily<AlgElem> edge_family(const PairContext& ctx, const SimplexPoly<AlgElem>& p) {
    std::map<CellId, SimplexPoly<AlgElem>> top;
    top[CellId{1, 0}] = p;
    return PolyFamily<AlgElem>::from_top(ctx, top);
}

SimplexPoly<AlgElem> scaled(const std::map<std::vector<int>, Int>& terms, const AlgElem& b) {
    SimplexPoly<AlgElem> p = SimplexPoly<AlgElem>::zero(1);
    for (const auto& [m, c] : terms) p += SimplexPoly<AlgElem>::monomial(m, c * b);
    return p;
}

// Elementary homotopy a1 -> b * p(t) over matrix coefficients: endpoints are
// the evaluations of p at 0 and 1.
SubdividedHomotopy<AlgElem> matrix_line(const PairContext& ctx, const AlgElem& b,
                                        const std::map<std::vector<int>, Int>& terms) {
    PolyFamily<AlgElem> fam = edge_family(ctx, scaled(terms, b));
    FinPresAlgebra src = free_presentation(1);
    return {0,
            Hom<PolyFamily<AlgElem>>{src, {fam}, std::nullopt},
            Hom<AlgElem>{src, {interval_endpoint(fam, 1)}, std::nullopt},
            Hom<AlgElem>{src, {interval_endpoint(fam, 0)}, std::nullopt}};
}

}  // namespace

TEST_CASE("constant homotopies validate and glue to one level up") {
    auto m2 = make_algebra("matrix(2)");
    FinPresAlgebra src = free_presentation(2);
    Hom<AlgElem> f{src, {AlgElem::basis(m2, 1, 1), AlgElem::basis(m2, 2, -3)}, std::nullopt};

    HomotopyCert<AlgElem> r = refl_cert(f);
    CHECK(check_cert(r).ok);
    CHECK(r.links[0].f0 == f);
    CHECK(r.links[0].f1 == f);

    SubdividedHomotopy<AlgElem> g = concat(r, r);
    CHECK(g.level == 1);
    CHECK(g.f0 == f);
    CHECK(g.f1 == f);
    CHECK(check_cert(HomotopyCert<AlgElem>{{g}}).ok);
}

TEST_CASE("gluing restricts to the inputs on the two halves") {
    PairContext ci = interval_context(0);
    auto m2 = make_algebra("matrix(2)");
    AlgElem e01 = AlgElem::basis(m2, 1, 1);
    AlgElem e11 = AlgElem::basis(m2, 3, 1);

    // 0 --> e01 --> e01 + e11, as two elementary homotopies
    SubdividedHomotopy<AlgElem> a = matrix_line(ci, e01, {{{1}, 1}});
    PolyFamily<AlgElem> fb =
        edge_family(ci, SimplexPoly<AlgElem>::constant(1, e01) +
                            SimplexPoly<AlgElem>::variable(1, 1, e11));
    SubdividedHomotopy<AlgElem> b{0,
                                  Hom<PolyFamily<AlgElem>>{a.h.source, {fb}, std::nullopt},
                                  a.f1,
                                  Hom<AlgElem>{a.h.source, {e01 + e11}, std::nullopt}};
    REQUIRE(!check_link(a));
    REQUIRE(!check_link(b));

    SubdividedHomotopy<AlgElem> g = glue(a, b);
    CHECK(g.level == 1);
    CHECK(g.f0 == a.f0);
    CHECK(g.f1 == b.f1);

    PairContext up = ci.at_level(1);
    SimplicialMap i0 = sd_half_inclusion(up, 0);
    SimplicialMap i1 = sd_half_inclusion(up, 1);
    i0.validate();
    i1.validate();
    CHECK(pullback_family(g.h.images[0], i0, ci) == a.h.images[0]);
    CHECK(pullback_family(g.h.images[0], i1, ci) == reverse_interval_family(fb));

    // mixed levels: the lower input is lifted first
    SubdividedHomotopy<AlgElem> g2 = glue(a, lift_link(b, 1));
    CHECK(g2.level == 2);
    CHECK(g2.f0 == a.f0);
    CHECK(g2.f1 == b.f1);
}

TEST_CASE("corrupted certificates are rejected with a reason") {
    PairContext ci = interval_context(0);
    auto m2 = make_algebra("matrix(2)");
    AlgElem e01 = AlgElem::basis(m2, 1, 1);
    SubdividedHomotopy<AlgElem> a = matrix_line(ci, e01, {{{1}, 1}});

    CHECK_FALSE(check_cert(HomotopyCert<AlgElem>{}).ok);
    CHECK(check_cert(HomotopyCert<AlgElem>{}).detail == "empty certificate");

    SubdividedHomotopy<AlgElem> bad = a;
    bad.f1.images[0] = 2 * e01;
    CertReport r1 = check_cert(HomotopyCert<AlgElem>{{bad}});
    CHECK_FALSE(r1.ok);
    CHECK(r1.detail == "link 0: generator 0 does not restrict to f1");

    SubdividedHomotopy<AlgElem> wrongl = a;
    wrongl.level = 1;
    CHECK(check_cert(HomotopyCert<AlgElem>{{wrongl}}).detail ==
          "link 0: family level differs from the declared level");

    SubdividedHomotopy<AlgElem> c = matrix_line(ci, e01, {{{2}, 1}});  // 0 -> e01 again
    CertReport r2 = check_cert(HomotopyCert<AlgElem>{{a, c}});        // c starts at 0, not e01
    CHECK_FALSE(r2.ok);
    CHECK(r2.detail == "chain breaks after link 0");

    CHECK_THROWS_AS(concat(HomotopyCert<AlgElem>{{a}}, HomotopyCert<AlgElem>{{a}}), error);

    SubdividedHomotopy<AlgElem> other = a;
    other.h.source = free_presentation(2);
    CHECK_THROWS_AS(glue(a, other), error);
}

TEST_CASE("reversal is an involution and flips endpoints") {
    PairContext ci = interval_context(0);
    auto m2 = make_algebra("matrix(2)");
    AlgElem e01 = AlgElem::basis(m2, 1, 1);
    AlgElem e11 = AlgElem::basis(m2, 3, 1);

    SubdividedHomotopy<AlgElem> a = matrix_line(ci, e01, {{{1}, 1}});
    PolyFamily<AlgElem> fb =
        edge_family(ci, SimplexPoly<AlgElem>::constant(1, e01) +
                            SimplexPoly<AlgElem>::variable(1, 1, e11));
    SubdividedHomotopy<AlgElem> b{0, Hom<PolyFamily<AlgElem>>{a.h.source, {fb}, std::nullopt},
                                  a.f1, Hom<AlgElem>{a.h.source, {e01 + e11}, std::nullopt}};
    HomotopyCert<AlgElem> c{{a, b}};

    HomotopyCert<AlgElem> rc = reverse(c);
    CHECK(check_cert(rc).ok);
    CHECK(rc.links.front().f0 == c.links.back().f1);
    CHECK(rc.links.back().f1 == c.links.front().f0);
    CHECK(reverse(rc) == c);

    // a subdivided (level >= 1) link reverses through the simplicial flip
    HomotopyCert<AlgElem> g{{glue(a, b)}};
    HomotopyCert<AlgElem> rg = reverse(g);
    CHECK(check_cert(rg).ok);
    CHECK(rg.links[0].f0 == b.f1);
    CHECK(reverse(rg) == g);

    // round trip through concat: c . reverse(c) starts and ends at c's start
    SubdividedHomotopy<AlgElem> loop = concat(c, rc);
    CHECK(loop.f0 == c.links.front().f0);
    CHECK(loop.f1 == c.links.front().f0);
}

TEST_CASE("coefficient maps whisker certificates on the left") {
    PairContext ci = interval_context(0);
    auto p1 = make_algebra("poly1");
    auto m2 = make_algebra("matrix(2)");
    AlgElem x = AlgElem::basis(p1, 1, 1);
    AlgElem x2 = AlgElem::basis(p1, 2, 1);

    SubdividedHomotopy<AlgElem> a = matrix_line(ci, x, {{{1}, 1}});  // 0 -> x
    PolyFamily<AlgElem> fb =
        edge_family(ci, SimplexPoly<AlgElem>::constant(1, x) +
                            SimplexPoly<AlgElem>::variable(1, 1, x2));
    SubdividedHomotopy<AlgElem> b{0, Hom<PolyFamily<AlgElem>>{a.h.source, {fb}, std::nullopt},
                                  a.f1, Hom<AlgElem>{a.h.source, {x + x2}, std::nullopt}};
    HomotopyCert<AlgElem> c{{a, b}};

    CHECK(whisker_left(coeff_hom_identity(p1), c) == c);

    // x -> e01 kills x^2; the whiskered chain is still a valid certificate
    CoeffHom g = coeff_hom_poly1(m2, AlgElem::basis(m2, 1, 1));
    HomotopyCert<AlgElem> wc = whisker_left(g, c);
    CHECK(check_cert(wc).ok);
    CHECK(wc.links[1].f1.images[0] == AlgElem::basis(m2, 1, 1));

    // whiskering a constant homotopy gives the constant homotopy of the image
    Hom<AlgElem> f{free_presentation(1), {x}, std::nullopt};
    Hom<AlgElem> gf{free_presentation(1), {AlgElem::basis(m2, 1, 1)}, std::nullopt};
    CHECK(whisker_left(g, refl_cert(f)) == refl_cert(gf));

    // whiskering commutes with gluing
    CHECK(HomotopyCert<AlgElem>{{glue(wc.links[0], wc.links[1])}} ==
          whisker_left(g, HomotopyCert<AlgElem>{{glue(a, b)}}));
}

TEST_CASE("generator substitution whiskers certificates on the right") {
    PairContext ci = interval_context(0);
    auto m2 = make_algebra("matrix(2)");
    AlgElem e01 = AlgElem::basis(m2, 1, 1);
    AlgElem e10 = AlgElem::basis(m2, 2, 1);

    FinPresAlgebra src = free_presentation(2);
    PolyFamily<AlgElem> f1 = edge_family(ci, scaled({{{1}, 1}}, e01));
    PolyFamily<AlgElem> f2 = edge_family(ci, scaled({{{1}, 1}, {{2}, 2}}, e10));
    auto ends = [&](const PolyFamily<AlgElem>& f, int i) { return interval_endpoint(f, i); };
    SubdividedHomotopy<AlgElem> l{
        0, Hom<PolyFamily<AlgElem>>{src, {f1, f2}, std::nullopt},
        Hom<AlgElem>{src, {ends(f1, 1), ends(f2, 1)}, std::nullopt},
        Hom<AlgElem>{src, {ends(f1, 0), ends(f2, 0)}, std::nullopt}};
    HomotopyCert<AlgElem> c{{l}};
    REQUIRE(check_cert(c).ok);

    CHECK(whisker_right(c, src, {NCPoly::gen(0), NCPoly::gen(1)}) == c);

    HomotopyCert<AlgElem> sw = whisker_right(c, src, {NCPoly::gen(1), NCPoly::gen(0)});
    CHECK(sw.links[0].h.images[0] == f2);
    CHECK(sw.links[0].h.images[1] == f1);

    // substitute the product word a1*a2: the family is the pointwise product
    HomotopyCert<AlgElem> pr =
        whisker_right(c, free_presentation(1), {NCPoly::word({0, 1})});
    CHECK(check_cert(pr).ok);
    CHECK(pr.links[0].h.images[0] == f1 * f2);
    CHECK(pr.links[0].f0.images[0] == ZERO);

    CHECK_THROWS_AS(whisker_right(c, free_presentation(3), {NCPoly::gen(0)}), error);
}

TEST_CASE("two-simplex witness inverts interval families up to homotopy") {
    PairContext ci = interval_context(0);
    auto p1 = make_algebra("poly1");
    AlgElem x = AlgElem::basis(p1, 1, 1);

    // t^2 - t^3 vanishes at both ends and is not reversal-symmetric
    PolyFamily<AlgElem> f = edge_family(ci, scaled({{{2}, 1}, {{3}, -1}}, x));
    REQUIRE(!(reverse_interval_family(f) == f));
    Hom<PolyFamily<AlgElem>> h{free_presentation(1), {f}, std::nullopt};

    InverseWitnessReport<AlgElem> rep = inverse_witness(h);
    CHECK(rep.ok);
    CHECK(rep.edge0_is_reverse);
    CHECK(rep.edge1_is_zero);
    CHECK(rep.edge2_is_f);
    // frozen witness polynomial: t1^2 - t1^3 spread over the two-simplex
    CHECK(rep.alpha.images[0].component(2, 0) ==
          SimplexPoly<AlgElem>::monomial({2, 0}, x) -
              SimplexPoly<AlgElem>::monomial({3, 0}, x));

    // x * t0 t1 = x(t1 - t1^2), and the same with matrix coefficients
    PolyFamily<AlgElem> fx = edge_family(ci, scaled({{{1}, 1}, {{2}, -1}}, x));
    CHECK(inverse_witness(Hom<PolyFamily<AlgElem>>{free_presentation(1), {fx}, std::nullopt}).ok);
    auto m2 = make_algebra("matrix(2)");
    PolyFamily<AlgElem> g =
        edge_family(ci, scaled({{{1}, 1}, {{2}, -1}}, AlgElem::basis(m2, 1, 5)));
    CHECK(inverse_witness(Hom<PolyFamily<AlgElem>>{free_presentation(1), {g}, std::nullopt}).ok);
    CHECK(inverse_witness(Hom<PolyFamily<AlgElem>>{free_presentation(1),
                                                   {PolyFamily<AlgElem>::zero(ci)}, std::nullopt})
              .ok);

    // non-relative input is refused
    PolyFamily<AlgElem> bad = edge_family(ci, scaled({{{1}, 1}}, x));
    CHECK_THROWS_AS(
        inverse_witness(Hom<PolyFamily<AlgElem>>{free_presentation(1), {bad}, std::nullopt}),
        error);
    // and so are families over anything but the level-0 interval
    PolyFamily<AlgElem> lifted = at_level(f, 1);
    CHECK_THROWS_AS(
        inverse_witness(Hom<PolyFamily<AlgElem>>{free_presentation(1), {lifted}, std::nullopt}),
        error);
}

TEST_CASE("the scaling cylinder is a homotopy from the basepoint collapse") {
    PairContext ci(cube_pair(1), 0);
    SimplexPoly<AlgElem> bump = apoly({{{1}, 1}, {{2}, -1}});
    PolyFamily<AlgElem> fam = edge_family(ci, bump);

    auto H = cylinder_H(fam);
    PairContext u = interval_context(0);
    NestedFamily cur = curry_u(H, u);

    using R0 = PolyFamily<AlgElem>;
    FinPresAlgebra src = free_presentation(1);
    SubdividedHomotopy<R0> link{0,
                                Hom<PolyFamily<R0>>{src, {cur}, std::nullopt},
                                Hom<R0>{src, {eval_u(H, 0)}, std::nullopt},
                                Hom<R0>{src, {eval_u(H, 1)}, std::nullopt}};
    CHECK(check_cert(HomotopyCert<R0>{{link}}).ok);
    CHECK(eval_u(H, 1) == fam);
    CHECK(eval_u(H, 0).is_zero());
    CHECK(interval_endpoint(cur, 1) == eval_u(H, 0));
    CHECK(interval_endpoint(cur, 0) == fam);

    // it reverses and glues like any other certificate
    SubdividedHomotopy<R0> back = concat(HomotopyCert<R0>{{link}},
                                         reverse(HomotopyCert<R0>{{link}}));
    CHECK(back.level == 1);
    CHECK(back.f0 == back.f1);

    // non-relative family: the 0-end is the constant at the basepoint value
    PairContext cf(full_pair(share(std_simplex(1))), 0);
    PolyFamily<AlgElem> rich = edge_family(cf, apoly({{{0}, 3}, {{1}, 1}}));
    auto H2 = cylinder_H(rich);
    NestedFamily cur2 = curry_u(H2, interval_context(0));
    PolyFamily<AlgElem> iv = cylinder_iota(cf, eval_basepoint(rich));
    CHECK(interval_endpoint(cur2, 1) == iv);
    CHECK(interval_endpoint(cur2, 0) == rich);
    SubdividedHomotopy<R0> link2{0,
                                 Hom<PolyFamily<R0>>{src, {cur2}, std::nullopt},
                                 Hom<R0>{src, {iv}, std::nullopt},
                                 Hom<R0>{src, {rich}, std::nullopt}};
    CHECK(check_cert(HomotopyCert<R0>{{link2}}).ok);
}

TEST_CASE("transition certificates identify classes across levels") {
    PairContext ci(cube_pair(1), 0);
    SimplexPoly<AlgElem> bump = apoly({{{1}, 1}, {{2}, -1}});
    PolyFamily<AlgElem> fam = edge_family(ci, bump);
    FinPresAlgebra src = free_presentation(1);

    using R0 = AlgElem;
    IndClass<R0> u{ci, Hom<PolyFamily<R0>>{src, {fam}, std::nullopt}};
    IndClass<R0> v{ci.at_level(1), Hom<PolyFamily<R0>>{src, {at_level(fam, 1)}, std::nullopt}};

    HomotopyCert<PolyFamily<R0>> w = refl_cert(hom_at_level(u.rep, 1));
    CHECK(ind_class_eq(u, v, w));

    IndClass<R0> v2{ci.at_level(1),
                    Hom<PolyFamily<R0>>{src, {at_level(2 * fam, 1)}, std::nullopt}};
    CHECK_FALSE(ind_class_eq(u, v2, w));

    // a certificate below the representatives' level cannot compare them
    HomotopyCert<PolyFamily<R0>> low = refl_cert(u.rep);
    CHECK_THROWS_AS(ind_class_eq(u, v, low), error);

    // different towers are incomparable
    IndClass<R0> other{interval_context(0),
                       Hom<PolyFamily<R0>>{src, {edge_family(interval_context(0), bump)},
                                           std::nullopt}};
    CHECK_THROWS_AS(ind_class_eq(u, other, w), error);
}

TEST_CASE("levels only increase and null-context homotopies stay degenerate") {
    auto m2 = make_algebra("matrix(2)");
    FinPresAlgebra none = free_presentation(0);
    Hom<AlgElem> f0{none, {}, std::nullopt};

    // no generators, no unit: the constant certificate carries no families
    HomotopyCert<AlgElem> c = refl_cert(f0);
    CHECK(check_cert(c).ok);
    SubdividedHomotopy<AlgElem> g = concat(c, c);
    CHECK(g.level == 1);
    CHECK(check_cert(HomotopyCert<AlgElem>{{g}}).ok);

    SubdividedHomotopy<AlgElem> a =
        matrix_line(interval_context(0), AlgElem::basis(m2, 1, 1), {{{1}, 1}});
    CHECK_THROWS_AS(lift_link(lift_link(a, 2), 1), error);
    CHECK(lift_link(a, 2).level == 2);
    CHECK(!check_link(lift_link(a, 2)));
}
