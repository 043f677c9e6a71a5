#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "shl/family.hpp"

using namespace shl;

namespace {

// Oracle: evaluate an integer-coefficient simplex polynomial at an integer
// point, by direct expansion.
Int eval_poly(const SimplexPoly<Int>& p, const std::vector<Int>& x) {
    Int acc = 0;
    for (const auto& [m, c] : p.terms()) {
        Int term = c;
        for (size_t i = 0; i < m.size(); ++i)
            for (int e = 0; e < m[i]; ++e) term *= x[i];
        acc += term;
    }
    return acc;
}

// Oracle: the affine simplex map induced by phi transports barycentric mass,
// c_i = sum of b_j over phi(j) = i, computed in full coordinates.
std::vector<Int> transport(const std::vector<int>& word, const std::vector<Int>& x, int n) {
    Int b0 = 1;
    for (const Int& v : x) b0 -= v;
    std::vector<Int> full{b0};
    full.insert(full.end(), x.begin(), x.end());
    std::vector<Int> out(static_cast<size_t>(n) + 1, 0);
    for (size_t j = 0; j < word.size(); ++j) out[static_cast<size_t>(word[j])] += full[j];
    return {out.begin() + 1, out.end()};  // eliminated coordinates
}

SimplexPoly<Int> random_poly(std::mt19937_64& rng, int nvars, int deg, int nterms) {
    SimplexPoly<Int> p = SimplexPoly<Int>::zero(nvars);
    for (int t = 0; t < nterms; ++t) {
        std::vector<int> m(static_cast<size_t>(nvars));
        for (auto& e : m) e = static_cast<int>(rng() % static_cast<unsigned long>(deg + 1));
        p += SimplexPoly<Int>::monomial(m, static_cast<long>(rng() % 9) - 4);
    }
    return p;
}

std::vector<int> random_monotone_word(std::mt19937_64& rng, int m, int n) {
    std::vector<int> w(static_cast<size_t>(m) + 1);
    int cur = static_cast<int>(rng() % static_cast<unsigned long>(n + 1));
    for (auto& v : w) {
        if (cur < n && rng() % 2) cur += static_cast<int>(rng() % static_cast<unsigned long>(n - cur + 1));
        v = cur;
    }
    return w;
}

const AlgElem ONE = AlgElem::integer(1);

}  // namespace

TEST_CASE("ordinal pullback agrees with barycentric mass transport") {
    std::mt19937_64 rng(20260815);
    for (int trial = 0; trial < 120; ++trial) {
        int n = static_cast<int>(rng() % 4);
        int m = static_cast<int>(rng() % 4);
        auto w = random_monotone_word(rng, m, n);
        auto p = random_poly(rng, n, 3, 4);
        auto q = pullback_ordinal(p, w, n);
        std::vector<Int> x(static_cast<size_t>(m));
        for (auto& v : x) v = static_cast<long>(rng() % 11) - 5;
        CHECK(eval_poly(q, x) == eval_poly(p, transport(w, x, n)));
    }
}

TEST_CASE("pullback composes contravariantly") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 1 + static_cast<int>(rng() % 3);
        int k = static_cast<int>(rng() % 4);
        int m = static_cast<int>(rng() % 4);
        auto outer = random_monotone_word(rng, k, n);   // [k] -> [n]
        auto inner = random_monotone_word(rng, m, k);   // [m] -> [k]
        auto p = random_poly(rng, n, 2, 3);
        auto once = pullback_ordinal(pullback_ordinal(p, outer, n), inner, k);
        CHECK(once == pullback_ordinal(p, compose_words(outer, inner), n));
    }
}

TEST_CASE("frozen pullback values on small simplices") {
    auto t1 = SimplexPoly<Int>::variable(1, 1, 1);
    // degeneracies into the 2-simplex
    CHECK(pullback_ordinal(t1, {0, 0, 1}, 1) == SimplexPoly<Int>::variable(2, 2, 1));
    CHECK(pullback_ordinal(t1, {0, 1, 1}, 1) ==
          SimplexPoly<Int>::variable(1, 2, 1) + SimplexPoly<Int>::variable(2, 2, 1));
    // faces of the 2-simplex: t1 restricted along delta_0 is 1 - t1
    auto t1on2 = SimplexPoly<Int>::variable(1, 2, 1);
    auto t2on2 = SimplexPoly<Int>::variable(2, 2, 1);
    CHECK(pullback_ordinal(t1on2, {1, 2}, 2) ==
          SimplexPoly<Int>::constant(1, 1) - SimplexPoly<Int>::variable(1, 1, 1));
    CHECK(pullback_ordinal(t2on2, {1, 2}, 2) == t1);
    // vertex evaluation
    CHECK(pullback_ordinal(t1, {0}, 1).as_constant() == 0);
    CHECK(pullback_ordinal(t1, {1}, 1).as_constant() == 1);
}

TEST_CASE("interval reversal is an involution fixing symmetric polynomials") {
    auto t = SimplexPoly<Int>::variable(1, 1, 1);
    auto one = SimplexPoly<Int>::constant(1, 1);
    CHECK(reverse_interval_poly(t) == one - t);
    CHECK(reverse_interval_poly(reverse_interval_poly(t * t - t)) == t * t - t);
    CHECK(reverse_interval_poly(t * (one - t)) == t * (one - t));
}

TEST_CASE("polynomial ring identities with noncommutative coefficients") {
    auto m2 = make_algebra("matrix(2)");
    AlgElem a = AlgElem::basis(m2, 1), b = AlgElem::basis(m2, 2);  // e01, e10
    auto pa = SimplexPoly<AlgElem>::variable(1, 2, a);
    auto pb = SimplexPoly<AlgElem>::variable(2, 2, b);
    // coefficients multiply in order; variables are central
    CHECK(pa * pb ==
          SimplexPoly<AlgElem>::monomial({1, 1}, AlgElem::basis(m2, 0)));
    CHECK(pb * pa ==
          SimplexPoly<AlgElem>::monomial({1, 1}, AlgElem::basis(m2, 3)));
    CHECK((pa + pb) * (pa + pb) == pa * pb + pb * pa);  // e01^2 = e10^2 = 0
}

TEST_CASE("cube coordinates have the frozen triangle components") {
    auto K = share(cube(2));
    PairContext ctx(full_pair(K), 0);
    auto x = factor_coordinate(ctx, 0, 1, ONE);
    auto y = factor_coordinate(ctx, 1, 1, ONE);

    auto Ta = K->find("0.1~0.1.1|0.1~0.0.1");  // chain through (1,0)
    auto Tb = K->find("0.1~0.0.1|0.1~0.1.1");  // chain through (0,1)
    REQUIRE(Ta.has_value());
    REQUIRE(Tb.has_value());
    auto t1 = SimplexPoly<AlgElem>::variable(1, 2, ONE);
    auto t2 = SimplexPoly<AlgElem>::variable(2, 2, ONE);
    CHECK(x.component(Ta->dim, Ta->idx) == t1 + t2);
    CHECK(y.component(Ta->dim, Ta->idx) == t2);
    CHECK(x.component(Tb->dim, Tb->idx) == t2);
    CHECK(y.component(Tb->dim, Tb->idx) == t1 + t2);

    // binomial identity componentwise (coefficients in the integers)
    auto two_xy = Int(2) * (x * y);
    CHECK((x + y) * (x + y) == x * x + two_xy + y * y);
}

TEST_CASE("family validation rejects tampered components") {
    auto K = share(std_simplex(2));
    PairContext ctx(full_pair(K), 0);
    auto t1 = simplex_coordinate(ctx, 1, ONE);
    t1.validate();

    // rebuild from raw components with one corrupted entry
    std::vector<std::vector<SimplexPoly<AlgElem>>> comps;
    for (int d = 0; d <= K->dim(); ++d) {
        comps.emplace_back();
        for (int k = 0; k < K->size(d); ++k) comps.back().push_back(t1.component(d, k));
    }
    comps[1][0] = SimplexPoly<AlgElem>::constant(1, ONE);
    CHECK_THROWS_AS(PolyFamily<AlgElem>::from_components(ctx, comps), error);
}

TEST_CASE("from_top demands exactly the maximal cells") {
    auto K = share(std_simplex(2));
    PairContext ctx(full_pair(K), 0);
    std::map<CellId, SimplexPoly<AlgElem>> top;
    CHECK_THROWS_AS(PolyFamily<AlgElem>::from_top(ctx, top), error);
    top[CellId{2, 0}] = SimplexPoly<AlgElem>::variable(1, 2, ONE);
    auto f = PolyFamily<AlgElem>::from_top(ctx, top);
    CHECK(f == simplex_coordinate(ctx, 1, ONE));
    top[CellId{0, 0}] = SimplexPoly<AlgElem>::constant(0, ONE);
    CHECK_THROWS_AS(PolyFamily<AlgElem>::from_top(ctx, top), error);
}

TEST_CASE("transition reindexes the interval coordinate as frozen") {
    auto K = share(cube(1));
    PairContext ctx(full_pair(K), 0);
    auto x = simplex_coordinate(ctx, 1, ONE);
    auto x1 = transition(x);
    auto dom = x1.context().domain();

    auto t1 = SimplexPoly<AlgElem>::variable(1, 1, ONE);
    auto check_comp = [&](const std::string& lbl, const SimplexPoly<AlgElem>& want) {
        auto c = dom->find(lbl);
        REQUIRE(c.has_value());
        CHECK(x1.component(c->dim, c->idx) == want);
    };
    check_comp("{0<0.1}", t1);
    check_comp("{1<0.1}", SimplexPoly<AlgElem>::constant(1, ONE));
    check_comp("{0}", SimplexPoly<AlgElem>::zero(0));
    check_comp("{1}", SimplexPoly<AlgElem>::constant(0, ONE));
    check_comp("{0.1}", SimplexPoly<AlgElem>::constant(0, ONE));

    // two independent roads to level 2 agree
    CHECK(transition(x1) == at_level(x, 2));
}

TEST_CASE("kernel membership respects subdivision") {
    PairContext ctx(cube_pair(1), 0);
    auto x = simplex_coordinate(ctx, 1, ONE);
    auto one = PolyFamily<AlgElem>::constant(ctx, ONE);
    auto f = x * (one - x);
    CHECK(f.vanishes_on_sub());
    CHECK_FALSE(x.vanishes_on_sub());
    CHECK(x.kernel_witness().value() == "1");
    for (int r = 1; r <= 2; ++r) {
        CHECK(at_level(f, r).vanishes_on_sub());
        CHECK_FALSE(at_level(x, r).vanishes_on_sub());
    }
    std::string w1 = at_level(x, 1).kernel_witness().value();
    CHECK((w1 == "{0}" || w1 == "{1}"));

    auto sub = subcomplex_set(ctx.level_pair());
    auto rf = restrict_family(f, sub);
    CHECK(rf.is_zero());
    auto rx = restrict_family(x, sub);
    auto v1 = sub.set->find("1");
    REQUIRE(v1.has_value());
    CHECK(rx.component(0, v1->idx).as_constant() == ONE);
}

TEST_CASE("vertex slices evaluate product coordinates") {
    auto Q = share(cube(2));
    PairContext qctx(full_pair(Q), 0);
    auto x = factor_coordinate(qctx, 0, 1, ONE);
    auto y = factor_coordinate(qctx, 1, 1, ONE);

    auto K = share(cube(1));
    PairContext kctx(full_pair(K), 0);
    for (int v : {0, 1}) {
        SimplicialMap slice = insert_vertex_slice(Q, 1, v);  // fix the y factor at vertex v
        auto xv = pullback_family(x, slice, kctx);
        CHECK(xv == simplex_coordinate(kctx, 1, ONE));
        auto yv = pullback_family(y, slice, kctx);
        if (v == 0) CHECK(yv.is_zero());
        else CHECK(yv == PolyFamily<AlgElem>::constant(kctx, ONE));
    }
}

TEST_CASE("coefficient maps act on families") {
    auto p1 = make_algebra("poly1");
    auto m2 = make_algebra("matrix(2)");
    PairContext ctx(cube_pair(1), 0);
    AlgElem xg = AlgElem::basis(p1, 1);
    auto f = simplex_coordinate(ctx, 1, xg);  // t1 with coefficient x

    AlgElem s = AlgElem::basis(m2, 1) + AlgElem::basis(m2, 2);
    CoeffHom h = coeff_hom_poly1(m2, s);
    auto g = f.template map_coeffs<AlgElem>([&](const AlgElem& c) { return h.apply(c); });
    CHECK(g == simplex_coordinate(ctx, 1, s));
    // ring map property on a sample
    auto ff = f * f;
    auto gg = ff.template map_coeffs<AlgElem>([&](const AlgElem& c) { return h.apply(c); });
    CHECK(gg == g * g);
}
