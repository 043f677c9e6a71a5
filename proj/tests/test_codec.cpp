#include <catch2/catch_amalgamated.hpp>

#include "shl/json_codec.hpp"

#include <string>
#include <vector>

using namespace shl;
using Catch::Matchers::ContainsSubstring;
using Fam = PolyFamily<AlgElem>;

namespace {

std::shared_ptr<const AlgebraSpec> P1() { return make_algebra("poly1"); }

}  // namespace

TEST_CASE("simplicial set and pair codecs") {
    SECTION("round trips") {
        SimplicialSet d2 = std_simplex(2);
        SimplicialSet back = decode_sset(encode_sset(d2));
        CHECK(back == d2);
        CHECK(encode_sset(back) == encode_sset(d2));

        SimplicialSet sd1 = *subdivide(share(std_simplex(1))).set;
        CHECK(decode_sset(encode_sset(sd1)) == sd1);

        SimplicialSet c2 = cube(2);
        REQUIRE(c2.is_product());
        SimplicialSet c2back = decode_sset(encode_sset(c2));
        CHECK(c2back == c2);
        REQUIRE(c2back.is_product());
        REQUIRE(c2back.arity() == c2.arity());
        for (int a = 0; a < c2.arity(); ++a) CHECK(c2back.factor(a) == c2.factor(a));
        for (int d = 0; d <= c2.dim(); ++d)
            for (int k = 0; k < c2.size(d); ++k) CHECK(c2back.tuple(d, k) == c2.tuple(d, k));
        CHECK(encode_sset(c2back) == encode_sset(c2));

        SimplicialSet uni = SimplicialSet::make({{"Δ"}}, {{{}}});
        CHECK(decode_sset(encode_sset(uni)) == uni);

        SimplicialPair p = cube_simplex_pair(1, 1);
        SimplicialPair pback = decode_pair(encode_pair(p));
        CHECK(pback == p);
        CHECK(encode_pair(pback) == encode_pair(p));
    }

    SECTION("rejections carry a path") {
        CHECK_THROWS_WITH(decode_sset("{oops"), ContainsSubstring("codec: /:"));
        CHECK_THROWS_WITH(decode_sset(R"({"labels":[],"faces":[]})"),
                          ContainsSubstring("codec: /: missing field 'product'"));
        CHECK_THROWS_WITH(decode_sset(R"({"labels":[],"faces":[],"product":null,"extra":1})"),
                          ContainsSubstring("codec: /extra: unknown field"));
        CHECK_THROWS_WITH(decode_sset(R"({"labels":{},"faces":[],"product":null})"),
                          ContainsSubstring("codec: /labels: expected an array"));
        CHECK_THROWS_WITH(
            decode_sset(
                R"({"labels":[["v0","v1"],["e"]],"faces":[[[],[]],[[1,"x"]]],"product":null})"),
            ContainsSubstring("codec: /faces/1/0/1: expected an integer"));
        CHECK_THROWS_WITH(
            decode_sset(R"({"labels":[["v0","v1"],["e"]],"faces":[[[],[]],[[1]]],"product":null})"),
            ContainsSubstring("codec: /: face count mismatch at e"));

        const std::string interval =
            R"({"labels":[["v0","v1"],["e"]],"faces":[[[],[]],[[1,0]]],"product":null})";
        CHECK_THROWS_WITH(decode_pair(R"({"set":)" + interval + R"(,"sub":[[0,0],[1]]})"),
                          ContainsSubstring("codec: /: subcomplex not closed under faces at e"));
        CHECK_THROWS_WITH(decode_pair(R"({"set":)" + interval + R"(,"sub":[[0,0]]})"),
                          ContainsSubstring("codec: /sub: membership table has wrong dimension range"));
        CHECK_THROWS_WITH(decode_pair(R"({"set":)" + interval + R"(,"sub":[[0,2],[0]]})"),
                          ContainsSubstring("codec: /sub/0/1: expected 0 or 1"));
    }
}

TEST_CASE("family codec") {
    AlgElem x = AlgElem::basis(P1(), 1, 1);
    PairContext c10(cube_simplex_pair(1, 0), 0);
    Fam u = simplex_coordinate(c10, 1, AlgElem::integer(1));
    Fam f = (u - u * u) * Fam::constant(c10, x);

    SECTION("round trips at levels zero and one") {
        Fam back = decode_family(encode_family(f));
        CHECK(back == f);
        CHECK_FALSE(back.context().null());
        CHECK(encode_family(back) == encode_family(f));

        Fam f1 = at_level(f, 1);
        Fam back1 = decode_family(encode_family(f1));
        CHECK(back1 == f1);
        CHECK(back1.context().level() == 1);

        CHECK(encode_family(Fam{}) == "null");
        Fam znull = decode_family("null");
        CHECK(znull.is_zero());
        CHECK(znull.context().null());

        Fam zctx = Fam::zero(c10);
        Fam zback = decode_family(encode_family(zctx));
        CHECK(zback == zctx);
        CHECK_FALSE(zback.context().null());
    }

    SECTION("face incompatibility is rejected with the offending cell") {
        PairContext cd(full_pair(share(std_simplex(1))), 0);
        Fam h = simplex_coordinate(cd, 1, x);
        std::string enc = encode_family(h);
        const std::string z0 = R"({"nvars":0,"terms":[]})";
        const std::string zm = R"({"nvars":-1,"terms":[]})";
        const std::string bad5 =
            R"({"nvars":0,"terms":[{"coeff":{"algebra":"poly1","coeffs":[[0,"5"]]},"exps":[]}]})";
        std::string needle = z0;
        auto pos = enc.find(z0);
        if (pos == std::string::npos) {
            pos = enc.find(zm);
            needle = zm;
        }
        REQUIRE(pos != std::string::npos);
        enc.replace(pos, needle.size(), bad5);
        CHECK_THROWS_WITH(decode_family(enc), ContainsSubstring("codec: /components") &&
                                                  ContainsSubstring("face incompatibility at"));
    }

    SECTION("polynomial schema errors") {
        const std::string point =
            R"({"set":{"labels":[["p"]],"faces":[[[]]],"product":null},"sub":[[0]]})";
        const std::string head = R"({"pair":)" + point + R"(,"level":0,"components":)";
        CHECK_THROWS_WITH(
            decode_family(
                head +
                R"([[{"nvars":0,"terms":[{"coeff":{"algebra":null,"coeffs":[]},"exps":[0]}]}]]})"),
            ContainsSubstring(
                "codec: /components/0/0/terms/0/exps: expected one exponent per variable"));
        CHECK_THROWS_WITH(
            decode_family(
                head +
                R"([[{"nvars":0,"terms":[{"coeff":{"algebra":null,"coeffs":[[0,"1"]]},"exps":[]}]}]]})"),
            ContainsSubstring("coefficients need an algebra"));
        CHECK_THROWS_WITH(decode_family(head + R"([[{"nvars":-2,"terms":[]}]]})"),
                          ContainsSubstring(
                              "codec: /components/0/0/nvars: expected -1 or a nonnegative"));
    }
}

TEST_CASE("hom and certificate codecs") {
    AlgElem x = AlgElem::basis(P1(), 1, 1);
    AlgElem x2 = AlgElem::basis(P1(), 2, 1);
    NCPoly rel = NCPoly::word({0, 1}) + NCPoly::word({1, 0}, -1);
    FinPresAlgebra comm2{"comm2", {"a", "b"}, {rel}};

    SECTION("hom round trips") {
        Hom<AlgElem> h{comm2, {x, x2}, algebra_unit(P1())};
        Hom<AlgElem> back = decode_hom(encode_hom(h));
        CHECK(back == h);
        CHECK(encode_hom(back) == encode_hom(h));

        Int big = Int(1) << 200;
        Hom<AlgElem> hbig{free_presentation(1), {AlgElem::basis(P1(), 3, big)}, std::nullopt};
        CHECK(decode_hom(encode_hom(hbig)) == hbig);
        CHECK_THAT(encode_hom(hbig), ContainsSubstring("\"" + big.str() + "\""));
    }

    SECTION("plain JSON integers are accepted as coefficients") {
        const std::string text =
            R"js({"images":[{"algebra":"poly1","coeffs":[[1,7]]}],)js"
            R"js("source":{"gens":["a"],"name":"free(1)","rels":[]},"unit":null})js";
        Hom<AlgElem> h = decode_hom(text);
        CHECK(h.images.at(0) == Int(7) * x);
    }

    SECTION("hom rejections") {
        const std::string src = R"js("source":{"gens":["a"],"name":"free(1)","rels":[]})js";
        CHECK_THROWS_WITH(
            decode_hom(R"({"images":[{"algebra":"poly1","coeffs":[[1,7.5]]}],)" + src +
                       R"(,"unit":null})"),
            ContainsSubstring("codec: /images/0/coeffs/0/1: expected a decimal string or integer"));
        CHECK_THROWS_WITH(decode_hom(R"({"images":[{"algebra":"quaternions","coeffs":[]}],)" + src +
                                     R"(,"unit":null})"),
                          ContainsSubstring("codec: /images/0/algebra: unknown algebra"));
        CHECK_THROWS_WITH(
            decode_hom(
                R"({"images":[],"source":{"gens":["a"],"name":"f","rels":[{"terms":[{"word":[5],"coeff":"1"}]}]},"unit":null})"),
            ContainsSubstring("codec: /source/rels/0/terms/0/word/0: generator index out of range"));

        Hom<AlgElem> wrong{free_presentation(2), {x}, std::nullopt};
        CHECK_THROWS_WITH(decode_hom(encode_hom(wrong)),
                          ContainsSubstring("codec: /: generator count mismatch"));

        auto M2 = make_algebra("matrix(2)");
        AlgElem m1 = AlgElem::basis(M2, 1, 1);
        AlgElem m2 = AlgElem::basis(M2, 2, 1);
        REQUIRE(m1 * m2 != m2 * m1);
        Hom<AlgElem> bad{comm2, {m1, m2}, algebra_unit(M2)};
        CHECK_THROWS_WITH(decode_hom(encode_hom(bad)),
                          ContainsSubstring("relation does not vanish"));
    }

    SECTION("certificate round trips and stays checkable") {
        Hom<AlgElem> f{free_presentation(1), {x}, std::nullopt};
        HomotopyCert<AlgElem> cert = refl_cert(f);
        HomotopyCert<AlgElem> back = decode_cert(encode_cert(cert));
        CHECK(back == cert);
        CHECK(check_cert(back).ok);
        CHECK(encode_cert(back) == encode_cert(cert));

        HomotopyCert<AlgElem> empty = decode_cert(R"({"links":[]})");
        CHECK(empty.links.empty());
        CHECK_THROWS_WITH(decode_cert(R"({"links":[],"foo":1})"),
                          ContainsSubstring("codec: /foo: unknown field"));
    }
}

TEST_CASE("map simplex and diagram codecs") {
    FinPresAlgebra F1 = free_presentation(1);
    AlgElem x = AlgElem::basis(P1(), 1, 1);
    AlgElem x2 = AlgElem::basis(P1(), 2, 1);
    PairContext c10(cube_simplex_pair(1, 0), 0);
    Fam u = simplex_coordinate(c10, 1, AlgElem::integer(1));
    Fam img = (u - u * u) * Fam::constant(c10, x);

    SECTION("map simplex round trips") {
        MapSimplex x1 = make_map_simplex(F1, 1, 0, 0, {img});
        MapSimplex back = decode_map_simplex(encode_map_simplex(x1));
        CHECK(back == x1);
        CHECK_NOTHROW(validate_map_simplex(back));
        CHECK(encode_map_simplex(back) == encode_map_simplex(x1));

        MapSimplex bp = map_basepoint(F1, 0, 1, 0);
        CHECK(decode_map_simplex(encode_map_simplex(bp)) == bp);

        NCPoly g0 = NCPoly::gen(0);
        SourceWord w = SourceWord::word({g0, g0}) - SourceWord::word({g0 * g0});
        MapSimplex z = zeta_stage(constant_vertex(F1, {x}, 0), {w});
        MapSimplex zback = decode_map_simplex(encode_map_simplex(z));
        CHECK(zback == z);
        CHECK_NOTHROW(validate_map_simplex(zback));
    }

    SECTION("map simplex rejections") {
        CHECK_THROWS_WITH(
            decode_map_simplex(
                R"js({"n":-1,"q":0,"r":0,"source":{"gens":[],"name":"free(0)","rels":[]},"images":[]})js"),
            ContainsSubstring("codec: /n: expected a nonnegative integer"));

        MapSimplex bad{1, 0, 0, c10, Hom<Fam>{F1, {Fam::constant(c10, x)}, std::nullopt}};
        CHECK_THROWS_WITH(decode_map_simplex(encode_map_simplex(bad)),
                          ContainsSubstring(
                              "codec: /: map simplex: generator image does not vanish"));
    }

    SECTION("diagram round trips, validation and classes") {
        MapSimplex v0 = constant_vertex(F1, {x}, 0);
        MapSimplex v1 = constant_vertex(F1, {x2}, 0);
        PairContext c01(cube_simplex_pair(0, 1), 0);
        Fam h = Fam::constant(c01, x) + simplex_coordinate(c01, 1, x2 - x);
        MapSimplex e = make_map_simplex(F1, 0, 1, 0, {h});
        HomotopyCert<AlgElem> cert = refl_cert(Hom<AlgElem>{F1, {x}, std::nullopt});

        StageDiagram s{{v0, v1}, {e}, {CertEdge{0, 0, cert}}};
        std::string enc = encode_diagram(s);
        StageDiagram back = decode_diagram(enc);
        REQUIRE(back.vertices.size() == 2);
        REQUIRE(back.edges.size() == 1);
        REQUIRE(back.certs.size() == 1);
        CHECK(back.vertices[0] == v0);
        CHECK(back.vertices[1] == v1);
        CHECK(back.edges[0] == e);
        CHECK(back.certs[0].a == 0);
        CHECK(back.certs[0].b == 0);
        CHECK(back.certs[0].cert == cert);
        CHECK(encode_diagram(back) == enc);
        CHECK(pi0_partition(back) == std::vector<std::vector<std::size_t>>{{0, 1}});

        StageDiagram dangling{{v0, v1}, {}, {CertEdge{0, 5, cert}}};
        CHECK_THROWS_WITH(decode_diagram(encode_diagram(dangling)),
                          ContainsSubstring("points outside the vertex list"));
    }
}
