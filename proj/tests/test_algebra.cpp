#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "shl/algebra.hpp"

using namespace shl;

namespace {

// Oracle: plain k x k integer matrices, multiplied by the textbook row-column
// rule. Independent of AlgebraSpec.
using Mat = std::vector<std::vector<long>>;

Mat mat_zero(int k) { return Mat(static_cast<size_t>(k), std::vector<long>(static_cast<size_t>(k), 0)); }

Mat mat_mul(const Mat& a, const Mat& b) {
    int k = static_cast<int>(a.size());
    Mat r = mat_zero(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int l = 0; l < k; ++l) r[i][j] += a[i][l] * b[l][j];
    return r;
}

Mat elem_to_mat(const AlgElem& x, int k) {
    Mat m = mat_zero(k);
    for (const auto& [idx, c] : x.coeffs())
        m[static_cast<size_t>(idx / k)][static_cast<size_t>(idx % k)] = static_cast<long>(c);
    return m;
}

AlgElem mat_to_elem(const Mat& m, const std::shared_ptr<const AlgebraSpec>& spec, int k) {
    AlgElem x;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (m[i][j] != 0) x += AlgElem::basis(spec, i * k + j, m[i][j]);
    return x;
}

// Oracle: enumerate words over g letters by length then lexicographic order,
// independently of the index arithmetic under test.
std::vector<std::vector<int>> words_up_to(int g, int maxlen) {
    std::vector<std::vector<int>> all;
    std::vector<std::vector<int>> layer{{}};
    for (int l = 1; l <= maxlen; ++l) {
        std::vector<std::vector<int>> next;
        for (const auto& w : layer)
            for (int a = 0; a < g; ++a) {
                auto v = w;
                v.push_back(a);
                next.push_back(v);
            }
        std::sort(next.begin(), next.end());
        for (const auto& w : next) all.push_back(w);
        layer = next;
    }
    return all;
}

long sample_index(std::mt19937_64& rng, long bound) {
    long lim = bound >= 0 ? std::min<long>(bound, 9) : 9;
    return static_cast<long>(rng() % static_cast<unsigned long>(lim));
}

}  // namespace

TEST_CASE("basis products are associative on sampled triples") {
    std::mt19937_64 rng(20260815);
    for (const std::string name :
         {"integers", "poly1", "dual", "matrix(2)", "matrix(3)", "free(2)"}) {
        auto spec = make_algebra(name);
        for (int trial = 0; trial < 60; ++trial) {
            long i = sample_index(rng, spec->basis_bound());
            long j = sample_index(rng, spec->basis_bound());
            long k = sample_index(rng, spec->basis_bound());
            AlgElem a = AlgElem::basis(spec, i), b = AlgElem::basis(spec, j),
                    c = AlgElem::basis(spec, k);
            INFO(name << " indices " << i << "," << j << "," << k);
            CHECK((a * b) * c == a * (b * c));
        }
    }
}

TEST_CASE("commutativity flags match sampled products") {
    std::mt19937_64 rng(7);
    for (const std::string name : {"integers", "poly1", "dual", "matrix(2)", "free(2)"}) {
        auto spec = make_algebra(name);
        bool all_commute = true;
        for (int trial = 0; trial < 40; ++trial) {
            long i = sample_index(rng, spec->basis_bound());
            long j = sample_index(rng, spec->basis_bound());
            AlgElem a = AlgElem::basis(spec, i), b = AlgElem::basis(spec, j);
            if (a * b != b * a) all_commute = false;
        }
        if (spec->commutative()) CHECK(all_commute);
        else CHECK_FALSE(all_commute);
    }
}

TEST_CASE("matrix algebra agrees with literal matrix multiplication") {
    for (int k : {2, 3}) {
        auto spec = make_algebra("matrix(" + std::to_string(k) + ")");
        std::mt19937_64 rng(static_cast<unsigned long>(100 + k));
        for (int trial = 0; trial < 25; ++trial) {
            AlgElem a, b;
            for (int e = 0; e < 4; ++e) {
                long i = static_cast<long>(rng() % static_cast<unsigned long>(k * k));
                long coeff = static_cast<long>(rng() % 7) - 3;
                a += AlgElem::basis(spec, i, coeff);
                long i2 = static_cast<long>(rng() % static_cast<unsigned long>(k * k));
                long c2 = static_cast<long>(rng() % 7) - 3;
                b += AlgElem::basis(spec, i2, c2);
            }
            Mat expect = mat_mul(elem_to_mat(a, k), elem_to_mat(b, k));
            CHECK(a * b == mat_to_elem(expect, spec, k));
        }
    }
}

TEST_CASE("dual numbers multiply by the epsilon rule") {
    auto d = make_algebra("dual");
    auto mk = [&](long a, long b) {
        return AlgElem::basis(d, 0, a) + AlgElem::basis(d, 1, b);
    };
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        long a = static_cast<long>(rng() % 11) - 5, b = static_cast<long>(rng() % 11) - 5;
        long c = static_cast<long>(rng() % 11) - 5, e = static_cast<long>(rng() % 11) - 5;
        // (a + b x)(c + e x) = ac + (ae + bc) x with x^2 = 0
        CHECK(mk(a, b) * mk(c, e) == mk(a * c, a * e + b * c));
    }
    AlgElem x = AlgElem::basis(d, 1);
    CHECK((x * x).is_zero());
}

TEST_CASE("poly1 basis is the monomial ladder") {
    auto p = make_algebra("poly1");
    CHECK(AlgElem::basis(p, 2) * AlgElem::basis(p, 5) == AlgElem::basis(p, 7));
    CHECK(p->basis_label(0) == "1");
    CHECK(p->basis_label(1) == "x");
    CHECK(p->basis_label(4) == "x^4");
    CHECK(*algebra_unit(p) == AlgElem::basis(p, 0));
}

TEST_CASE("free algebra word indexing matches enumeration order") {
    for (int g : {1, 2, 3}) {
        auto ws = words_up_to(g, g == 1 ? 6 : 3);
        for (size_t pos = 0; pos < ws.size(); ++pos) {
            CHECK(free_word_index(g, ws[pos]) == static_cast<long>(pos));
            CHECK(free_word_of_index(g, static_cast<long>(pos)) == ws[pos]);
        }
    }
    auto f2 = make_algebra("free(2)");
    // a2 . (a1 . a2) concatenates
    AlgElem w = AlgElem::basis(f2, free_word_index(2, {1})) *
                AlgElem::basis(f2, free_word_index(2, {0, 1}));
    CHECK(w == AlgElem::basis(f2, free_word_index(2, {1, 0, 1})));
    CHECK(f2->basis_label(free_word_index(2, {1, 0})) == "a2.a1");
    CHECK(!algebra_unit(f2).has_value());
}

TEST_CASE("matrix unit is two sided") {
    for (const std::string name : {"matrix(2)", "matrix(3)", "dual", "poly1", "integers"}) {
        auto spec = make_algebra(name);
        AlgElem u = *algebra_unit(spec);
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 15; ++trial) {
            long i = sample_index(rng, spec->basis_bound());
            AlgElem e = AlgElem::basis(spec, i);
            CHECK(u * e == e);
            CHECK(e * u == e);
        }
    }
}

TEST_CASE("zero element is spec agnostic") {
    AlgElem z;
    auto p = make_algebra("poly1");
    AlgElem x = AlgElem::basis(p, 1);
    CHECK((z + x) == x);
    CHECK((x - x) == z);
    CHECK((x - x).spec() == nullptr);
    CHECK((z * x).is_zero());
    auto m = make_algebra("matrix(2)");
    AlgElem e = AlgElem::basis(m, 0);
    CHECK_THROWS_AS(x + e, error);
    CHECK((z + e) == e);  // zero adopts either algebra
}

TEST_CASE("integer scaling and normal form") {
    auto p = make_algebra("poly1");
    AlgElem x = AlgElem::basis(p, 1);
    CHECK(Int(0) * x == AlgElem());
    CHECK(Int(-2) * x + Int(2) * x == AlgElem());
    CHECK(to_string(Int(3) * x - AlgElem::basis(p, 0)) == "-1 + 3*x");
    CHECK(to_string(AlgElem()) == "0");
    CHECK(to_string(AlgElem::integer(-7)) == "-7");
}

TEST_CASE("ncpoly parser matches hand built terms") {
    std::vector<std::string> gens{"a", "b"};
    NCPoly p = parse_ncpoly("2*a*b - b^2*a + 3", gens);
    NCPoly want;
    want.terms[{0, 1}] = 2;
    want.terms[{1, 1, 0}] = -1;
    want.terms[{}] = 3;
    CHECK(p == want);

    CHECK(parse_ncpoly("a*b - 1", gens) == parse_ncpoly("-1 + a*b", gens));
    CHECK(parse_ncpoly("a - a", gens).is_zero());
    CHECK(parse_ncpoly("2*3", gens) == parse_ncpoly("6", gens));
    CHECK_THROWS_AS(parse_ncpoly("a + ", gens), error);
    CHECK_THROWS_AS(parse_ncpoly("c", gens), error);
    CHECK_THROWS_AS(parse_ncpoly("a b", gens), error);
}

TEST_CASE("hom validation accepts and rejects generator images") {
    // Presentation of 2x2 matrix units: four generators e00,e01,e10,e11.
    FinPresAlgebra pres;
    pres.name = "mat2units";
    pres.gens = {"e00", "e01", "e10", "e11"};
    auto rel = [&](const std::string& s) { pres.rels.push_back(parse_ncpoly(s, pres.gens)); };
    rel("e00*e00 - e00");
    rel("e00*e01 - e01");
    rel("e01*e10 - e00");
    rel("e10*e01 - e11");
    rel("e01*e01");
    rel("e10*e10");

    auto m = make_algebra("matrix(2)");
    Hom<AlgElem> h{pres,
                   {AlgElem::basis(m, 0), AlgElem::basis(m, 1), AlgElem::basis(m, 2),
                    AlgElem::basis(m, 3)},
                   algebra_unit(m)};
    CHECK(!h.failing_relation().has_value());
    h.validate();

    Hom<AlgElem> bad = h;
    bad.images[1] = AlgElem::basis(m, 3);  // e01 -> e11 breaks e01*e10 = e00
    auto fr = bad.failing_relation();
    REQUIRE(fr.has_value());
    CHECK_THROWS_AS(bad.validate(), error);

    // Constant term exercises the explicit unit.
    FinPresAlgebra inv;
    inv.name = "idem";
    inv.gens = {"p"};
    inv.rels = {parse_ncpoly("p*p - p", inv.gens), parse_ncpoly("p - p*p", inv.gens)};
    Hom<AlgElem> hp{inv, {AlgElem::basis(m, 0)}, std::nullopt};
    CHECK(!hp.failing_relation().has_value());
    FinPresAlgebra unital;
    unital.name = "proj_complement";
    unital.gens = {"p"};
    unital.rels = {parse_ncpoly("p*p - p", unital.gens)};
    NCPoly q = parse_ncpoly("1 - p", unital.gens);
    Hom<AlgElem> hu{unital, {AlgElem::basis(m, 0)}, algebra_unit(m)};
    CHECK(hu(q) == AlgElem::basis(m, 3));  // 1 - e00 = e11
    Hom<AlgElem> no_unit{unital, {AlgElem::basis(m, 0)}, std::nullopt};
    CHECK_THROWS_AS(no_unit(q), error);
}

TEST_CASE("coefficient morphisms apply and validate") {
    auto p = make_algebra("poly1");
    auto m = make_algebra("matrix(2)");

    // poly1 -> matrix(2), x -> e01 + e10 (square = identity)
    AlgElem s = AlgElem::basis(m, 1) + AlgElem::basis(m, 2);
    CoeffHom f = coeff_hom_poly1(m, s);
    f.validate(6);
    CHECK(f.apply(AlgElem::basis(p, 2)) == *algebra_unit(m));
    CHECK(f.apply(AlgElem::basis(p, 3)) == s);
    CHECK(f.apply(AlgElem()) == AlgElem());

    CoeffHom id = coeff_hom_identity(m);
    id.validate(4);
    AlgElem e01 = AlgElem::basis(m, 1);
    CHECK(id.apply(e01) == e01);

    // free(2) -> matrix(2): a1 -> e01, a2 -> e10; word a1.a2 -> e00
    auto f2 = make_algebra("free(2)");
    CoeffHom ev = coeff_hom_free(f2, m, {AlgElem::basis(m, 1), AlgElem::basis(m, 2)});
    ev.validate(8);
    CHECK(ev.apply(AlgElem::basis(f2, free_word_index(2, {0, 1}))) == AlgElem::basis(m, 0));
    CHECK_THROWS_AS(coeff_hom_free(f2, m, {AlgElem::basis(m, 1)}), error);

    // x -> e01 is not multiplicative as a map from dual (x^2 = 0 fails)
    CoeffHom bad(make_algebra("dual"), m, [&](long i) {
        return i == 0 ? *algebra_unit(m) : AlgElem::basis(m, 1) + AlgElem::basis(m, 2);
    });
    CHECK_THROWS_AS(bad.validate(2), error);
}
