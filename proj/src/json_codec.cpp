#include "shl/json_codec.hpp"

#include <json.hpp>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace shl {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw error("codec: " + (path.empty() ? std::string("/") : path) + ": " + msg);
}

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

/// Requires an object with exactly the given keys; unknown fields are errors.
void expect_object(const json& j, const std::string& path,
                   std::initializer_list<const char*> keys) {
    if (!j.is_object()) fail(path, "expected an object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : keys) known = known || item.key() == k;
        if (!known) fail(at(path, item.key()), "unknown field");
    }
    for (const char* k : keys)
        if (!j.contains(k)) fail(path, std::string("missing field '") + k + "'");
}

const json& as_array(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

long long to_ll(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<long long>();
}

int to_int(const json& j, const std::string& path) {
    long long v = to_ll(j, path);
    if (v < -1000000000 || v > 1000000000) fail(path, "integer out of range");
    return static_cast<int>(v);
}

int to_nonneg(const json& j, const std::string& path) {
    int v = to_int(j, path);
    if (v < 0) fail(path, "expected a nonnegative integer");
    return v;
}

std::string to_str(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

/// Big integers travel as decimal strings; plain JSON integers are accepted.
Int to_big(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (!j.is_string()) fail(path, "expected a decimal string or integer");
    const std::string s = j.get<std::string>();
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) fail(path, "expected a decimal string or integer");
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') fail(path, "expected a decimal string or integer");
    return Int(s);
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail("", e.what());
    }
}

std::vector<int> dec_int_list(const json& j, const std::string& path) {
    const json& a = as_array(j, path);
    std::vector<int> out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(to_int(a[i], at(path, i)));
    return out;
}

// ---- simplicial sets and pairs -------------------------------------------

json enc_ref_j(const SimplexRef& r) {
    return json{{"dim", r.dim}, {"idx", r.idx}, {"word", r.word}};
}

SimplexRef dec_ref_j(const json& j, const std::string& path) {
    expect_object(j, path, {"dim", "idx", "word"});
    return SimplexRef{to_int(j["dim"], at(path, "dim")), to_int(j["idx"], at(path, "idx")),
                      dec_int_list(j["word"], at(path, "word"))};
}

json enc_sset_j(const SimplicialSet& s) {
    json labels = json::array();
    json faces = json::array();
    for (int d = 0; d <= s.dim(); ++d) {
        json lrow = json::array();
        json frow = json::array();
        for (int k = 0; k < s.size(d); ++k) {
            lrow.push_back(s.label(d, k));
            json fl = json::array();
            if (d > 0)
                for (int i = 0; i <= d; ++i) fl.push_back(s.face(d, k, i));
            frow.push_back(std::move(fl));
        }
        labels.push_back(std::move(lrow));
        faces.push_back(std::move(frow));
    }
    json j{{"labels", std::move(labels)}, {"faces", std::move(faces)}, {"product", nullptr}};
    if (s.is_product()) {
        json factors = json::array();
        for (int a = 0; a < s.arity(); ++a) factors.push_back(enc_sset_j(s.factor(a)));
        json tuples = json::array();
        for (int d = 0; d <= s.dim(); ++d) {
            json trow = json::array();
            for (int k = 0; k < s.size(d); ++k) {
                json tl = json::array();
                for (const SimplexRef& r : s.tuple(d, k)) tl.push_back(enc_ref_j(r));
                trow.push_back(std::move(tl));
            }
            tuples.push_back(std::move(trow));
        }
        j["product"] = json{{"factors", std::move(factors)}, {"tuples", std::move(tuples)}};
    }
    return j;
}

SimplicialSet dec_sset_j(const json& j, const std::string& path) {
    expect_object(j, path, {"labels", "faces", "product"});

    std::vector<std::vector<std::string>> labels;
    {
        const std::string lp = at(path, "labels");
        const json& lj = as_array(j["labels"], lp);
        for (std::size_t d = 0; d < lj.size(); ++d) {
            const json& row = as_array(lj[d], at(lp, d));
            std::vector<std::string> lrow;
            for (std::size_t k = 0; k < row.size(); ++k)
                lrow.push_back(to_str(row[k], at(at(lp, d), k)));
            labels.push_back(std::move(lrow));
        }
    }
    std::vector<std::vector<std::vector<int>>> faces;
    {
        const std::string fp = at(path, "faces");
        const json& fj = as_array(j["faces"], fp);
        for (std::size_t d = 0; d < fj.size(); ++d) {
            const json& row = as_array(fj[d], at(fp, d));
            std::vector<std::vector<int>> frow;
            for (std::size_t k = 0; k < row.size(); ++k)
                frow.push_back(dec_int_list(row[k], at(at(fp, d), k)));
            faces.push_back(std::move(frow));
        }
    }

    if (j["product"].is_null()) {
        try {
            return SimplicialSet::make(std::move(labels), std::move(faces));
        } catch (const error& e) {
            fail(path, e.what());
        }
    }

    const std::string pp = at(path, "product");
    const json& pj = j["product"];
    expect_object(pj, pp, {"factors", "tuples"});
    std::vector<SimplicialSet> factors;
    {
        const std::string fp = at(pp, "factors");
        const json& fj = as_array(pj["factors"], fp);
        for (std::size_t a = 0; a < fj.size(); ++a)
            factors.push_back(dec_sset_j(fj[a], at(fp, a)));
    }
    std::vector<std::vector<std::vector<SimplexRef>>> tuples;
    {
        const std::string tp = at(pp, "tuples");
        const json& tj = as_array(pj["tuples"], tp);
        for (std::size_t d = 0; d < tj.size(); ++d) {
            const json& row = as_array(tj[d], at(tp, d));
            std::vector<std::vector<SimplexRef>> trow;
            for (std::size_t k = 0; k < row.size(); ++k) {
                const std::string cp = at(at(tp, d), k);
                const json& cell = as_array(row[k], cp);
                std::vector<SimplexRef> tup;
                for (std::size_t a = 0; a < cell.size(); ++a)
                    tup.push_back(dec_ref_j(cell[a], at(cp, a)));
                trow.push_back(std::move(tup));
            }
            tuples.push_back(std::move(trow));
        }
    }
    try {
        return SimplicialSet::make_product(std::move(factors), std::move(labels),
                                           std::move(faces), std::move(tuples));
    } catch (const error& e) {
        fail(path, e.what());
    }
}

json enc_pair_j(const SimplicialPair& p) {
    json sub = json::array();
    for (const auto& row : p.inL) {
        json srow = json::array();
        for (char c : row) srow.push_back(c ? 1 : 0);
        sub.push_back(std::move(srow));
    }
    return json{{"set", enc_sset_j(*p.K)}, {"sub", std::move(sub)}};
}

SimplicialPair dec_pair_j(const json& j, const std::string& path) {
    expect_object(j, path, {"set", "sub"});
    SimplicialSet s = dec_sset_j(j["set"], at(path, "set"));
    const std::string sp = at(path, "sub");
    std::vector<std::vector<char>> sub;
    {
        const json& sj = as_array(j["sub"], sp);
        for (std::size_t d = 0; d < sj.size(); ++d) {
            const json& row = as_array(sj[d], at(sp, d));
            std::vector<char> srow;
            for (std::size_t k = 0; k < row.size(); ++k) {
                int v = to_int(row[k], at(at(sp, d), k));
                if (v != 0 && v != 1) fail(at(at(sp, d), k), "expected 0 or 1");
                srow.push_back(static_cast<char>(v));
            }
            sub.push_back(std::move(srow));
        }
    }
    if (static_cast<int>(sub.size()) != s.dim() + 1)
        fail(sp, "membership table has wrong dimension range");
    for (int d = 0; d <= s.dim(); ++d)
        if (sub[d].size() != static_cast<std::size_t>(s.size(d)))
            fail(at(sp, static_cast<std::size_t>(d)), "membership table has wrong size");
    SimplicialPair p{share(std::move(s)), std::move(sub)};
    try {
        p.validate();
    } catch (const error& e) {
        fail(path, e.what());
    }
    return p;
}

// ---- algebra elements and polynomials ------------------------------------

json enc_elem_j(const AlgElem& x) {
    json coeffs = json::array();
    for (const auto& [i, c] : x.coeffs()) coeffs.push_back(json::array({i, c.str()}));
    json alg = x.spec() ? json(x.spec()->name()) : json(nullptr);
    return json{{"algebra", std::move(alg)}, {"coeffs", std::move(coeffs)}};
}

AlgElem dec_elem_j(const json& j, const std::string& path) {
    expect_object(j, path, {"algebra", "coeffs"});
    const std::string cp = at(path, "coeffs");
    const json& cj = as_array(j["coeffs"], cp);
    if (j["algebra"].is_null()) {
        if (!cj.empty()) fail(cp, "coefficients need an algebra");
        return AlgElem{};
    }
    std::shared_ptr<const AlgebraSpec> spec;
    try {
        spec = make_algebra(to_str(j["algebra"], at(path, "algebra")));
    } catch (const error& e) {
        fail(at(path, "algebra"), e.what());
    }
    AlgElem acc;
    for (std::size_t t = 0; t < cj.size(); ++t) {
        const std::string tp = at(cp, t);
        const json& entry = as_array(cj[t], tp);
        if (entry.size() != 2) fail(tp, "expected [basis index, coefficient]");
        long i = static_cast<long>(to_ll(entry[0], tp + "/0"));
        Int c = to_big(entry[1], tp + "/1");
        try {
            acc += AlgElem::basis(spec, i, std::move(c));
        } catch (const error& e) {
            fail(tp, e.what());
        }
    }
    return acc;
}

json enc_poly_j(const SimplexPoly<AlgElem>& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms())
        terms.push_back(json{{"exps", e}, {"coeff", enc_elem_j(c)}});
    return json{{"nvars", p.nvars()}, {"terms", std::move(terms)}};
}

SimplexPoly<AlgElem> dec_poly_j(const json& j, const std::string& path) {
    expect_object(j, path, {"nvars", "terms"});
    int nv = to_int(j["nvars"], at(path, "nvars"));
    if (nv < -1) fail(at(path, "nvars"), "expected -1 or a nonnegative variable count");
    const std::string tp = at(path, "terms");
    const json& tj = as_array(j["terms"], tp);
    if (nv == -1) {
        if (!tj.empty()) fail(tp, "terms need a variable count");
        return SimplexPoly<AlgElem>{};
    }
    auto p = SimplexPoly<AlgElem>::zero(nv);
    for (std::size_t t = 0; t < tj.size(); ++t) {
        const std::string ep = at(tp, t);
        expect_object(tj[t], ep, {"exps", "coeff"});
        std::vector<int> exps = dec_int_list(tj[t]["exps"], at(ep, "exps"));
        if (static_cast<int>(exps.size()) != nv)
            fail(at(ep, "exps"), "expected one exponent per variable");
        AlgElem c = dec_elem_j(tj[t]["coeff"], at(ep, "coeff"));
        try {
            p += SimplexPoly<AlgElem>::monomial(std::move(exps), std::move(c));
        } catch (const error& e) {
            fail(ep, e.what());
        }
    }
    return p;
}

// ---- polynomial families ---------------------------------------------------

json enc_components_j(const PolyFamily<AlgElem>& f) {
    const auto dom = f.context().domain();
    json comps = json::array();
    for (int d = 0; d <= dom->dim(); ++d) {
        json row = json::array();
        for (int k = 0; k < dom->size(d); ++k) row.push_back(enc_poly_j(f.component(d, k)));
        comps.push_back(std::move(row));
    }
    return comps;
}

std::vector<std::vector<SimplexPoly<AlgElem>>> dec_components_j(const json& j,
                                                                const std::string& path) {
    const json& cj = as_array(j, path);
    std::vector<std::vector<SimplexPoly<AlgElem>>> comps;
    for (std::size_t d = 0; d < cj.size(); ++d) {
        const json& row = as_array(cj[d], at(path, d));
        std::vector<SimplexPoly<AlgElem>> crow;
        for (std::size_t k = 0; k < row.size(); ++k)
            crow.push_back(dec_poly_j(row[k], at(at(path, d), k)));
        comps.push_back(std::move(crow));
    }
    return comps;
}

json enc_family_j(const PolyFamily<AlgElem>& f) {
    if (f.context().null()) return json(nullptr);
    return json{{"pair", enc_pair_j(f.context().pair())},
                {"level", f.context().level()},
                {"components", enc_components_j(f)}};
}

PolyFamily<AlgElem> dec_family_j(const json& j, const std::string& path) {
    if (j.is_null()) return PolyFamily<AlgElem>{};
    expect_object(j, path, {"pair", "level", "components"});
    SimplicialPair pr = dec_pair_j(j["pair"], at(path, "pair"));
    int level = to_nonneg(j["level"], at(path, "level"));
    PairContext ctx(std::move(pr), level);
    auto comps = dec_components_j(j["components"], at(path, "components"));
    try {
        return PolyFamily<AlgElem>::from_components(ctx, std::move(comps));
    } catch (const error& e) {
        fail(at(path, "components"), e.what());
    }
}

// ---- presentations and homomorphisms ---------------------------------------

json enc_ncpoly_j(const NCPoly& p) {
    json terms = json::array();
    for (const auto& [w, c] : p.terms) terms.push_back(json{{"word", w}, {"coeff", c.str()}});
    return json{{"terms", std::move(terms)}};
}

NCPoly dec_ncpoly_j(const json& j, const std::string& path, std::size_t ngens) {
    expect_object(j, path, {"terms"});
    const std::string tp = at(path, "terms");
    const json& tj = as_array(j["terms"], tp);
    NCPoly p;
    for (std::size_t t = 0; t < tj.size(); ++t) {
        const std::string ep = at(tp, t);
        expect_object(tj[t], ep, {"word", "coeff"});
        std::vector<int> w = dec_int_list(tj[t]["word"], at(ep, "word"));
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] < 0 || static_cast<std::size_t>(w[i]) >= ngens)
                fail(at(at(ep, "word"), i), "generator index out of range");
        p += NCPoly::word(std::move(w), to_big(tj[t]["coeff"], at(ep, "coeff")));
    }
    return p;
}

json enc_finpres_j(const FinPresAlgebra& a) {
    json rels = json::array();
    for (const NCPoly& r : a.rels) rels.push_back(enc_ncpoly_j(r));
    return json{{"name", a.name}, {"gens", a.gens}, {"rels", std::move(rels)}};
}

FinPresAlgebra dec_finpres_j(const json& j, const std::string& path) {
    expect_object(j, path, {"name", "gens", "rels"});
    FinPresAlgebra a;
    a.name = to_str(j["name"], at(path, "name"));
    const std::string gp = at(path, "gens");
    const json& gj = as_array(j["gens"], gp);
    for (std::size_t i = 0; i < gj.size(); ++i) a.gens.push_back(to_str(gj[i], at(gp, i)));
    const std::string rp = at(path, "rels");
    const json& rj = as_array(j["rels"], rp);
    for (std::size_t i = 0; i < rj.size(); ++i)
        a.rels.push_back(dec_ncpoly_j(rj[i], at(rp, i), a.gens.size()));
    return a;
}

json enc_hom_elem_j(const Hom<AlgElem>& h) {
    json images = json::array();
    for (const AlgElem& x : h.images) images.push_back(enc_elem_j(x));
    json unit = h.unit ? enc_elem_j(*h.unit) : json(nullptr);
    return json{{"source", enc_finpres_j(h.source)},
                {"images", std::move(images)},
                {"unit", std::move(unit)}};
}

Hom<AlgElem> dec_hom_elem_j(const json& j, const std::string& path) {
    expect_object(j, path, {"source", "images", "unit"});
    Hom<AlgElem> h;
    h.source = dec_finpres_j(j["source"], at(path, "source"));
    const std::string ip = at(path, "images");
    const json& ij = as_array(j["images"], ip);
    for (std::size_t i = 0; i < ij.size(); ++i) h.images.push_back(dec_elem_j(ij[i], at(ip, i)));
    if (!j["unit"].is_null()) h.unit = dec_elem_j(j["unit"], at(path, "unit"));
    try {
        h.validate();
    } catch (const error& e) {
        fail(path, e.what());
    }
    return h;
}

json enc_hom_fam_j(const Hom<PolyFamily<AlgElem>>& h) {
    json images = json::array();
    for (const auto& f : h.images) images.push_back(enc_family_j(f));
    json unit = h.unit ? enc_family_j(*h.unit) : json(nullptr);
    return json{{"source", enc_finpres_j(h.source)},
                {"images", std::move(images)},
                {"unit", std::move(unit)}};
}

Hom<PolyFamily<AlgElem>> dec_hom_fam_j(const json& j, const std::string& path) {
    expect_object(j, path, {"source", "images", "unit"});
    Hom<PolyFamily<AlgElem>> h;
    h.source = dec_finpres_j(j["source"], at(path, "source"));
    const std::string ip = at(path, "images");
    const json& ij = as_array(j["images"], ip);
    for (std::size_t i = 0; i < ij.size(); ++i) h.images.push_back(dec_family_j(ij[i], at(ip, i)));
    if (!j["unit"].is_null()) h.unit = dec_family_j(j["unit"], at(path, "unit"));
    try {
        h.validate();
    } catch (const error& e) {
        fail(path, e.what());
    }
    return h;
}

// ---- homotopy certificates --------------------------------------------------

json enc_link_j(const SubdividedHomotopy<AlgElem>& l) {
    return json{{"level", l.level},
                {"hom", enc_hom_fam_j(l.h)},
                {"f0", enc_hom_elem_j(l.f0)},
                {"f1", enc_hom_elem_j(l.f1)}};
}

SubdividedHomotopy<AlgElem> dec_link_j(const json& j, const std::string& path) {
    expect_object(j, path, {"level", "hom", "f0", "f1"});
    SubdividedHomotopy<AlgElem> l;
    l.level = to_nonneg(j["level"], at(path, "level"));
    l.h = dec_hom_fam_j(j["hom"], at(path, "hom"));
    l.f0 = dec_hom_elem_j(j["f0"], at(path, "f0"));
    l.f1 = dec_hom_elem_j(j["f1"], at(path, "f1"));
    return l;
}

json enc_cert_j(const HomotopyCert<AlgElem>& c) {
    json links = json::array();
    for (const auto& l : c.links) links.push_back(enc_link_j(l));
    return json{{"links", std::move(links)}};
}

HomotopyCert<AlgElem> dec_cert_j(const json& j, const std::string& path) {
    expect_object(j, path, {"links"});
    const std::string lp = at(path, "links");
    const json& lj = as_array(j["links"], lp);
    HomotopyCert<AlgElem> c;
    for (std::size_t i = 0; i < lj.size(); ++i) c.links.push_back(dec_link_j(lj[i], at(lp, i)));
    return c;
}

// ---- mapping-space simplices and diagrams ----------------------------------

json enc_map_simplex_j(const MapSimplex& x) {
    json images = json::array();
    for (const auto& f : x.hom.images) {
        if (f.context().null())
            images.push_back(nullptr);
        else
            images.push_back(json{{"components", enc_components_j(f)}});
    }
    return json{{"n", x.n},
                {"q", x.q},
                {"r", x.r},
                {"source", enc_finpres_j(x.hom.source)},
                {"images", std::move(images)}};
}

MapSimplex dec_map_simplex_j(const json& j, const std::string& path) {
    expect_object(j, path, {"n", "q", "r", "source", "images"});
    int n = to_nonneg(j["n"], at(path, "n"));
    int q = to_nonneg(j["q"], at(path, "q"));
    int r = to_nonneg(j["r"], at(path, "r"));
    FinPresAlgebra a = dec_finpres_j(j["source"], at(path, "source"));
    PairContext ctx(cube_simplex_pair(n, q), r);
    std::vector<PolyFamily<AlgElem>> images;
    const std::string ip = at(path, "images");
    const json& ij = as_array(j["images"], ip);
    for (std::size_t i = 0; i < ij.size(); ++i) {
        const std::string fp = at(ip, i);
        if (ij[i].is_null()) {
            images.emplace_back();
            continue;
        }
        expect_object(ij[i], fp, {"components"});
        auto comps = dec_components_j(ij[i]["components"], at(fp, "components"));
        try {
            images.push_back(PolyFamily<AlgElem>::from_components(ctx, std::move(comps)));
        } catch (const error& e) {
            fail(at(fp, "components"), e.what());
        }
    }
    try {
        return make_map_simplex(std::move(a), n, q, r, std::move(images));
    } catch (const error& e) {
        fail(path, e.what());
    }
}

json enc_diagram_j(const StageDiagram& s) {
    json vertices = json::array();
    for (const auto& v : s.vertices) vertices.push_back(enc_map_simplex_j(v));
    json edges = json::array();
    for (const auto& e : s.edges) edges.push_back(enc_map_simplex_j(e));
    json certs = json::array();
    for (const auto& c : s.certs)
        certs.push_back(json{{"a", c.a}, {"b", c.b}, {"cert", enc_cert_j(c.cert)}});
    return json{{"vertices", std::move(vertices)},
                {"edges", std::move(edges)},
                {"certs", std::move(certs)}};
}

StageDiagram dec_diagram_j(const json& j, const std::string& path) {
    expect_object(j, path, {"vertices", "edges", "certs"});
    StageDiagram s;
    const std::string vp = at(path, "vertices");
    const json& vj = as_array(j["vertices"], vp);
    for (std::size_t i = 0; i < vj.size(); ++i)
        s.vertices.push_back(dec_map_simplex_j(vj[i], at(vp, i)));
    const std::string ep = at(path, "edges");
    const json& ej = as_array(j["edges"], ep);
    for (std::size_t i = 0; i < ej.size(); ++i)
        s.edges.push_back(dec_map_simplex_j(ej[i], at(ep, i)));
    const std::string cp = at(path, "certs");
    const json& cj = as_array(j["certs"], cp);
    for (std::size_t i = 0; i < cj.size(); ++i) {
        const std::string one = at(cp, i);
        expect_object(cj[i], one, {"a", "b", "cert"});
        CertEdge ce;
        long long a = to_ll(cj[i]["a"], at(one, "a"));
        long long b = to_ll(cj[i]["b"], at(one, "b"));
        if (a < 0) fail(at(one, "a"), "expected a nonnegative integer");
        if (b < 0) fail(at(one, "b"), "expected a nonnegative integer");
        ce.a = static_cast<std::size_t>(a);
        ce.b = static_cast<std::size_t>(b);
        ce.cert = dec_cert_j(cj[i]["cert"], at(one, "cert"));
        s.certs.push_back(std::move(ce));
    }
    try {
        validate_diagram(s);
    } catch (const error& e) {
        fail(path, e.what());
    }
    return s;
}

}  // namespace

// ---- public text interface --------------------------------------------------

std::string encode_sset(const SimplicialSet& s) { return enc_sset_j(s).dump(); }
SimplicialSet decode_sset(const std::string& text) { return dec_sset_j(parse_text(text), ""); }

std::string encode_pair(const SimplicialPair& p) { return enc_pair_j(p).dump(); }
SimplicialPair decode_pair(const std::string& text) { return dec_pair_j(parse_text(text), ""); }

std::string encode_family(const PolyFamily<AlgElem>& f) { return enc_family_j(f).dump(); }
PolyFamily<AlgElem> decode_family(const std::string& text) {
    return dec_family_j(parse_text(text), "");
}

std::string encode_hom(const Hom<AlgElem>& h) { return enc_hom_elem_j(h).dump(); }
Hom<AlgElem> decode_hom(const std::string& text) { return dec_hom_elem_j(parse_text(text), ""); }

std::string encode_cert(const HomotopyCert<AlgElem>& c) { return enc_cert_j(c).dump(); }
HomotopyCert<AlgElem> decode_cert(const std::string& text) {
    return dec_cert_j(parse_text(text), "");
}

std::string encode_map_simplex(const MapSimplex& x) { return enc_map_simplex_j(x).dump(); }
MapSimplex decode_map_simplex(const std::string& text) {
    return dec_map_simplex_j(parse_text(text), "");
}

std::string encode_diagram(const StageDiagram& s) { return enc_diagram_j(s).dump(); }
StageDiagram decode_diagram(const std::string& text) {
    return dec_diagram_j(parse_text(text), "");
}

}  // namespace shl
