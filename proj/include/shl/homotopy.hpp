#pragma once

// Polynomial homotopy certificates between algebra homomorphisms: a single
// subdivided homotopy is a hom into interval families at some subdivision
// level with declared endpoint restrictions; certificates chain them. The
// calculus (gluing, reversal, whiskering) rearranges certificates without
// ever leaving exact arithmetic, and every constructor re-validates.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shl/algebra.hpp"
#include "shl/family.hpp"
#include "shl/mult.hpp"

namespace shl {

/// One elementary homotopy: h maps the source algebra into polynomial
/// families over the r-fold subdivided interval; restricting along the
/// subdivided vertex-0 inclusion must give f0, along vertex 1 must give f1.
template <class R0>
struct SubdividedHomotopy {
    int level = 0;
    Hom<PolyFamily<R0>> h;
    Hom<R0> f0, f1;

    friend bool operator==(const SubdividedHomotopy& a, const SubdividedHomotopy& b) {
        return a.level == b.level && a.h == b.h && a.f0 == b.f0 && a.f1 == b.f1;
    }
};

/// A nonempty chain of elementary homotopies with matching inner endpoints.
template <class R0>
struct HomotopyCert {
    std::vector<SubdividedHomotopy<R0>> links;

    friend bool operator==(const HomotopyCert& a, const HomotopyCert& b) {
        return a.links == b.links;
    }
};

struct CertReport {
    bool ok = true;
    std::string detail;
};

inline PairContext interval_context(int level) {
    return PairContext(full_pair(share(std_simplex(1))), level);
}

/// Value of an interval family over the subdivided endpoint vertex i
/// (i follows the coface indexing: i = 1 is the 0-end, i = 0 the 1-end).
template <class R0>
R0 interval_endpoint(const PolyFamily<R0>& fam, int i) {
    const PairContext& c = fam.context();
    if (c.null()) return R0{};
    PairContext pt(full_pair(share(std_simplex(0))), c.level());
    PolyFamily<R0> v = pullback_family(fam, sd_iterate(coface_map(1, i), pt, c), pt);
    return v.component(0, 0).as_constant();
}

namespace detail {

template <class R>
std::optional<std::string> relation_failure(const Hom<R>& h, const char* what) {
    try {
        if (auto i = h.failing_relation())
            return std::string(what) + " breaks relation #" + std::to_string(*i);
    } catch (const error& e) {
        return std::string(what) + ": " + e.what();
    }
    return std::nullopt;
}

/// First non-null family context among a hom's images and unit.
template <class R0>
PairContext hom_context(const Hom<PolyFamily<R0>>& h) {
    for (const auto& im : h.images)
        if (!im.context().null()) return im.context();
    if (h.unit && !h.unit->context().null()) return h.unit->context();
    return {};
}

}  // namespace detail

template <class R0>
std::optional<std::string> check_link(const SubdividedHomotopy<R0>& l) {
    if (!(l.f0.source == l.h.source) || !(l.f1.source == l.h.source))
        return "endpoint source algebra differs from the homotopy's";
    if (l.h.source.gens.size() != l.h.images.size() ||
        l.f0.images.size() != l.h.images.size() || l.f1.images.size() != l.h.images.size())
        return "generator image counts disagree";
    if (bool(l.h.unit) != bool(l.f0.unit) || bool(l.h.unit) != bool(l.f1.unit))
        return "unit images must be present on all three maps or none";

    PairContext ctx = detail::hom_context(l.h);
    if (ctx.null()) {
        if (!l.h.images.empty() || l.h.unit)
            return "homotopy families need an explicit interval context";
    } else {
        if (ctx.level() != l.level) return "family level differs from the declared level";
        auto base = ctx.pair().K;
        if (base->is_product() || base->dim() != 1 || base->size(1) != 1)
            return "homotopy families must live over the interval";
        for (int d = 0; d <= 1; ++d)
            for (int k = 0; k < base->size(d); ++k)
                if (ctx.pair().in_sub(d, k)) return "interval pair must carry no subcomplex";
        for (const auto& im : l.h.images)
            if (!im.context().null() && !im.context().same(ctx))
                return "images live in different contexts";
    }
    if (auto e = detail::relation_failure(l.h, "homotopy")) return e;
    if (auto e = detail::relation_failure(l.f0, "endpoint f0")) return e;
    if (auto e = detail::relation_failure(l.f1, "endpoint f1")) return e;

    auto match = [&](const PolyFamily<R0>& fam, const R0& v0, const R0& v1)
        -> std::optional<int> {
        if (!(interval_endpoint(fam, 1) == v0)) return 0;
        if (!(interval_endpoint(fam, 0) == v1)) return 1;
        return std::nullopt;
    };
    for (size_t j = 0; j < l.h.images.size(); ++j)
        if (auto i = match(l.h.images[j], l.f0.images[j], l.f1.images[j]))
            return "generator " + std::to_string(j) + " does not restrict to f" +
                   std::to_string(*i);
    if (l.h.unit)
        if (auto i = match(*l.h.unit, *l.f0.unit, *l.f1.unit))
            return "unit does not restrict to f" + std::to_string(*i);
    return std::nullopt;
}

template <class R0>
CertReport check_cert(const HomotopyCert<R0>& c) {
    if (c.links.empty()) return {false, "empty certificate"};
    for (size_t i = 0; i < c.links.size(); ++i)
        if (auto e = check_link(c.links[i]))
            return {false, "link " + std::to_string(i) + ": " + *e};
    for (size_t i = 0; i + 1 < c.links.size(); ++i)
        if (!(c.links[i].f1 == c.links[i + 1].f0))
            return {false, "chain breaks after link " + std::to_string(i)};
    return {true, ""};
}

/// Constant homotopy from a map to itself.
template <class R0>
SubdividedHomotopy<R0> refl_link(const Hom<R0>& f) {
    PairContext ictx = interval_context(0);
    std::vector<PolyFamily<R0>> imgs;
    imgs.reserve(f.images.size());
    for (const R0& x : f.images) imgs.push_back(PolyFamily<R0>::constant(ictx, x));
    std::optional<PolyFamily<R0>> unit;
    if (f.unit) unit = PolyFamily<R0>::constant(ictx, *f.unit);
    return {0, Hom<PolyFamily<R0>>{f.source, std::move(imgs), std::move(unit)}, f, f};
}

template <class R0>
HomotopyCert<R0> refl_cert(const Hom<R0>& f) {
    return {{refl_link(f)}};
}

/// t -> 1-t on a level-0 interval family: swap the vertex components and
/// reverse the edge polynomial. (The interval has no simplicial flip, so
/// level 0 is handled on the algebra side.)
template <class R0>
PolyFamily<R0> reverse_interval_family(const PolyFamily<R0>& f) {
    const PairContext& c = f.context();
    if (c.null()) return f;
    if (c.level() != 0) throw error("algebra-side reversal works at level 0 only");
    auto dom = c.domain();
    if (dom->is_product() || dom->dim() != 1 || dom->size(1) != 1)
        throw error("interval reversal needs the interval");
    // the vertex where the edge coordinate vanishes is the edge's 1st face
    int i0 = dom->face_ref(SimplexRef{1, 0, {0, 1}}, 1).idx;
    std::vector<std::vector<SimplexPoly<R0>>> comps(2);
    comps[0].resize(2);
    comps[0][static_cast<size_t>(i0)] = f.component(0, 1 - i0);
    comps[0][static_cast<size_t>(1 - i0)] = f.component(0, i0);
    comps[1] = {reverse_interval_poly(f.component(1, 0))};
    return PolyFamily<R0>::from_components(c, std::move(comps));
}

/// The orientation-reversing automorphism of the r-fold subdivided interval,
/// r >= 1: the flip of the first subdivision, subdivided onward.
inline SimplicialMap interval_flip_map(const PairContext& ictx) {
    if (ictx.null() || ictx.level() < 1) throw error("no simplicial flip below one subdivision");
    SimplicialMap f = sd_interval_flip(ictx.step(0));
    PairContext c1(full_pair(ictx.step(0).set), ictx.level() - 1);
    return sd_iterate(f, c1, c1);
}

template <class R0>
SubdividedHomotopy<R0> reverse_link(const SubdividedHomotopy<R0>& l) {
    SubdividedHomotopy<R0> out{l.level, l.h, l.f1, l.f0};
    PairContext ctx = detail::hom_context(l.h);
    if (ctx.null()) return out;
    auto rev = [&](const PolyFamily<R0>& fam) {
        if (fam.context().null()) return fam;
        if (ctx.level() == 0) return reverse_interval_family(fam);
        return pullback_family(fam, interval_flip_map(ctx), ctx);
    };
    for (auto& im : out.h.images) im = rev(im);
    if (out.h.unit) *out.h.unit = rev(*out.h.unit);
    return out;
}

template <class R0>
HomotopyCert<R0> reverse(const HomotopyCert<R0>& c) {
    HomotopyCert<R0> out;
    out.links.reserve(c.links.size());
    for (auto it = c.links.rbegin(); it != c.links.rend(); ++it)
        out.links.push_back(reverse_link(*it));
    return out;
}

/// Lift a link to a higher subdivision level by transition pullbacks; the
/// endpoints are untouched.
template <class R0>
SubdividedHomotopy<R0> lift_link(SubdividedHomotopy<R0> l, int level) {
    if (level < l.level) throw error("homotopy levels only increase");
    for (auto& im : l.h.images)
        if (!im.context().null()) im = at_level(im, level);
    if (l.h.unit && !l.h.unit->context().null()) *l.h.unit = at_level(*l.h.unit, level);
    l.level = level;
    return l;
}

/// Inclusion of the r-fold subdivided interval into the (r+1)-fold one as
/// the subdivision of one half: k = 0 is the half at vertex 0, k = 1 the
/// half at vertex 1. Both halves end at the barycenter.
inline SimplicialMap sd_half_inclusion(const PairContext& up, int k) {
    if (up.null() || up.level() < 1) throw error("half inclusion needs at least one subdivision");
    const Subdivision& sd0 = up.step(0);
    const SimplicialSet& base = *sd0.base;
    if (base.is_product() || base.dim() != 1 || base.size(1) != 1)
        throw error("half inclusion: the base must be the interval");
    int zero_end = base.face_ref(SimplexRef{1, 0, {0, 1}}, 1).idx;
    CellId start{0, k == 0 ? zero_end : 1 - zero_end};
    int v_start = -1, v_bary = -1, edge = -1;
    for (int j = 0; j < sd0.set->size(0); ++j) {
        const auto& ch = sd0.flags[0][static_cast<size_t>(j)];
        if (ch == std::vector<CellId>{start}) v_start = j;
        if (ch == std::vector<CellId>{CellId{1, 0}}) v_bary = j;
    }
    for (int j = 0; j < sd0.set->size(1); ++j)
        if (sd0.flags[1][static_cast<size_t>(j)] == std::vector<CellId>{start, CellId{1, 0}})
            edge = j;
    if (v_start < 0 || v_bary < 0 || edge < 0)
        throw error("half inclusion: unexpected subdivision layout");

    // the sd edge runs singleton -> barycenter, so the inclusion must send
    // the source 0-end to the singleton whichever half is taken
    std::vector<std::vector<SimplexRef>> img(2);
    img[0].resize(2);
    img[0][static_cast<size_t>(zero_end)] = SimplexRef{0, v_start, {0}};
    img[0][static_cast<size_t>(1 - zero_end)] = SimplexRef{0, v_bary, {0}};
    img[1] = {SimplexRef{1, edge, {0, 1}}};
    SimplicialMap e(sd0.base, sd0.set, std::move(img));
    PairContext src(full_pair(sd0.base), up.level() - 1);
    PairContext dst(full_pair(sd0.set), up.level() - 1);
    return sd_iterate(e, src, dst);
}

/// Glue two links end to start into one link, one level up. Both halves of
/// the once-more-subdivided interval point into the barycenter, so the
/// second input rides in reversed orientation; the seam carries the shared
/// endpoint and is checked exactly.
template <class R0>
SubdividedHomotopy<R0> glue(const SubdividedHomotopy<R0>& a0, const SubdividedHomotopy<R0>& b0) {
    if (!(a0.h.source == b0.h.source)) throw error("glue: source algebras differ");
    if (!(a0.f1 == b0.f0)) throw error("glue: endpoint mismatch");
    int R = std::max(a0.level, b0.level);
    SubdividedHomotopy<R0> a = lift_link(a0, R);
    SubdividedHomotopy<R0> b = reverse_link(lift_link(b0, R));

    PairContext actx = detail::hom_context(a.h);
    if (actx.null()) actx = detail::hom_context(b.h);
    if (actx.null()) actx = interval_context(R);
    PairContext lo = actx.at_level(R);
    PairContext up = actx.at_level(R + 1);
    SimplicialMap inc0 = sd_half_inclusion(up, 0);
    SimplicialMap inc1 = sd_half_inclusion(up, 1);
    auto dom_lo = lo.domain();
    auto dom_up = up.domain();

    auto place = [&](const PolyFamily<R0>& fa, const PolyFamily<R0>& fb) {
        std::vector<std::vector<SimplexPoly<R0>>> comps(static_cast<size_t>(dom_up->dim()) + 1);
        std::vector<std::vector<char>> seen(comps.size());
        for (int d = 0; d <= dom_up->dim(); ++d) {
            comps[static_cast<size_t>(d)].resize(static_cast<size_t>(dom_up->size(d)));
            seen[static_cast<size_t>(d)].assign(static_cast<size_t>(dom_up->size(d)), 0);
        }
        auto put = [&](const SimplicialMap& inc, const PolyFamily<R0>& src) {
            PolyFamily<R0> s = src.context().null() ? PolyFamily<R0>::zero(lo) : src;
            for (int d = 0; d <= dom_lo->dim(); ++d)
                for (int kk = 0; kk < dom_lo->size(d); ++kk) {
                    const SimplexRef& ref = inc.image(d, kk);
                    if (static_cast<int>(ref.word.size()) != d + 1)
                        throw error("glue: half inclusion is not injective");
                    auto& slot = comps[static_cast<size_t>(ref.dim)][static_cast<size_t>(ref.idx)];
                    auto& was = seen[static_cast<size_t>(ref.dim)][static_cast<size_t>(ref.idx)];
                    const SimplexPoly<R0>& val = s.component(d, kk);
                    if (was && !(slot == val)) throw error("glue: seam values disagree");
                    slot = val;
                    was = 1;
                }
        };
        put(inc0, fa);
        put(inc1, fb);
        return PolyFamily<R0>::from_components(up, std::move(comps));
    };

    std::vector<PolyFamily<R0>> imgs;
    imgs.reserve(a.h.images.size());
    for (size_t j = 0; j < a.h.images.size(); ++j) imgs.push_back(place(a.h.images[j], b.h.images[j]));
    std::optional<PolyFamily<R0>> unit;
    if (a.h.unit) unit = place(*a.h.unit, *b.h.unit);
    SubdividedHomotopy<R0> out{R + 1, Hom<PolyFamily<R0>>{a.h.source, std::move(imgs), std::move(unit)},
                               a0.f0, b0.f1};
    if (auto e = check_link(out)) throw error("glue: " + *e);
    return out;
}

/// Fold a whole chain into one link by repeated gluing.
template <class R0>
SubdividedHomotopy<R0> normalize(const HomotopyCert<R0>& c) {
    if (c.links.empty()) throw error("normalize: empty certificate");
    SubdividedHomotopy<R0> cur = c.links[0];
    for (size_t i = 1; i < c.links.size(); ++i) cur = glue(cur, c.links[i]);
    return cur;
}

/// Single-link composite of two certificates; for elementary inputs the
/// level is exactly one above the larger input level.
template <class R0>
SubdividedHomotopy<R0> concat(const HomotopyCert<R0>& c1, const HomotopyCert<R0>& c2) {
    if (c1.links.empty() || c2.links.empty()) throw error("concat: empty certificate");
    if (!(c1.links.back().f1 == c2.links.front().f0)) throw error("concat: endpoint mismatch");
    return glue(normalize(c1), normalize(c2));
}

/// Apply a coefficient map to every family and endpoint of a certificate.
/// The map must be additive and multiplicative; the result is re-validated.
template <class S0, class R0, class F>
HomotopyCert<S0> whisker_left_map(const HomotopyCert<R0>& c, F&& g) {
    HomotopyCert<S0> out;
    out.links.reserve(c.links.size());
    for (const auto& l : c.links) {
        auto map_hom = [&](const Hom<R0>& h) {
            std::vector<S0> imgs;
            imgs.reserve(h.images.size());
            for (const R0& x : h.images) imgs.push_back(g(x));
            std::optional<S0> unit;
            if (h.unit) unit = g(*h.unit);
            return Hom<S0>{h.source, std::move(imgs), std::move(unit)};
        };
        std::vector<PolyFamily<S0>> imgs;
        imgs.reserve(l.h.images.size());
        for (const auto& im : l.h.images) imgs.push_back(im.template map_coeffs<S0>(g));
        std::optional<PolyFamily<S0>> unit;
        if (l.h.unit) unit = l.h.unit->template map_coeffs<S0>(g);
        SubdividedHomotopy<S0> nl{l.level,
                                  Hom<PolyFamily<S0>>{l.h.source, std::move(imgs), std::move(unit)},
                                  map_hom(l.f0), map_hom(l.f1)};
        if (auto e = check_link(nl)) throw error("whisker_left: " + *e);
        out.links.push_back(std::move(nl));
    }
    return out;
}

inline HomotopyCert<AlgElem> whisker_left(const CoeffHom& g, const HomotopyCert<AlgElem>& c) {
    return whisker_left_map<AlgElem>(c, [&](const AlgElem& x) { return g.apply(x); });
}

/// Precompose a certificate with an algebra map given by generator images
/// (noncommutative polynomials in the original generators).
template <class R0>
HomotopyCert<R0> whisker_right(const HomotopyCert<R0>& c, const FinPresAlgebra& source,
                               const std::vector<NCPoly>& gen_images) {
    if (source.gens.size() != gen_images.size())
        throw error("whisker_right: one image per generator required");
    HomotopyCert<R0> out;
    out.links.reserve(c.links.size());
    for (const auto& l : c.links) {
        auto compose_h = [&](const auto& h) {
            using V = std::decay_t<decltype(h.images[0])>;
            std::vector<V> imgs;
            imgs.reserve(gen_images.size());
            for (const NCPoly& p : gen_images) imgs.push_back(h(p));
            return Hom<V>{source, std::move(imgs), h.unit};
        };
        SubdividedHomotopy<R0> nl{l.level, compose_h(l.h), compose_h(l.f0), compose_h(l.f1)};
        if (auto e = check_link(nl)) throw error("whisker_right: " + *e);
        out.links.push_back(std::move(nl));
    }
    return out;
}

// --- two-simplex inverse witness ---------------------------------------------

/// For f into relative interval families, alpha extends f over the
/// two-simplex so that its three edges are the reversal of f, the zero map,
/// and f itself. Witnesses that reversal is inverse to f up to homotopy.
template <class R0>
struct InverseWitnessReport {
    Hom<PolyFamily<R0>> alpha;
    bool edge0_is_reverse = false;  // restriction opposite vertex 0
    bool edge1_is_zero = false;     // restriction opposite vertex 1
    bool edge2_is_f = false;        // restriction opposite vertex 2
    bool ok = false;
    std::string detail;
};

template <class R0>
InverseWitnessReport<R0> inverse_witness(const Hom<PolyFamily<R0>>& f) {
    PairContext ctx = detail::hom_context(f);
    if (ctx.null()) throw error("inverse_witness: no family context");
    if (ctx.level() != 0) throw error("inverse_witness: level-0 families required");
    auto dom = ctx.pair().K;
    if (dom->is_product() || dom->dim() != 1 || dom->size(1) != 1)
        throw error("inverse_witness: families over the interval required");
    PairContext ce = interval_context(0);
    auto full = [&](const PolyFamily<R0>& fam) {
        std::vector<std::vector<SimplexPoly<R0>>> comps(2);
        comps[0] = {fam.component(0, 0), fam.component(0, 1)};
        comps[1] = {fam.component(1, 0)};
        return PolyFamily<R0>::from_components(ce, std::move(comps));
    };
    for (const auto& im : f.images)
        if (!im.component(0, 0).is_zero() || !im.component(0, 1).is_zero())
            throw error("inverse_witness: images must vanish at both endpoints");
    if (f.unit && (!f.unit->component(0, 0).is_zero() || !f.unit->component(0, 1).is_zero()))
        throw error("inverse_witness: unit image must vanish at both endpoints");

    // substitute: first coordinate absorbs the third, second stays; in
    // eliminated coordinates the edge polynomial reads unchanged on the
    // two-simplex with its second coordinate unused
    PairContext c2(full_pair(share(std_simplex(2))), 0);
    auto spread = [&](const PolyFamily<R0>& fam) {
        SimplexPoly<R0> top = SimplexPoly<R0>::zero(2);
        for (const auto& [m, coeff] : fam.component(1, 0).terms())
            top += SimplexPoly<R0>::monomial({m[0], 0}, coeff);
        std::map<CellId, SimplexPoly<R0>> t;
        t[CellId{2, 0}] = std::move(top);
        return PolyFamily<R0>::from_top(c2, t);
    };
    InverseWitnessReport<R0> rep;
    std::vector<PolyFamily<R0>> imgs;
    imgs.reserve(f.images.size());
    for (const auto& im : f.images) imgs.push_back(spread(im));
    std::optional<PolyFamily<R0>> unit;
    if (f.unit) unit = spread(*f.unit);
    rep.alpha = Hom<PolyFamily<R0>>{f.source, std::move(imgs), std::move(unit)};

    rep.edge0_is_reverse = rep.edge1_is_zero = rep.edge2_is_f = true;
    auto inspect = [&](const PolyFamily<R0>& a, const PolyFamily<R0>& orig, const std::string& who) {
        PolyFamily<R0> e0 = pullback_family(a, coface_map(2, 0), ce);
        PolyFamily<R0> e1 = pullback_family(a, coface_map(2, 1), ce);
        PolyFamily<R0> e2 = pullback_family(a, coface_map(2, 2), ce);
        PolyFamily<R0> ff = full(orig);
        if (!(e0 == reverse_interval_family(ff))) {
            rep.edge0_is_reverse = false;
            if (rep.detail.empty()) rep.detail = who + ": edge 0 is not the reversal";
        }
        if (!e1.is_zero()) {
            rep.edge1_is_zero = false;
            if (rep.detail.empty()) rep.detail = who + ": edge 1 is not zero";
        }
        if (!(e2 == ff)) {
            rep.edge2_is_f = false;
            if (rep.detail.empty()) rep.detail = who + ": edge 2 is not the original";
        }
    };
    for (size_t j = 0; j < f.images.size(); ++j)
        inspect(rep.alpha.images[j], f.images[j], "generator " + std::to_string(j));
    if (f.unit) inspect(*rep.alpha.unit, *f.unit, "unit");
    rep.ok = rep.edge0_is_reverse && rep.edge1_is_zero && rep.edge2_is_f;
    return rep;
}

// --- classes under level transitions -----------------------------------------

/// A homomorphism class into the tower of subdivided-family algebras,
/// remembered by one representative at one level.
template <class R0>
struct IndClass {
    PairContext ctx;  // carries the pair and the representative's level
    Hom<PolyFamily<R0>> rep;
};

template <class R0>
Hom<PolyFamily<R0>> hom_at_level(Hom<PolyFamily<R0>> h, int level) {
    for (auto& im : h.images)
        if (!im.context().null()) im = at_level(im, level);
    if (h.unit && !h.unit->context().null()) *h.unit = at_level(*h.unit, level);
    return h;
}

/// Does w certify that u and v agree after transition to a common level?
/// This verifies the certificate; it does not search for one.
template <class R0>
bool ind_class_eq(const IndClass<R0>& u, const IndClass<R0>& v,
                  const HomotopyCert<PolyFamily<R0>>& w) {
    if (u.ctx.null() || v.ctx.null()) throw error("ind_class_eq: null context");
    if (!(u.ctx.pair() == v.ctx.pair())) throw error("ind_class_eq: different towers");
    if (w.links.empty()) throw error("ind_class_eq: empty certificate");

    int level = std::max(u.ctx.level(), v.ctx.level());
    bool found = false;
    for (const auto& fam : w.links.front().f0.images)
        if (!fam.context().null()) {
            level = fam.context().level();
            found = true;
            break;
        }
    if (!found && w.links.front().f0.unit && !w.links.front().f0.unit->context().null())
        level = w.links.front().f0.unit->context().level();
    if (level < u.ctx.level() || level < v.ctx.level())
        throw error("ind_class_eq: certificate level below the representatives");

    if (!(hom_at_level(u.rep, level) == w.links.front().f0)) return false;
    if (!(hom_at_level(v.rep, level) == w.links.back().f1)) return false;
    return check_cert(w).ok;
}

}  // namespace shl
