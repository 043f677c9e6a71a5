#pragma once

// Multiplication morphisms on relative polynomial families: the pairing
//   mu : B^(K,L)_r (x) B^(K',L')_s -> B^(KxK', KxL' u LxK')_(r+s),
// its extension to nested families, the induced map on homotopy data, the
// scaling cylinder on a simplex shape, and a piecewise family on the square
// certified to lie outside the image of mu in bounded degree.

#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "shl/algebra.hpp"
#include "shl/family.hpp"
#include "shl/smith.hpp"

namespace shl {

/// Lift a level-0 map along the subdivision towers of two contexts of the
/// same level: sd^r f : sd^r X -> sd^r Y.
inline SimplicialMap sd_iterate(SimplicialMap f, const PairContext& src, const PairContext& dst) {
    if (src.level() != dst.level()) throw error("sd_iterate: level mismatch");
    for (int s = 0; s < src.level(); ++s) f = sd_map(f, src.step(s), dst.step(s));
    return f;
}

namespace detail {

/// Projection of the flattened product pair P = A*B onto side 0 (A) or 1 (B).
/// Point sides contribute no factors, so the map is constant or the identity.
inline SimplicialMap side_projection(const SimplicialPair& A, const SimplicialPair& B,
                                     const SimplicialPair& P, int side) {
    int ca = is_point(*A.K) ? 0 : A.K->arity();
    int cb = is_point(*B.K) ? 0 : B.K->arity();
    const auto& tgt = side == 0 ? A.K : B.K;
    int lo = side == 0 ? 0 : ca;
    int hi = side == 0 ? ca : ca + cb;
    if (hi == lo) return constant_map(P.K, tgt, 0);
    if (lo == 0 && hi == ca + cb) return identity_map(P.K);
    return product_projection(P.K, lo, hi);
}

}  // namespace detail

/// Sum of products of the two projection pullbacks, one summand per tensor
/// pair. All first entries must share one context, all second entries
/// another; the output lives on the product pair at the sum of the levels.
/// Inputs must vanish on their distinguished subcomplexes; the output then
/// provably vanishes on the product subcomplex, which is re-checked.
template <class R>
PolyFamily<R> mu_tensor(const std::vector<std::pair<PolyFamily<R>, PolyFamily<R>>>& terms) {
    if (terms.empty()) throw error("mu_tensor: empty tensor expression");
    const PairContext& cf = terms[0].first.context();
    const PairContext& cg = terms[0].second.context();
    if (cf.null() || cg.null()) throw error("mu_tensor: context mismatch");
    for (const auto& t : terms) {
        if (!t.first.context().same(cf) || !t.second.context().same(cg))
            throw error("mu_tensor: context mismatch");
        if (auto w = t.first.kernel_witness())
            throw error("mu_tensor: left factor does not vanish on its subcomplex at " + *w);
        if (auto w = t.second.kernel_witness())
            throw error("mu_tensor: right factor does not vanish on its subcomplex at " + *w);
    }
    int r = cf.level(), s = cg.level();
    SimplicialPair P = pair_algebra(cf.pair(), cg.pair());
    PairContext cp(P, r + s);
    PairContext cfu = cf.at_level(r + s);
    PairContext cgu = cg.at_level(r + s);
    SimplicialMap p1 = sd_iterate(detail::side_projection(cf.pair(), cg.pair(), P, 0), cp, cfu);
    SimplicialMap p2 = sd_iterate(detail::side_projection(cf.pair(), cg.pair(), P, 1), cp, cgu);
    PolyFamily<R> acc = PolyFamily<R>::zero(cp);
    for (const auto& t : terms) {
        PolyFamily<R> fu = pullback_family(at_level(t.first, r + s), p1, cp);
        PolyFamily<R> gu = pullback_family(at_level(t.second, r + s), p2, cp);
        acc += fu * gu;
    }
    if (auto w = acc.kernel_witness())
        throw error("mu_tensor: output misses the product kernel at " + *w);
    return acc;
}

template <class R>
PolyFamily<R> mu_tensor(const PolyFamily<R>& f, const PolyFamily<R>& g) {
    return mu_tensor<R>({{f, g}});
}

/// A family over an outer pair whose coefficients are themselves relative
/// families over an inner pair.
using NestedFamily = PolyFamily<PolyFamily<AlgElem>>;

/// Collapse a nested family to a plain family on the product pair by writing
/// it as a finite sum of elementary tensors (inner family (x) integer outer
/// family) and applying mu_tensor. The decomposition picks a lattice basis
/// of the span of the distinct inner coefficients, so every expansion
/// coefficient is an exact integer.
inline PolyFamily<AlgElem> mu_nested(const NestedFamily& h, const PairContext& inner_ctx,
                                     const PairContext& outer_ctx) {
    if (inner_ctx.null() || outer_ctx.null()) throw error("mu_nested: null context");
    if (!h.context().null() && !h.context().same(outer_ctx))
        throw error("mu_nested: outer context mismatch");
    auto odom = outer_ctx.domain();
    auto idom = inner_ctx.domain();

    // Column space: one coordinate per (inner cell, inner monomial, basis index).
    using Key = std::tuple<int, int, std::vector<int>, long>;
    std::map<Key, size_t> cols;
    std::shared_ptr<const AlgebraSpec> spec;
    auto scan = [&](const PolyFamily<AlgElem>& f) {
        if (!f.context().null() && !f.context().same(inner_ctx))
            throw error("mu_nested: inner context mismatch");
        for (int e = 0; e <= idom->dim(); ++e)
            for (int l = 0; l < idom->size(e); ++l)
                for (const auto& [im, ic] : f.component(e, l).terms()) {
                    if (!spec) spec = ic.spec();
                    for (const auto& kv : ic.coeffs()) cols.try_emplace(Key{e, l, im, kv.first}, 0);
                }
    };
    for (int d = 0; d <= odom->dim(); ++d)
        for (int k = 0; k < odom->size(d); ++k)
            for (const auto& [m, c] : h.component(d, k).terms()) scan(c);
    if (cols.empty()) {
        SimplicialPair P = pair_algebra(inner_ctx.pair(), outer_ctx.pair());
        return PolyFamily<AlgElem>::zero(PairContext(P, inner_ctx.level() + outer_ctx.level()));
    }
    size_t nc = 0;
    for (auto& kv : cols) kv.second = nc++;

    auto vectorize = [&](const PolyFamily<AlgElem>& f) {
        IntVec v(nc, 0);
        for (int e = 0; e <= idom->dim(); ++e)
            for (int l = 0; l < idom->size(e); ++l)
                for (const auto& [im, ic] : f.component(e, l).terms())
                    for (const auto& kv : ic.coeffs())
                        v[cols.at(Key{e, l, im, kv.first})] = kv.second;
        return v;
    };

    // Distinct coefficient vectors, and which one each outer term uses.
    IntMat A;
    std::map<IntVec, size_t> row_of;
    std::map<std::tuple<int, int, std::vector<int>>, size_t> term_row;
    for (int d = 0; d <= odom->dim(); ++d)
        for (int k = 0; k < odom->size(d); ++k)
            for (const auto& [m, c] : h.component(d, k).terms()) {
                IntVec v = vectorize(c);
                auto [it, fresh] = row_of.try_emplace(v, A.size());
                if (fresh) A.push_back(std::move(v));
                term_row[{d, k, m}] = it->second;
            }

    // Rows of U*A with nonzero diagonal form a basis of the row lattice.
    SmithResult snf = smith_normal_form(A);
    size_t rank = 0;
    while (rank < snf.diag.size() && snf.diag[rank] != 0) ++rank;
    std::vector<IntVec> basis(rank, IntVec(nc, 0));
    for (size_t b = 0; b < rank; ++b)
        for (size_t j = 0; j < A.size(); ++j)
            if (snf.U[b][j] != 0)
                for (size_t c = 0; c < nc; ++c) basis[b][c] += snf.U[b][j] * A[j][c];

    // Row j of A = sum_b Uinv[j][b] * basis[b]; Uinv columns by solving U x = e_b.
    std::vector<IntVec> uinv_col(rank);
    for (size_t b = 0; b < rank; ++b) {
        IntVec e(A.size(), 0);
        e[b] = 1;
        IntSolveResult sol = solve_integer(snf.U, e);
        if (!sol.solution) throw error("mu_nested: unimodular solve failed");
        uinv_col[b] = *sol.solution;
    }

    // Rebuild each basis vector as an inner family.
    std::vector<std::pair<PolyFamily<AlgElem>, PolyFamily<AlgElem>>> tensors;
    for (size_t b = 0; b < rank; ++b) {
        std::vector<std::vector<SimplexPoly<AlgElem>>> comps(
            static_cast<size_t>(idom->dim()) + 1);
        for (int e = 0; e <= idom->dim(); ++e)
            comps[static_cast<size_t>(e)].assign(static_cast<size_t>(idom->size(e)),
                                                 SimplexPoly<AlgElem>{});
        for (const auto& [key, col] : cols) {
            if (basis[b][col] == 0) continue;
            const auto& [e, l, im, beta] = key;
            comps[static_cast<size_t>(e)][static_cast<size_t>(l)] += SimplexPoly<AlgElem>::monomial(
                im, AlgElem::basis(spec, beta, basis[b][col]));
        }
        PolyFamily<AlgElem> inner = PolyFamily<AlgElem>::from_components(inner_ctx, comps);

        // Outer integer family: the b-th expansion coefficient of each term.
        std::vector<std::vector<SimplexPoly<AlgElem>>> ocomps(
            static_cast<size_t>(odom->dim()) + 1);
        for (int d = 0; d <= odom->dim(); ++d)
            ocomps[static_cast<size_t>(d)].assign(static_cast<size_t>(odom->size(d)),
                                                  SimplexPoly<AlgElem>{});
        for (int d = 0; d <= odom->dim(); ++d)
            for (int k = 0; k < odom->size(d); ++k)
                for (const auto& [m, c] : h.component(d, k).terms()) {
                    const Int& n = uinv_col[b][term_row.at({d, k, m})];
                    if (n == 0) continue;
                    ocomps[static_cast<size_t>(d)][static_cast<size_t>(k)] +=
                        SimplexPoly<AlgElem>::monomial(m, AlgElem::integer(n));
                }
        PolyFamily<AlgElem> outer = PolyFamily<AlgElem>::from_components(outer_ctx, ocomps);
        tensors.emplace_back(std::move(inner), std::move(outer));
    }
    if (tensors.empty()) {
        SimplicialPair P = pair_algebra(inner_ctx.pair(), outer_ctx.pair());
        return PolyFamily<AlgElem>::zero(PairContext(P, inner_ctx.level() + outer_ctx.level()));
    }
    return mu_tensor(tensors);
}

/// Result of collapsing a homomorphism into nested families over an
/// interval: the collapsed homomorphism, plus an exact check that its two
/// endpoint restrictions agree with the subdivided endpoints of the input.
struct HtildeReport {
    Hom<PolyFamily<AlgElem>> hom;
    bool endpoints_match = false;
    std::string detail;  // first failing generator and endpoint, if any
};

/// Apply mu_nested to every generator image of H : A -> (inner)^(outer) and
/// verify the endpoint squares: restricting the collapsed hom to either end
/// of the outer interval equals the transition-lifted endpoint of H.
inline HtildeReport htilde(const Hom<NestedFamily>& H, const PairContext& inner_ctx,
                           const PairContext& outer_ctx) {
    if (inner_ctx.null() || outer_ctx.null()) throw error("htilde: null context");
    auto odom = outer_ctx.pair().K;
    if (odom->is_product() || odom->dim() != 1)
        throw error("htilde: outer pair must be the interval");
    if (auto i = H.failing_relation())
        throw error("htilde: input is not a homomorphism; relation " + std::to_string(*i));
    int r = inner_ctx.level(), s = outer_ctx.level();
    std::vector<PolyFamily<AlgElem>> images;
    images.reserve(H.images.size());
    for (const auto& img : H.images) images.push_back(mu_nested(img, inner_ctx, outer_ctx));
    std::optional<PolyFamily<AlgElem>> unit;
    if (H.unit) unit = mu_nested(*H.unit, inner_ctx, outer_ctx);
    Hom<PolyFamily<AlgElem>> out{H.source, std::move(images), std::move(unit)};
    if (auto i = out.failing_relation())
        throw error("htilde: collapsed map breaks relation " + std::to_string(*i));

    HtildeReport rep{std::move(out), true, ""};
    SimplicialPair P = pair_algebra(inner_ctx.pair(), outer_ctx.pair());
    PairContext cp(P, r + s);
    PairContext up = inner_ctx.at_level(r + s);
    PairContext pt(full_pair(share(std_simplex(0))), s);
    int ca = is_point(*inner_ctx.pair().K) ? 0 : inner_ctx.pair().K->arity();
    auto check_gen = [&](const PolyFamily<AlgElem>& collapsed, const NestedFamily& nested,
                         int i) -> bool {
        // end of the collapsed family: slice the outer factor at vertex 1-i
        SimplicialMap slice = P.K->is_product() ? insert_vertex_slice(P.K, ca, 1 - i)
                                                : coface_map(1, i);
        PolyFamily<AlgElem> lhs = pullback_family(collapsed, sd_iterate(slice, up, cp), up);
        // endpoint of the nested family, lifted to the same level
        SimplicialMap v = sd_iterate(coface_map(1, i), pt, outer_ctx);
        PolyFamily<AlgElem> end = pullback_family(nested, v, pt).component(0, 0).as_constant();
        if (end.context().null()) end = PolyFamily<AlgElem>::zero(inner_ctx);
        return lhs == at_level(end, r + s);
    };
    for (size_t j = 0; j < H.images.size() && rep.endpoints_match; ++j)
        for (int i = 0; i < 2 && rep.endpoints_match; ++i)
            if (!check_gen(rep.hom.images[j], H.images[j], i)) {
                rep.endpoints_match = false;
                rep.detail = "generator " + std::to_string(j) + " endpoint " + std::to_string(i);
            }
    if (H.unit && rep.endpoints_match)
        for (int i = 0; i < 2 && rep.endpoints_match; ++i)
            if (!check_gen(*rep.hom.unit, *H.unit, i)) {
                rep.endpoints_match = false;
                rep.detail = "unit endpoint " + std::to_string(i);
            }
    return rep;
}

// --- scaling cylinder -------------------------------------------------------

/// Constant-family inclusion iota : B -> B^shape.
template <class R>
PolyFamily<R> cylinder_iota(const PairContext& ctx, const R& value) {
    return PolyFamily<R>::constant(ctx, value);
}

/// Evaluation v : B^shape -> B at the initial vertex (all coordinates 0).
template <class R>
R eval_basepoint(const PolyFamily<R>& f) {
    const PairContext& c = f.context();
    if (c.null()) return R{};
    if (c.level() != 0) throw error("eval_basepoint: level-0 families only");
    auto dom = c.domain();
    std::string lbl;
    if (dom->is_product())
        for (int j = 0; j < dom->arity(); ++j) lbl += (j ? "|0" : "0");
    else
        lbl = dom->label(0, 0);
    for (int k = 0; k < dom->size(0); ++k)
        if (dom->label(0, k) == lbl) return f.component(0, k).as_constant();
    throw error("eval_basepoint: no vertex labeled " + lbl);
}

/// Scaling homotopy H : B^shape -> B^shape[u]. On each maximal cell the
/// coordinates are scaled by u, i.e. a monomial of total degree m picks up
/// u^m; lower cells are derived, which is consistent because every maximal
/// cell starts at the initial vertex. At u=1 this is the identity and at
/// u=0 it is iota after basepoint evaluation.
template <class R>
PolyFamily<SimplexPoly<R>> cylinder_H(const PolyFamily<R>& f) {
    const PairContext& c = f.context();
    if (c.null()) throw error("cylinder_H: null context");
    if (c.level() != 0) throw error("cylinder_H: level-0 families only");
    auto dom = c.domain();
    std::map<CellId, SimplexPoly<SimplexPoly<R>>> top;
    for (CellId id : maximal_cells(*dom)) {
        const SimplexPoly<R>& p = f.component(id.dim, id.idx);
        SimplexPoly<SimplexPoly<R>> q = SimplexPoly<SimplexPoly<R>>::zero(id.dim);
        for (const auto& [m, coeff] : p.terms()) {
            int deg = 0;
            for (int e : m) deg += e;
            q += SimplexPoly<SimplexPoly<R>>::monomial(m,
                                                       SimplexPoly<R>::monomial({deg}, coeff));
        }
        top[id] = std::move(q);
    }
    return PolyFamily<SimplexPoly<R>>::from_top(c, top);
}

/// Evaluate the homotopy variable at u = 0 or u = 1.
template <class R>
PolyFamily<R> eval_u(const PolyFamily<SimplexPoly<R>>& f, int u) {
    if (u != 0 && u != 1) throw error("eval_u: endpoint must be 0 or 1");
    return f.template map_coeffs<R>([&](const SimplexPoly<R>& c) {
        return pullback_ordinal(c, std::vector<int>{u}, 1).as_constant();
    });
}

/// Reinterpret a family with one extra polynomial variable u as a nested
/// family over the interval: u becomes the coordinate of the outer edge.
template <class R>
PolyFamily<PolyFamily<R>> curry_u(const PolyFamily<SimplexPoly<R>>& f,
                                  const PairContext& outer_ctx) {
    const PairContext& c = f.context();
    if (c.null() || outer_ctx.null()) throw error("curry_u: null context");
    auto odom = outer_ctx.domain();
    if (odom->dim() != 1 || odom->size(1) != 1)
        throw error("curry_u: outer context must be an interval at level 0");
    int udeg = 0;
    auto dom = c.domain();
    for (int d = 0; d <= dom->dim(); ++d)
        for (int k = 0; k < dom->size(d); ++k)
            for (const auto& [m, coeff] : f.component(d, k).terms())
                udeg = std::max(udeg, coeff.total_degree());
    SimplexPoly<PolyFamily<R>> edge = SimplexPoly<PolyFamily<R>>::zero(1);
    for (int j = 0; j <= udeg; ++j) {
        PolyFamily<R> gj = f.template map_coeffs<R>([&](const SimplexPoly<R>& coeff) {
            auto it = coeff.terms().find(std::vector<int>{j});
            return it == coeff.terms().end() ? R{} : it->second;
        });
        if (!gj.is_zero())
            edge += SimplexPoly<PolyFamily<R>>::monomial({j}, std::move(gj));
    }
    std::map<CellId, SimplexPoly<PolyFamily<R>>> top;
    top[CellId{1, 0}] = std::move(edge);
    return PolyFamily<PolyFamily<R>>::from_top(outer_ctx, top);
}

// --- non-image witness ------------------------------------------------------

/// A face-compatible family on the square together with the linear system
/// showing that no sum of products of the two edge-coordinate pullbacks of
/// bidegree at most (deg, deg) matches it.
struct MuWitness {
    PolyFamily<AlgElem> family;  // 0 on one triangle, difference of the
                                 // two coordinates on the other
    int degree = 0;
    bool representable = false;
    IntMat system;        // coefficient-matching matrix, one column per c_ab
    IntVec rhs;           // witness coefficients in the same row order
    IntSolveResult cert;  // infeasibility certificate for system x = rhs
};

inline MuWitness mu_image_witness(int degree = 1) {
    if (degree < 1) throw error("mu_image_witness: degree bound must be at least 1");
    PairContext ctx(full_pair(share(cube(2))), 0);
    auto dom = ctx.domain();

    // the two triangles, told apart by the factor passing vertex (1,0)
    int t_hi = -1, t_lo = -1;
    for (int k = 0; k < dom->size(2); ++k) {
        std::string l = dom->label(2, k);
        (l.substr(0, l.find('|')) == "0.1~0.1.1" ? t_hi : t_lo) = k;
    }
    if (t_hi < 0 || t_lo < 0) throw error("mu_image_witness: unexpected square layout");

    std::map<CellId, SimplexPoly<AlgElem>> top;
    top[CellId{2, t_hi}] = SimplexPoly<AlgElem>::zero(2);
    top[CellId{2, t_lo}] = SimplexPoly<AlgElem>::variable(1, 2, AlgElem::integer(-1));
    MuWitness w;
    w.family = PolyFamily<AlgElem>::from_top(ctx, top);
    w.degree = degree;

    // coordinate pullbacks on each triangle
    auto xy = [&](int k) {
        SimplexPoly<Int> t1 = SimplexPoly<Int>::variable(1, 2, 1);
        SimplexPoly<Int> t2 = SimplexPoly<Int>::variable(2, 2, 1);
        return k == t_hi ? std::pair{t1 + t2, t2} : std::pair{t2, t1 + t2};
    };
    // unknowns c_ab, 0 <= a,b <= degree; rows match monomial coefficients
    std::map<std::pair<int, std::vector<int>>, size_t> rows;
    auto row = [&](int k, const std::vector<int>& m) {
        return rows.try_emplace({k, m}, rows.size()).first->second;
    };
    std::vector<std::map<size_t, Int>> cols;
    for (int a = 0; a <= degree; ++a)
        for (int b = 0; b <= degree; ++b) {
            std::map<size_t, Int> col;
            for (int k : {t_hi, t_lo}) {
                auto [x, y] = xy(k);
                SimplexPoly<Int> p = SimplexPoly<Int>::constant(2, 1);
                for (int i = 0; i < a; ++i) p = p * x;
                for (int i = 0; i < b; ++i) p = p * y;
                for (const auto& [m, c] : p.terms()) col[row(k, m)] = c;
            }
            cols.push_back(std::move(col));
        }
    std::map<size_t, Int> target;
    for (int k : {t_hi, t_lo})
        for (const auto& [m, c] : w.family.component(2, k).terms())
            target[row(k, m)] = c.coeffs().at(0);

    w.system.assign(rows.size(), IntVec(cols.size(), 0));
    w.rhs.assign(rows.size(), 0);
    for (size_t j = 0; j < cols.size(); ++j)
        for (const auto& [i, v] : cols[j]) w.system[i][j] = v;
    for (const auto& [i, v] : target) w.rhs[i] = v;
    w.cert = solve_integer(w.system, w.rhs);
    w.representable = w.cert.solution.has_value();
    return w;
}

}  // namespace shl
