// Split extensions of relative function algebras and the classifying-map
// calculus on tensor words.
//
// An "extension" object carries a splitting s (a module map back from the
// quotient) plus a kernel membership test; any such object works with the
// classifying machinery below.  Provided here:
//   - classify / classifying_morphism: evaluate the unique multiplicative
//     map induced by a splitting on tensor words,
//   - classifying_homotopy: the interpolated-splitting homotopy certificate
//     between the classifying maps of two splittings,
//   - path_extension: the relative-function-algebra extension over the cube
//     times a simplex whose middle algebra leaves one end face open, with
//     its explicit multiply-by-t0 section,
//   - Lambda / zeta: classifying maps against path extensions, the step that
//     raises the cube dimension by one,
//   - J_on_hom / J_on_cert: the kernel functor on algebra maps and on
//     homotopy certificates.
#ifndef SHL_EXTENSIONS_HPP
#define SHL_EXTENSIONS_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "shl/algebra.hpp"
#include "shl/extend.hpp"
#include "shl/family.hpp"
#include "shl/homotopy.hpp"
#include "shl/mult.hpp"
#include "shl/simplicial_set.hpp"
#include "shl/tensor.hpp"

namespace shl {

/// Rebuild a family over another context with the same underlying set and
/// level (typically to change the distinguished subcomplex).
template <class R>
PolyFamily<R> reinterpret_family(const PolyFamily<R>& f, const PairContext& ctx) {
    if (ctx.null()) throw error("reinterpret_family: null target context");
    if (f.context().null()) return PolyFamily<R>::zero(ctx);
    if (f.context().level() != ctx.level())
        throw error("reinterpret_family: level mismatch");
    if (!(*f.context().domain() == *ctx.domain()))
        throw error("reinterpret_family: domain mismatch");
    auto dom = ctx.domain();
    std::vector<std::vector<SimplexPoly<R>>> comps(static_cast<size_t>(dom->dim()) + 1);
    for (int d = 0; d <= dom->dim(); ++d)
        for (int k = 0; k < dom->size(d); ++k)
            comps[static_cast<size_t>(d)].push_back(f.component(d, k));
    return PolyFamily<R>::from_components(ctx, std::move(comps));
}

// --- classifying maps --------------------------------------------------------

/// Evaluate the multiplicative map induced by the splitting of `ext` on a
/// tensor word: <d_1|...|d_k> goes to s(f(d_1)) ... s(f(d_k)).  When the
/// input multiplies out to zero, the value must land in the kernel; this is
/// checked per evaluation (a failure signals an invalid splitting).
template <class Ext, class F, class E>
auto classify(const Ext& ext, F&& f, const TensorElem<E>& t, bool check_membership = true)
    -> decltype(ext.s(f(std::declval<const E&>()))) {
    using BE = decltype(ext.s(f(std::declval<const E&>())));
    BE acc{};
    for (const auto& [w, c] : t.terms()) {
        BE prod = ext.s(f(w[0]));
        for (size_t i = 1; i < w.size(); ++i) prod = prod * ext.s(f(w[i]));
        acc += c * prod;
    }
    if (check_membership && j_member(t) && !ext.in_kernel(acc))
        throw error("classify: image escapes the included algebra; the splitting is invalid");
    return acc;
}

/// The triple of maps a classifying construction produces: beta on all
/// tensor words, alpha its restriction to the kernel (membership-checked),
/// gamma the underlying coefficient map.
template <class E, class BE, class CE>
struct StrongMorphism {
    std::function<BE(const TensorElem<E>&)> beta;
    std::function<BE(const TensorElem<E>&)> alpha;
    std::function<CE(const E&)> gamma;
};

template <class E, class Ext, class F>
auto classifying_morphism(const Ext& ext, F f) {
    using CE = std::decay_t<decltype(f(std::declval<const E&>()))>;
    using BE = std::decay_t<decltype(ext.s(std::declval<const CE&>()))>;
    StrongMorphism<E, BE, CE> m;
    m.gamma = [f](const E& x) { return f(x); };
    m.beta = [ext, f](const TensorElem<E>& t) { return classify(ext, f, t, false); };
    m.alpha = [ext, f](const TensorElem<E>& t) {
        if (!j_member(t)) throw error("strong morphism: alpha needs a kernel element");
        return classify(ext, f, t, true);
    };
    return m;
}

/// Homotopy certificate between the classifying maps of two splittings of
/// the same extension, evaluated on the given sample words: interpolate
/// s_u = s0 + u (s1 - s0) and read the classifying map off as a polynomial
/// family over the interval.  Endpoints are the two classifying maps.
template <class F, class S0, class S1, class E>
auto classifying_homotopy(F f, S0 s0, S1 s1, const std::vector<TensorElem<E>>& words) {
    using CE = std::decay_t<decltype(f(std::declval<const E&>()))>;
    using BE = std::decay_t<decltype(s0(std::declval<const CE&>()))>;
    if (words.empty()) throw error("classifying_homotopy: no sample words");
    PairContext ictx = interval_context(0);
    auto entry_poly = [&](const E& e) {
        CE ce = f(e);
        BE b0 = s0(ce);
        BE b1 = s1(ce);
        return SimplexPoly<BE>::monomial({0}, b0) + SimplexPoly<BE>::monomial({1}, b1 - b0);
    };
    std::vector<PolyFamily<BE>> fams;
    std::vector<BE> end0, end1;
    for (const auto& t : words) {
        SimplexPoly<BE> edge = SimplexPoly<BE>::zero(1);
        BE v0{}, v1{};
        for (const auto& [w, c] : t.terms()) {
            SimplexPoly<BE> prod = entry_poly(w[0]);
            BE p0 = s0(f(w[0])), p1 = s1(f(w[0]));
            for (size_t i = 1; i < w.size(); ++i) {
                prod = prod * entry_poly(w[i]);
                p0 = p0 * s0(f(w[i]));
                p1 = p1 * s1(f(w[i]));
            }
            edge += c * prod;
            v0 += c * p0;
            v1 += c * p1;
        }
        fams.push_back(PolyFamily<BE>::from_top(ictx, {{CellId{1, 0}, edge}}));
        end0.push_back(std::move(v0));
        end1.push_back(std::move(v1));
    }
    FinPresAlgebra probe = free_presentation(static_cast<int>(words.size()));
    SubdividedHomotopy<BE> link{0,
                                Hom<PolyFamily<BE>>{probe, fams, std::nullopt},
                                Hom<BE>{probe, end0, std::nullopt},
                                Hom<BE>{probe, end1, std::nullopt}};
    HomotopyCert<BE> cert{{std::move(link)}};
    if (auto rep = check_cert(cert); !rep.ok) throw error("classifying_homotopy: " + rep.detail);
    return cert;
}

// --- algebra maps into relative function algebras ----------------------------

/// Additive map from a basis-presented coefficient algebra into families,
/// given per basis element.  Multiplicativity is the caller's contract and
/// is what the sampled checks exercise.
struct FamilyHom {
    std::shared_ptr<const AlgebraSpec> source;
    std::function<PolyFamily<AlgElem>(long)> basis_image;

    PolyFamily<AlgElem> operator()(const AlgElem& x) const {
        PolyFamily<AlgElem> acc;
        for (const auto& [i, c] : x.coeffs()) acc += c * basis_image(i);
        return acc;
    }
};

// --- path extensions ----------------------------------------------------------

/// The extension of relative function algebras over K = I^{n+1} x Delta^q:
///
///   (families rel the whole boundary of K)
///     -> (families rel the boundary with the t=0 end face of the last
///         interval coordinate removed)
///     -> (families over I^n x Delta^q rel its boundary)
///
/// p restricts to the t=0 end face; the section s multiplies by the interval
/// coordinate that is 1 at t=0 and 0 at t=1, then shuffles the path interval
/// past the simplex factor.  All data is stored at subdivision level r.
struct PathExtension {
    int n = 0, q = 0, r = 0;
    PairContext sub_ctx;      // (K, full boundary): the included algebra
    PairContext total_ctx;    // (K, boundary minus the open t=0 face): the middle algebra
    PairContext base_ctx;     // (I^n x Delta^q, full boundary): the quotient algebra
    PairContext shuffle_ctx;  // ((I^n x Delta^q) x I, product boundary)
    SimplicialMap zero_face;  // base set -> K at level r, inserting the t=0 vertex
    SimplicialMap shuffle;    // K -> shuffled product at level r
    PolyFamily<AlgElem> t0;   // 1 - t_1 on (interval, {t=1 vertex}), level 0

    /// Section of p: multiply by t0 along the path coordinate.
    PolyFamily<AlgElem> s(const PolyFamily<AlgElem>& c) const {
        if (c.context().null()) return PolyFamily<AlgElem>::zero(total_ctx);
        if (!c.context().same(base_ctx))
            throw error("path extension: section input lives on the wrong pair");
        PolyFamily<AlgElem> wide = mu_tensor(c, t0);
        return pullback_family(wide, shuffle, total_ctx);
    }

    /// Restriction to the t=0 end face.
    PolyFamily<AlgElem> p(const PolyFamily<AlgElem>& b) const {
        if (b.context().null()) return PolyFamily<AlgElem>::zero(base_ctx);
        return pullback_family(b, zero_face, base_ctx);
    }
    PolyFamily<AlgElem> pi(const PolyFamily<AlgElem>& b) const { return p(b); }

    /// Inclusion of boundary-vanishing families into the middle algebra.
    PolyFamily<AlgElem> incl(const PolyFamily<AlgElem>& a) const {
        if (a.context().null()) return PolyFamily<AlgElem>::zero(total_ctx);
        if (!a.context().same(sub_ctx))
            throw error("path extension: inclusion input lives on the wrong pair");
        if (auto w = a.kernel_witness())
            throw error("path extension: inclusion input does not vanish on the boundary at " + *w);
        return reinterpret_family(a, total_ctx);
    }

    /// Kernel membership: vanishing on the whole boundary.
    bool in_kernel(const PolyFamily<AlgElem>& b) const {
        return reinterpret_family(b, sub_ctx).vanishes_on_sub();
    }
    /// Middle-algebra membership: vanishing on the boundary minus the open face.
    bool in_total(const PolyFamily<AlgElem>& b) const {
        return reinterpret_family(b, total_ctx).vanishes_on_sub();
    }
    /// Quotient-algebra membership.
    bool in_base(const PolyFamily<AlgElem>& c) const {
        return reinterpret_family(c, base_ctx).vanishes_on_sub();
    }
};

inline PathExtension path_extension(int n, int q, int r) {
    if (n < 0 || q < 0 || r < 0) throw error("path_extension: n, q, r must be nonnegative");
    SimplicialPair a_pair = cube_simplex_pair(n + 1, q);
    SimplicialPair c_pair = cube_simplex_pair(n, q);

    auto I = share(std_simplex(1));
    SimplexRef edge{1, 0, {0, 1}};
    int v0 = I->face_ref(edge, 1).idx;  // the vertex where t_1 vanishes
    int v1 = I->face_ref(edge, 0).idx;
    SimplicialPair i_pair = make_pair(I, {I->label(0, v1)});

    SimplicialPair shuf = pair_algebra(c_pair, i_pair);
    SimplicialMap phi;
    if (q == 0) {
        phi = identity_map(a_pair.K);
    } else {
        std::vector<int> perm(static_cast<size_t>(n) + 2);
        for (int j = 0; j < n; ++j) perm[static_cast<size_t>(j)] = j;
        perm[static_cast<size_t>(n)] = n + 1;      // simplex factor
        perm[static_cast<size_t>(n) + 1] = n;      // path interval moves last
        phi = permute_product(a_pair.K, perm);
    }
    phi.validate();
    if (!(phi.target() == *shuf.K))
        throw error("path_extension: shuffle target mismatch");

    std::vector<std::vector<char>> pl(static_cast<size_t>(a_pair.K->dim()) + 1);
    for (int d = 0; d <= a_pair.K->dim(); ++d) {
        pl[static_cast<size_t>(d)].resize(static_cast<size_t>(a_pair.K->size(d)), 0);
        for (int k = 0; k < a_pair.K->size(d); ++k)
            pl[static_cast<size_t>(d)][static_cast<size_t>(k)] =
                shuf.in_sub(d, phi.image(d, k).idx) ? 1 : 0;
    }
    SimplicialPair p_pair{a_pair.K, std::move(pl)};
    p_pair.validate();

    SimplicialMap zf = a_pair.K->is_product() ? insert_vertex_slice(a_pair.K, n, v0)
                                              : constant_map(c_pair.K, a_pair.K, v0);
    zf.validate();

    PathExtension P;
    P.n = n;
    P.q = q;
    P.r = r;
    P.sub_ctx = PairContext(a_pair, r);
    P.total_ctx = PairContext(p_pair, r);
    P.base_ctx = PairContext(c_pair, r);
    P.shuffle_ctx = PairContext(shuf, r);
    P.zero_face = sd_iterate(zf, P.base_ctx, P.total_ctx);
    P.shuffle = sd_iterate(phi, P.total_ctx, P.shuffle_ctx);

    PairContext ictx(i_pair, 0);
    auto one = AlgElem::integer(1);
    SimplexPoly<AlgElem> t0poly =
        SimplexPoly<AlgElem>::constant(1, one) - SimplexPoly<AlgElem>::variable(1, 1, one);
    P.t0 = PolyFamily<AlgElem>::from_top(ictx, {{CellId{1, 0}, t0poly}});
    if (auto w = P.t0.kernel_witness())
        throw error("path_extension: t0 does not vanish at the closed end: " + *w);
    return P;
}

/// Alternative section: the canonical one plus the shuffle-pullback of
/// multiplication by the bump t_1 - t_1^2 (which vanishes at both interval
/// ends, so p of the perturbation is zero).
inline PolyFamily<AlgElem> bump_section(const PathExtension& P, const PolyFamily<AlgElem>& c) {
    if (c.context().null()) return PolyFamily<AlgElem>::zero(P.total_ctx);
    auto one = AlgElem::integer(1);
    SimplexPoly<AlgElem> t1 = SimplexPoly<AlgElem>::variable(1, 1, one);
    PairContext ictx(P.t0.context().pair(), 0);
    PolyFamily<AlgElem> bump = PolyFamily<AlgElem>::from_top(ictx, {{CellId{1, 0}, t1 - t1 * t1}});
    PolyFamily<AlgElem> wide = mu_tensor(c, bump);
    return P.s(c) + pullback_family(wide, P.shuffle, P.total_ctx);
}

/// Degreewise linear-solver section: extend the input from the boundary of
/// K (the input on the t=0 face, zero elsewhere) to all of K.  Any solution
/// restricts back to the input on the t=0 face and vanishes where the middle
/// algebra must, so it is a section value; the canonical section witnesses
/// solvability at degree max_degree + 1.
inline PolyFamily<AlgElem> solver_section(const PathExtension& P, const PolyFamily<AlgElem>& c,
                                          int degree_cap = -1) {
    if (c.context().null()) return PolyFamily<AlgElem>::zero(P.total_ctx);
    if (!c.context().same(P.base_ctx))
        throw error("solver section: input lives on the wrong pair");
    if (auto w = c.kernel_witness())
        throw error("solver section: input does not vanish on the boundary at " + *w);

    auto dom = P.total_ctx.domain();
    std::vector<std::vector<int>> amb2base(static_cast<size_t>(dom->dim()) + 1);
    for (int d = 0; d <= dom->dim(); ++d)
        amb2base[static_cast<size_t>(d)].assign(static_cast<size_t>(dom->size(d)), -1);
    auto bdom = P.base_ctx.domain();
    for (int d = 0; d <= bdom->dim(); ++d)
        for (int k = 0; k < bdom->size(d); ++k) {
            const SimplexRef& img = P.zero_face.image(d, k);
            if (img.dim == d)
                amb2base[static_cast<size_t>(d)][static_cast<size_t>(img.idx)] = k;
        }

    SubcomplexSet sub = subcomplex_set(P.sub_ctx.level_pair());
    std::vector<std::vector<SimplexPoly<AlgElem>>> comps(static_cast<size_t>(sub.set->dim()) + 1);
    for (int d = 0; d <= sub.set->dim(); ++d)
        for (int k = 0; k < sub.set->size(d); ++k) {
            int amb = sub.to_ambient[static_cast<size_t>(d)][static_cast<size_t>(k)];
            int kb = amb2base[static_cast<size_t>(d)][static_cast<size_t>(amb)];
            comps[static_cast<size_t>(d)].push_back(kb >= 0 ? c.component(d, kb)
                                                            : SimplexPoly<AlgElem>::zero(d));
        }
    PairContext gctx(full_pair(sub.set), 0);
    PolyFamily<AlgElem> g = PolyFamily<AlgElem>::from_components(gctx, std::move(comps));

    int cap = degree_cap >= 0 ? degree_cap : c.max_degree() + 1;
    auto sol = extend_from_sub(P.total_ctx, sub, g, cap);
    if (!sol) throw error("solver section: no extension within the degree cap");
    return *sol;
}

// --- naturality plumbing ------------------------------------------------------

/// A monotone vertex map Delta^{q_from} -> Delta^{q_to} applied to the
/// simplex factor of I^{n_intervals} x Delta^q, as a simplicial map between
/// the flattened products (point factors drop out).
inline SimplicialMap cube_simplex_ordinal(std::shared_ptr<const SimplicialSet> fromK,
                                          std::shared_ptr<const SimplicialSet> toK,
                                          int n_intervals, int q_from, int q_to,
                                          const std::vector<int>& vertex_map) {
    if (static_cast<int>(vertex_map.size()) != q_from + 1)
        throw error("cube_simplex_ordinal: vertex count mismatch");
    if (q_from == 0 && q_to == 0) return identity_map(fromK);
    if (q_to == 0) {
        if (n_intervals == 0) return constant_map(fromK, toK, 0);
        return product_projection(fromK, 0, n_intervals);
    }
    if (q_from == 0) {
        if (n_intervals == 0) return constant_map(fromK, toK, vertex_map[0]);
        return insert_vertex_slice(toK, n_intervals, vertex_map[0]);
    }
    SimplicialMap sh = simplex_hom(q_from, q_to, vertex_map);
    if (n_intervals == 0) return sh;
    std::vector<SimplicialMap> fs;
    for (int j = 0; j < n_intervals; ++j)
        fs.push_back(identity_map(share(SimplicialSet(fromK->factor(j)))));
    fs.push_back(std::move(sh));
    return product_map(fs, fromK, toK);
}

/// The same ordinal map on the base and total sets of two path extensions
/// over the same n and r, subdivided to their common level.
struct PathOrdinalMaps {
    SimplicialMap base, total;
};

inline PathOrdinalMaps path_ordinal_maps(const PathExtension& from, const PathExtension& to,
                                         const std::vector<int>& vertex_map) {
    if (from.n != to.n || from.r != to.r)
        throw error("path_ordinal_maps: the two extensions must share n and r");
    SimplicialMap b = cube_simplex_ordinal(from.base_ctx.pair().K, to.base_ctx.pair().K, from.n,
                                           from.q, to.q, vertex_map);
    SimplicialMap t = cube_simplex_ordinal(from.sub_ctx.pair().K, to.sub_ctx.pair().K, from.n + 1,
                                           from.q, to.q, vertex_map);
    return {sd_iterate(std::move(b), from.base_ctx, to.base_ctx),
            sd_iterate(std::move(t), from.total_ctx, to.total_ctx)};
}

// --- the cube-raising classifying maps ----------------------------------------

/// Classify a tensor word against a path extension and return the result as
/// a family relative to the whole boundary (the included algebra).  The
/// input must multiply out to zero.
template <class F, class E>
PolyFamily<AlgElem> zeta_apply(const PathExtension& P, F&& f, const TensorElem<E>& t) {
    if (!j_member(t)) throw error("zeta: input is outside the kernel");
    PolyFamily<AlgElem> v = classify(P, std::forward<F>(f), t, true);
    return reinterpret_family(v, P.sub_ctx);
}

/// Evaluator form: the cube-dimension-raising map against P(n, q, r).
template <class F>
auto zeta(int n, int q, int r, F f) {
    auto P = std::make_shared<const PathExtension>(path_extension(n, q, r));
    return [P, f](const auto& t) { return zeta_apply(*P, f, t); };
}

/// The q = 0 special case.
template <class F>
auto Lambda(int n, int r, F f) {
    return zeta(n, 0, r, f);
}

// --- the kernel functor -------------------------------------------------------

/// Wordwise application of a coefficient map; restricts to the kernels
/// because eta commutes with it.
inline auto J_on_hom(const CoeffHom& g) {
    return [g](const TensorElem<AlgElem>& t) {
        return tensor_map(t, [&g](const AlgElem& x) { return g.apply(x); });
    };
}

/// Apply the tensor functor to every link of a homotopy certificate along
/// the chosen sample words over the source generators: each link's family
/// images are lifted coefficientwise to length-one words and multiplied out
/// along the word, endpoints become the tensor words of the endpoint values.
inline HomotopyCert<TensorElem<AlgElem>> J_on_cert(const HomotopyCert<AlgElem>& cert,
                                                   const std::vector<std::vector<int>>& words) {
    if (cert.links.empty()) throw error("J on certificates: empty certificate");
    if (words.empty()) throw error("J on certificates: no sample words");
    using TE = TensorElem<AlgElem>;
    auto sig = [](const AlgElem& x) { return sigma(x); };
    FinPresAlgebra probe = free_presentation(static_cast<int>(words.size()));
    HomotopyCert<TE> out;
    for (const auto& l : cert.links) {
        std::vector<PolyFamily<TE>> fams;
        std::vector<TE> e0, e1;
        for (const auto& w : words) {
            if (w.empty()) throw error("J on certificates: empty word");
            for (int gi : w)
                if (gi < 0 || gi >= static_cast<int>(l.h.images.size()) ||
                    gi >= static_cast<int>(l.f0.images.size()) ||
                    gi >= static_cast<int>(l.f1.images.size()))
                    throw error("J on certificates: word index out of range");
            PolyFamily<TE> fam = l.h.images[static_cast<size_t>(w[0])].map_coeffs<TE>(sig);
            std::vector<AlgElem> w0{l.f0.images[static_cast<size_t>(w[0])]};
            std::vector<AlgElem> w1{l.f1.images[static_cast<size_t>(w[0])]};
            for (size_t i = 1; i < w.size(); ++i) {
                fam = fam * l.h.images[static_cast<size_t>(w[i])].map_coeffs<TE>(sig);
                w0.push_back(l.f0.images[static_cast<size_t>(w[i])]);
                w1.push_back(l.f1.images[static_cast<size_t>(w[i])]);
            }
            fams.push_back(std::move(fam));
            e0.push_back(TE::word(w0));
            e1.push_back(TE::word(w1));
        }
        out.links.push_back(SubdividedHomotopy<TE>{l.level,
                                                   Hom<PolyFamily<TE>>{probe, std::move(fams), std::nullopt},
                                                   Hom<TE>{probe, std::move(e0), std::nullopt},
                                                   Hom<TE>{probe, std::move(e1), std::nullopt}});
    }
    if (auto rep = check_cert(out); !rep.ok) throw error("J on certificates: " + rep.detail);
    return out;
}

}  // namespace shl

#endif
