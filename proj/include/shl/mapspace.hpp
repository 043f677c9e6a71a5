// Staged simplices of the iterated-loop mapping space out of a finitely
// presented algebra: face/degeneracy/transition operators, vertex round
// trips, the loop-stage map evaluated on sampled kernel words, the
// block-swap comparison square, and certificate-based partitioning of
// diagram vertices into connected classes.
#ifndef SHL_MAPSPACE_HPP
#define SHL_MAPSPACE_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "shl/algebra.hpp"
#include "shl/extensions.hpp"
#include "shl/family.hpp"
#include "shl/homotopy.hpp"
#include "shl/mult.hpp"
#include "shl/simplicial_set.hpp"
#include "shl/tensor.hpp"

namespace shl {

/// Integer scaling of noncommutative polynomials (termwise).
inline NCPoly operator*(const Int& c, NCPoly p) {
    if (c == 0) return NCPoly{};
    for (auto& [w, k] : p.terms) k *= c;
    return p;
}

/// Tensor atoms of a noncommutative polynomial: its word basis.
inline std::vector<std::pair<NCPoly, Int>> tensor_atoms(const NCPoly& p) {
    std::vector<std::pair<NCPoly, Int>> out;
    out.reserve(p.terms.size());
    for (const auto& [w, c] : p.terms) out.emplace_back(NCPoly::word(w), c);
    return out;
}

/// A tensor word over a finitely presented source algebra, used to sample
/// elements of the source's word kernel.
using SourceWord = TensorElem<NCPoly>;

inline std::string to_string(const NCPoly& p) {
    if (p.terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : p.terms) {
        if (!first) out += " + ";
        first = false;
        out += c.str();
        out += "*";
        if (w.empty()) {
            out += "1";
            continue;
        }
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) out += ".";
            out += "g" + std::to_string(w[i]);
        }
    }
    return out;
}

inline std::string to_string(const SourceWord& t) {
    if (t.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : t.terms()) {
        if (!first) out += " + ";
        first = false;
        out += c.str() + "*<";
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) out += "|";
            out += to_string(w[i]);
        }
        out += ">";
    }
    return out;
}

// --- staged simplices ---------------------------------------------------------

/// One simplex of the staged mapping space: a boundary-relative morphism
/// from a finitely presented source algebra into the function algebra of
/// (I^n x Delta^q, dI^n x Delta^q) at subdivision level r. The loop
/// coordinates are the cube factors; each newly created loop coordinate sits
/// rightmost among them, directly left of the simplex factor.
struct MapSimplex {
    int n = 0;  ///< loop degree: how many interval factors
    int q = 0;  ///< simplicial degree
    int r = 0;  ///< subdivision stage
    PairContext ctx;               ///< (I^n x Delta^q, dI^n x Delta^q) at level r
    Hom<PolyFamily<AlgElem>> hom;  ///< generator images, boundary-relative

    friend bool operator==(const MapSimplex& a, const MapSimplex& b) {
        return a.n == b.n && a.q == b.q && a.r == b.r && a.hom.source == b.hom.source &&
               a.hom.images == b.hom.images;
    }
};

/// Build and fully check a simplex: images are rebased onto one shared
/// context, must vanish on the boundary subcomplex, and must satisfy the
/// source's relations.
inline MapSimplex make_map_simplex(FinPresAlgebra A, int n, int q, int r,
                                   std::vector<PolyFamily<AlgElem>> images) {
    if (n < 0 || q < 0 || r < 0) throw error("map simplex: indices must be nonnegative");
    PairContext ctx(cube_simplex_pair(n, q), r);
    for (auto& im : images) {
        if (im.context().null()) continue;
        im = reinterpret_family(im, ctx);
        if (auto w = im.kernel_witness())
            throw error("map simplex: generator image does not vanish on the boundary at " +
                        *w);
    }
    Hom<PolyFamily<AlgElem>> h{std::move(A), std::move(images), std::nullopt};
    h.validate();
    return MapSimplex{n, q, r, std::move(ctx), std::move(h)};
}

/// The basepoint: every generator maps to zero.
inline MapSimplex map_basepoint(FinPresAlgebra A, int n, int q, int r) {
    std::size_t g = A.gens.size();
    return make_map_simplex(std::move(A), n, q, r, std::vector<PolyFamily<AlgElem>>(g));
}

/// Recheck every invariant of an existing simplex.
inline void validate_map_simplex(const MapSimplex& x) {
    if (x.n < 0 || x.q < 0 || x.r < 0)
        throw error("map simplex: indices must be nonnegative");
    if (x.ctx.null()) throw error("map simplex: null context");
    if (x.ctx.level() != x.r)
        throw error("map simplex: context level disagrees with the stage");
    if (!(x.ctx.pair() == cube_simplex_pair(x.n, x.q)))
        throw error("map simplex: context pair is not the declared cube-times-simplex pair");
    if (x.hom.source.gens.size() != x.hom.images.size())
        throw error("map simplex: generator count mismatch");
    for (const auto& im : x.hom.images) {
        if (im.context().null()) continue;
        if (!im.context().same(x.ctx))
            throw error("map simplex: image lives on a foreign context");
        if (auto w = im.kernel_witness())
            throw error("map simplex: image does not vanish on the boundary at " + *w);
    }
    if (auto i = x.hom.failing_relation())
        throw error("map simplex: relation #" + std::to_string(*i) + " does not vanish");
}

namespace detail {

/// Precompose all images with an ordinal map in the simplicial direction.
inline MapSimplex simplex_reindexed(const MapSimplex& x, int q_new,
                                    const std::vector<int>& vertex_map) {
    SimplicialPair p = cube_simplex_pair(x.n, q_new);
    PairContext ctx(p, x.r);
    SimplicialMap f0 = cube_simplex_ordinal(p.K, x.ctx.pair().K, x.n, q_new, x.q, vertex_map);
    SimplicialMap f = sd_iterate(f0, ctx, x.ctx);
    std::vector<PolyFamily<AlgElem>> imgs;
    imgs.reserve(x.hom.images.size());
    for (const auto& im : x.hom.images)
        imgs.push_back(im.context().null() ? PolyFamily<AlgElem>{}
                                           : pullback_family(im, f, ctx));
    return MapSimplex{x.n, q_new, x.r, std::move(ctx),
                      Hom<PolyFamily<AlgElem>>{x.hom.source, std::move(imgs), std::nullopt}};
}

}  // namespace detail

/// The i-th face in the simplicial direction (restriction along the coface).
inline MapSimplex map_face(const MapSimplex& x, int i) {
    if (x.q < 1) throw error("map face: the simplex has no simplicial faces");
    if (i < 0 || i > x.q) throw error("map face: index out of range");
    std::vector<int> vm(static_cast<std::size_t>(x.q));
    for (int j = 0; j < x.q; ++j) vm[static_cast<std::size_t>(j)] = j < i ? j : j + 1;
    return detail::simplex_reindexed(x, x.q - 1, vm);
}

/// The i-th degeneracy (precomposition with the codegeneracy).
inline MapSimplex map_degeneracy(const MapSimplex& x, int i) {
    if (i < 0 || i > x.q) throw error("map degeneracy: index out of range");
    std::vector<int> vm(static_cast<std::size_t>(x.q) + 2);
    for (int j = 0; j <= x.q + 1; ++j) vm[static_cast<std::size_t>(j)] = j <= i ? j : j - 1;
    return detail::simplex_reindexed(x, x.q + 1, vm);
}

enum class SimplicialOp { face, degeneracy };

inline MapSimplex face_degeneracy(const MapSimplex& x, int i, SimplicialOp kind) {
    return kind == SimplicialOp::face ? map_face(x, i) : map_degeneracy(x, i);
}

/// Raise the subdivision stage by transition pullbacks; endpoint data is
/// unchanged up to the last-vertex identification.
inline MapSimplex map_transition(const MapSimplex& x, int r) {
    if (r < x.r) throw error("map transition: stages only increase");
    if (r == x.r) return x;
    PairContext ctx = x.ctx.at_level(r);
    std::vector<PolyFamily<AlgElem>> imgs;
    imgs.reserve(x.hom.images.size());
    for (const auto& im : x.hom.images)
        imgs.push_back(im.context().null() ? PolyFamily<AlgElem>{} : at_level(im, r));
    return MapSimplex{x.n, x.q, r, std::move(ctx),
                      Hom<PolyFamily<AlgElem>>{x.hom.source, std::move(imgs), std::nullopt}};
}

// --- vertices -----------------------------------------------------------------

/// Package a boundary-relative morphism as a degree-zero simplex.
inline MapSimplex encode_vertex(const Hom<PolyFamily<AlgElem>>& f, int n, int r) {
    return make_map_simplex(f.source, n, 0, r, f.images);
}

/// Recover the morphism from a degree-zero simplex.
inline Hom<PolyFamily<AlgElem>> decode_vertex(const MapSimplex& x) {
    if (x.q != 0) throw error("decode vertex: simplicial degree must be zero");
    return x.hom;
}

/// At loop degree zero the vertices are exactly plain coefficient morphisms:
/// build one from its values.
inline MapSimplex constant_vertex(FinPresAlgebra A, const std::vector<AlgElem>& values,
                                  int r) {
    PairContext ctx(cube_simplex_pair(0, 0), r);
    std::vector<PolyFamily<AlgElem>> imgs;
    imgs.reserve(values.size());
    for (const auto& v : values)
        imgs.push_back(v.is_zero() ? PolyFamily<AlgElem>{}
                                   : PolyFamily<AlgElem>::constant(ctx, v));
    return make_map_simplex(std::move(A), 0, 0, r, std::move(imgs));
}

/// Values of a loop-degree-zero vertex as plain coefficients.
inline Hom<AlgElem> vertex_values(const MapSimplex& x) {
    if (x.n != 0 || x.q != 0) throw error("vertex values: need loop and simplicial degree zero");
    std::vector<AlgElem> vals;
    vals.reserve(x.hom.images.size());
    for (const auto& im : x.hom.images)
        vals.push_back(im.context().null() ? AlgElem{} : im.component(0, 0).as_constant());
    return Hom<AlgElem>{x.hom.source, std::move(vals), std::nullopt};
}

// --- the loop-stage map ---------------------------------------------------------

/// One loop-stage step: send a simplex over the source A to a simplex over
/// the word kernel of A, evaluated on the given kernel sample words. The new
/// source is a free proxy presentation with one generator per sample word;
/// the new loop coordinate is appended rightmost among the cube factors.
/// Membership of each sample in the kernel is certified in the free word
/// algebra, so it is sound but may reject elements that only reach the
/// kernel because of the source's relations.
inline MapSimplex zeta_stage(const MapSimplex& x, const std::vector<SourceWord>& samples) {
    if (samples.empty()) throw error("zeta stage: no sample words");
    PathExtension P = path_extension(x.n, x.q, x.r);
    auto f = [&x](const NCPoly& p) { return eval_ncpoly(p, x.hom.images); };
    std::vector<PolyFamily<AlgElem>> imgs;
    imgs.reserve(samples.size());
    for (const auto& t : samples) imgs.push_back(zeta_apply(P, f, t));
    FinPresAlgebra J = free_presentation(static_cast<int>(samples.size()));
    J.name = "J(" + x.hom.source.name + ")";
    return MapSimplex{x.n + 1, x.q, x.r, P.sub_ctx,
                      Hom<PolyFamily<AlgElem>>{std::move(J), std::move(imgs), std::nullopt}};
}

// --- the comparison square ------------------------------------------------------

namespace detail {

/// Map between equal-level cube-times-simplex contexts that permutes the
/// factors: image coordinate j reads source coordinate perm[j].
inline SimplicialMap factor_permutation(const PairContext& src, const PairContext& dst,
                                        const std::vector<int>& perm) {
    auto K = src.pair().K;
    bool ident = true;
    for (std::size_t j = 0; j < perm.size(); ++j)
        if (perm[j] != static_cast<int>(j)) ident = false;
    SimplicialMap f0 =
        (ident || !K->is_product()) ? identity_map(K) : permute_product(K, perm);
    return sd_iterate(f0, src, dst);
}

}  // namespace detail

/// Report from evaluating the two composites around the comparison square.
struct SquareReport {
    bool ok = true;
    std::string detail;  ///< empty when ok; otherwise the first witness
    std::vector<std::size_t> failing_samples;
};

/// Evaluate both composites around the block-swap comparison square on
/// sample kernel words and report exact agreement or a counterexample.
///
/// The input morphism lands in functions on (I^m x I^v, boundary) at level r
/// (m-block leftmost). One route swaps the blocks first and then applies the
/// loop-stage classifying map so that the new coordinate lands between the
/// v-block and the m-block; the other route classifies directly (new
/// coordinate rightmost) and then permutes (m-block, v-block, new) into
/// (v-block, new, m-block). Both land in functions on the boundary pair of
/// I^(v+1+m) with that coordinate order.
inline SquareReport comparison_square(int v, int m, int r,
                                      const Hom<PolyFamily<AlgElem>>& f,
                                      const std::vector<SourceWord>& samples) {
    SquareReport rep;
    if (v < 0 || m < 0 || r < 0) {
        rep.ok = false;
        rep.detail = "the square needs nonnegative parameters";
        return rep;
    }
    using Fam = PolyFamily<AlgElem>;
    PairContext ctx_mv(cube_simplex_pair(m + v, 0), r);      // (m-block, v-block)
    PairContext ctx_vm(cube_simplex_pair(v + m, 0), r);      // (v-block, m-block)
    PairContext ctx_out(cube_simplex_pair(v + 1 + m, 0), r); // (v, new, m)

    // Input block swap: pullback along (v,m) -> (m,v).
    std::vector<int> swap_in(static_cast<std::size_t>(m + v));
    for (int j = 0; j < m; ++j) swap_in[static_cast<std::size_t>(j)] = v + j;
    for (int i = 0; i < v; ++i) swap_in[static_cast<std::size_t>(m + i)] = i;
    SimplicialMap c_vm = detail::factor_permutation(ctx_vm, ctx_mv, swap_in);
    std::vector<Fam> swapped;
    swapped.reserve(f.images.size());
    for (const auto& im : f.images)
        swapped.push_back(im.context().null() ? Fam{} : pullback_family(im, c_vm, ctx_vm));

    PathExtension P = path_extension(v + m, 0, r);
    auto eval_swapped = [&swapped](const NCPoly& p) { return eval_ncpoly(p, swapped); };
    auto eval_direct = [&f](const NCPoly& p) { return eval_ncpoly(p, f.images); };

    // Output permutations into the common coordinate order (v, new, m).
    std::vector<int> psi(static_cast<std::size_t>(v + 1 + m));   // from (v, m, new)
    for (int j = 0; j < v; ++j) psi[static_cast<std::size_t>(j)] = j;
    for (int j = v; j < v + m; ++j) psi[static_cast<std::size_t>(j)] = j + 1;
    psi[static_cast<std::size_t>(v + m)] = v;
    std::vector<int> phi(static_cast<std::size_t>(v + 1 + m));   // from (m, v, new)
    for (int j = 0; j < m; ++j) phi[static_cast<std::size_t>(j)] = v + 1 + j;
    for (int j = m; j < m + v; ++j) phi[static_cast<std::size_t>(j)] = j - m;
    phi[static_cast<std::size_t>(m + v)] = v;
    SimplicialMap psi_map = detail::factor_permutation(ctx_out, P.sub_ctx, psi);
    SimplicialMap phi_map = detail::factor_permutation(ctx_out, P.sub_ctx, phi);

    for (std::size_t idx = 0; idx < samples.size(); ++idx) {
        const SourceWord& t = samples[idx];
        try {
            Fam insert_first = pullback_family(zeta_apply(P, eval_swapped, t), psi_map, ctx_out);
            Fam append_last = pullback_family(zeta_apply(P, eval_direct, t), phi_map, ctx_out);
            if (!(insert_first == append_last)) {
                rep.ok = false;
                rep.failing_samples.push_back(idx);
                if (rep.detail.empty())
                    rep.detail = "sample " + std::to_string(idx) + " (" + to_string(t) +
                                 "): the two composites disagree";
            }
        } catch (const error& e) {
            rep.ok = false;
            rep.failing_samples.push_back(idx);
            if (rep.detail.empty())
                rep.detail = "sample " + std::to_string(idx) + " (" + to_string(t) +
                             ") raised: " + e.what();
        }
    }
    return rep;
}

// --- stage diagrams and their connected classes ---------------------------------

/// An explicit homotopy certificate connecting two loop-degree-zero vertices.
struct CertEdge {
    std::size_t a = 0, b = 0;
    HomotopyCert<AlgElem> cert;
};

/// A collection of degree-zero simplices, degree-one simplices, and
/// certificate edges, possibly at mixed stages. Queries align stages by
/// transition before comparing.
struct StageDiagram {
    std::vector<MapSimplex> vertices;
    std::vector<MapSimplex> edges;
    std::vector<CertEdge> certs;
};

/// Equality after raising both simplices to a common stage.
inline bool aligned_equal(const MapSimplex& a, const MapSimplex& b) {
    if (a.n != b.n || a.q != b.q) return false;
    if (!(a.hom.source == b.hom.source)) return false;
    int R = std::max(a.r, b.r);
    return map_transition(a, R) == map_transition(b, R);
}

namespace detail {

inline std::optional<std::size_t> matching_vertex(const StageDiagram& S,
                                                  const MapSimplex& x) {
    for (std::size_t i = 0; i < S.vertices.size(); ++i)
        if (aligned_equal(S.vertices[i], x)) return i;
    return std::nullopt;
}

}  // namespace detail

/// Check the diagram's structural invariants: vertices have degree zero,
/// edges have degree one and both their faces appear among the vertices
/// after stage alignment, and certificate edges validate with endpoints
/// matching the vertices they connect.
inline void validate_diagram(const StageDiagram& S) {
    for (std::size_t i = 0; i < S.vertices.size(); ++i) {
        if (S.vertices[i].q != 0)
            throw error("stage diagram: vertex #" + std::to_string(i) +
                        " has nonzero simplicial degree");
        validate_map_simplex(S.vertices[i]);
    }
    for (std::size_t k = 0; k < S.edges.size(); ++k) {
        const MapSimplex& e = S.edges[k];
        if (e.q != 1)
            throw error("stage diagram: edge #" + std::to_string(k) +
                        " does not have simplicial degree one");
        validate_map_simplex(e);
        for (int i = 0; i <= 1; ++i)
            if (!detail::matching_vertex(S, map_face(e, i)))
                throw error("stage diagram: face " + std::to_string(i) + " of edge #" +
                            std::to_string(k) + " is not a vertex of the diagram");
    }
    for (std::size_t k = 0; k < S.certs.size(); ++k) {
        const CertEdge& c = S.certs[k];
        if (c.a >= S.vertices.size() || c.b >= S.vertices.size())
            throw error("stage diagram: certificate #" + std::to_string(k) +
                        " points outside the vertex list");
        const MapSimplex& va = S.vertices[c.a];
        const MapSimplex& vb = S.vertices[c.b];
        if (va.n != 0 || vb.n != 0)
            throw error("stage diagram: certificate #" + std::to_string(k) +
                        " must connect loop-degree-zero vertices");
        if (auto repc = check_cert(c.cert); !repc.ok)
            throw error("stage diagram: certificate #" + std::to_string(k) +
                        " is invalid: " + repc.detail);
        if (c.cert.links.empty()) continue;
        if (!(c.cert.links.front().f0 == vertex_values(va)) ||
            !(c.cert.links.back().f1 == vertex_values(vb)))
            throw error("stage diagram: certificate #" + std::to_string(k) +
                        " does not run between its declared vertices");
    }
}

/// Certificate-closed connected classes of the diagram's vertices: a lower
/// bound on connectivity only (adding edges or certificates can merge
/// classes, never split them). Classes are listed sorted by smallest member.
inline std::vector<std::vector<std::size_t>> pi0_partition(const StageDiagram& S) {
    validate_diagram(S);
    std::vector<std::size_t> parent(S.vertices.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&parent](std::size_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    auto unite = [&parent, &find](std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    // Identical vertices at shifted stages are the same point of the colimit.
    for (std::size_t i = 0; i < S.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < S.vertices.size(); ++j)
            if (aligned_equal(S.vertices[i], S.vertices[j])) unite(i, j);
    for (const MapSimplex& e : S.edges) {
        auto a = detail::matching_vertex(S, map_face(e, 1));
        auto b = detail::matching_vertex(S, map_face(e, 0));
        if (a && b) unite(*a, *b);
    }
    for (const CertEdge& c : S.certs) unite(c.a, c.b);
    std::map<std::size_t, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < S.vertices.size(); ++i) classes[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    out.reserve(classes.size());
    for (auto& [root, members] : classes) out.push_back(std::move(members));
    return out;
}

}  // namespace shl

#endif
