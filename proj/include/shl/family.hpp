// Families of simplexwise polynomials: the function algebra of a pair (K, L)
// at subdivision level r. An element assigns to every nondegenerate cell of
// sd^r K a polynomial in its barycentric coordinates, compatibly with faces.
#ifndef SHL_FAMILY_HPP
#define SHL_FAMILY_HPP

#include <map>
#include <memory>
#include <set>
#include <vector>

#include "shl/poly.hpp"
#include "shl/simplicial_set.hpp"

namespace shl {

/// A pair (K, L) together with a subdivision level and the tower of
/// subdivisions, last-vertex maps and subcomplex masks up to that level.
/// Copies share the tower; rebuilding from the same pair is deterministic.
class PairContext {
public:
    PairContext() = default;  // null context: carries only the zero family
    PairContext(SimplicialPair pair, int level) : level_(level) {
        if (level < 0) throw error("negative level");
        auto d = std::make_shared<Data>();
        d->pair = std::move(pair);
        d->inL.push_back(d->pair.inL);
        auto cur = d->pair.K;
        for (int s = 0; s < level; ++s) {
            d->sds.push_back(subdivide(cur));
            const Subdivision& sd = d->sds.back();
            d->gammas.push_back(last_vertex_map(sd));
            std::vector<std::vector<char>> mask;
            for (int dm = 0; dm <= sd.set->dim(); ++dm) {
                std::vector<char> row(static_cast<size_t>(sd.set->size(dm)), 0);
                for (int k = 0; k < sd.set->size(dm); ++k) {
                    bool in = true;
                    for (const CellId& c : sd.flags[static_cast<size_t>(dm)][static_cast<size_t>(k)])
                        if (!d->inL[static_cast<size_t>(s)][static_cast<size_t>(c.dim)]
                                   [static_cast<size_t>(c.idx)])
                            in = false;
                    row[static_cast<size_t>(k)] = in ? 1 : 0;
                }
                mask.push_back(std::move(row));
            }
            d->inL.push_back(std::move(mask));
            cur = sd.set;
        }
        d_ = std::move(d);
    }

    bool null() const { return !d_; }
    const SimplicialPair& pair() const { return check().pair; }
    int level() const { return level_; }

    std::shared_ptr<const SimplicialSet> domain() const {
        const Data& d = check();
        return level_ == 0 ? d.pair.K : d.sds[static_cast<size_t>(level_ - 1)].set;
    }
    bool in_sub(int dm, int k) const {
        return check().inL[static_cast<size_t>(level_)][static_cast<size_t>(dm)]
                          [static_cast<size_t>(k)] != 0;
    }
    /// The pair at the current level: (sd^r K, sd^r L) by masks.
    SimplicialPair level_pair() const {
        return SimplicialPair{domain(), check().inL[static_cast<size_t>(level_)]};
    }
    const Subdivision& step(int s) const { return check().sds.at(static_cast<size_t>(s)); }
    const SimplicialMap& gamma(int s) const { return check().gammas.at(static_cast<size_t>(s)); }

    PairContext at_level(int r) const {
        if (null()) throw error("null context has no levels");
        if (r == level_) return *this;
        if (r >= 0 && r <= static_cast<int>(d_->sds.size())) {
            PairContext c = *this;
            c.level_ = r;
            return c;
        }
        return PairContext(d_->pair, r);
    }

    bool same(const PairContext& o) const {
        if (null() || o.null()) return null() && o.null();
        if (level_ != o.level_) return false;
        return d_ == o.d_ || d_->pair == o.d_->pair;
    }

private:
    struct Data {
        SimplicialPair pair;
        std::vector<Subdivision> sds;
        std::vector<SimplicialMap> gammas;
        std::vector<std::vector<std::vector<char>>> inL;  // per level
    };
    std::shared_ptr<const Data> d_;
    int level_ = 0;

    const Data& check() const {
        if (!d_) throw error("null pair context");
        return *d_;
    }
};

/// Cells that are not the base of any face of another cell.
inline std::vector<CellId> maximal_cells(const SimplicialSet& dom) {
    std::vector<std::vector<char>> covered(static_cast<size_t>(dom.dim() + 1));
    for (int d = 0; d <= dom.dim(); ++d)
        covered[static_cast<size_t>(d)].assign(static_cast<size_t>(dom.size(d)), 0);
    for (int d = 1; d <= dom.dim(); ++d)
        for (int k = 0; k < dom.size(d); ++k)
            for (int i = 0; i <= d; ++i) {
                SimplexRef r = dom.face_ref(SimplexRef{d, k, identity_word(d)}, i);
                covered[static_cast<size_t>(r.dim)][static_cast<size_t>(r.idx)] = 1;
            }
    std::vector<CellId> out;
    for (int d = 0; d <= dom.dim(); ++d)
        for (int k = 0; k < dom.size(d); ++k)
            if (!covered[static_cast<size_t>(d)][static_cast<size_t>(k)]) out.push_back({d, k});
    return out;
}

template <class R>
class PolyFamily {
public:
    PolyFamily() = default;  // zero in the null context

    static PolyFamily zero(const PairContext& ctx) {
        PolyFamily f;
        f.ctx_ = ctx;
        f.alloc();
        return f;
    }

    static PolyFamily constant(const PairContext& ctx, const R& value) {
        PolyFamily f = zero(ctx);
        auto dom = ctx.domain();
        for (int d = 0; d <= dom->dim(); ++d)
            for (int k = 0; k < dom->size(d); ++k)
                f.comps_[static_cast<size_t>(d)][static_cast<size_t>(k)] =
                    SimplexPoly<R>::constant(d, value);
        return f;
    }

    /// Build from one polynomial per nondegenerate cell; validates.
    static PolyFamily from_components(const PairContext& ctx,
                                      std::vector<std::vector<SimplexPoly<R>>> comps) {
        PolyFamily f;
        f.ctx_ = ctx;
        f.comps_ = std::move(comps);
        auto dom = ctx.domain();
        if (static_cast<int>(f.comps_.size()) != dom->dim() + 1)
            throw error("component table has wrong dimension range");
        for (int d = 0; d <= dom->dim(); ++d)
            if (static_cast<int>(f.comps_[static_cast<size_t>(d)].size()) != dom->size(d))
                throw error("component table has wrong size in dimension " + std::to_string(d));
        f.validate();
        return f;
    }

    /// Build from polynomials on the maximal cells (those that are not a
    /// face of any other cell); lower components are derived and validated.
    static PolyFamily from_top(const PairContext& ctx,
                               const std::map<CellId, SimplexPoly<R>>& top) {
        auto dom = ctx.domain();
        std::set<CellId> maximal;
        for (const CellId& c : maximal_cells(*dom)) maximal.insert(c);
        PolyFamily f = zero(ctx);
        std::vector<std::vector<char>> assigned(static_cast<size_t>(dom->dim() + 1));
        for (int d = 0; d <= dom->dim(); ++d)
            assigned[static_cast<size_t>(d)].assign(static_cast<size_t>(dom->size(d)), 0);
        for (int d = 0; d <= dom->dim(); ++d)
            for (int k = 0; k < dom->size(d); ++k) {
                bool is_max = maximal.count(CellId{d, k}) != 0;
                bool given = top.count(CellId{d, k}) != 0;
                if (is_max != given)
                    throw error(std::string(is_max ? "missing" : "unexpected") +
                                " top component at " + dom->label(d, k));
                if (given) {
                    f.comps_[static_cast<size_t>(d)][static_cast<size_t>(k)] = top.at(CellId{d, k});
                    assigned[static_cast<size_t>(d)][static_cast<size_t>(k)] = 1;
                }
            }
        for (int d = dom->dim(); d >= 1; --d)
            for (int k = 0; k < dom->size(d); ++k) {
                if (!assigned[static_cast<size_t>(d)][static_cast<size_t>(k)]) continue;
                const SimplexPoly<R>& p = f.comps_[static_cast<size_t>(d)][static_cast<size_t>(k)];
                for (int i = 0; i <= d; ++i) {
                    SimplexRef r = dom->face_ref(SimplexRef{d, k, identity_word(d)}, i);
                    if (assigned[static_cast<size_t>(r.dim)][static_cast<size_t>(r.idx)]) continue;
                    SimplexPoly<R> g = pullback_ordinal(p, coface_values(d, i), d);
                    // section of the degeneracy word recovers the base component
                    std::vector<int> sec(static_cast<size_t>(r.dim) + 1, -1);
                    for (int j = static_cast<int>(r.word.size()) - 1; j >= 0; --j)
                        sec[static_cast<size_t>(r.word[static_cast<size_t>(j)])] = j;
                    f.comps_[static_cast<size_t>(r.dim)][static_cast<size_t>(r.idx)] =
                        pullback_ordinal(g, sec, d - 1);
                    assigned[static_cast<size_t>(r.dim)][static_cast<size_t>(r.idx)] = 1;
                }
            }
        for (int d = 0; d <= dom->dim(); ++d)
            for (int k = 0; k < dom->size(d); ++k)
                if (!assigned[static_cast<size_t>(d)][static_cast<size_t>(k)])
                    throw error("component not reachable from maximal cells: " + dom->label(d, k));
        f.validate();
        return f;
    }

    const PairContext& context() const { return ctx_; }

    const SimplexPoly<R>& component(int d, int k) const {
        if (ctx_.null()) {
            static const SimplexPoly<R> z;
            return z;
        }
        return comps_.at(static_cast<size_t>(d)).at(static_cast<size_t>(k));
    }

    bool is_zero() const {
        for (const auto& row : comps_)
            for (const auto& p : row)
                if (!p.is_zero()) return false;
        return true;
    }

    int max_degree() const {
        int d = 0;
        for (const auto& row : comps_)
            for (const auto& p : row) d = std::max(d, p.total_degree());
        return d;
    }

    PolyFamily& operator+=(const PolyFamily& o) {
        unify(o);
        for (size_t d = 0; d < o.comps_.size(); ++d)
            for (size_t k = 0; k < o.comps_[d].size(); ++k) comps_[d][k] += o.comps_[d][k];
        return *this;
    }
    PolyFamily& operator-=(const PolyFamily& o) {
        unify(o);
        for (size_t d = 0; d < o.comps_.size(); ++d)
            for (size_t k = 0; k < o.comps_[d].size(); ++k) comps_[d][k] -= o.comps_[d][k];
        return *this;
    }
    friend PolyFamily operator+(PolyFamily a, const PolyFamily& b) { return a += b; }
    friend PolyFamily operator-(PolyFamily a, const PolyFamily& b) { return a -= b; }

    friend PolyFamily operator*(const PolyFamily& a, const PolyFamily& b) {
        PolyFamily r;
        r.unify(a);
        r.unify(b);
        if (r.ctx_.null()) return r;
        if (a.ctx_.null() || b.ctx_.null()) {
            for (auto& row : r.comps_)
                for (auto& p : row) p = SimplexPoly<R>();
            return r;
        }
        for (size_t d = 0; d < r.comps_.size(); ++d)
            for (size_t k = 0; k < r.comps_[d].size(); ++k)
                r.comps_[d][k] = a.comps_[d][k] * b.comps_[d][k];
        return r;
    }

    friend PolyFamily operator*(const Int& n, PolyFamily f) {
        for (auto& row : f.comps_)
            for (auto& p : row) p = n * p;
        return f;
    }

    friend bool operator==(const PolyFamily& a, const PolyFamily& b) {
        if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
        return a.ctx_.same(b.ctx_) && a.comps_ == b.comps_;
    }
    friend bool operator!=(const PolyFamily& a, const PolyFamily& b) { return !(a == b); }

    /// Check face compatibility of every component.
    void validate() const {
        if (ctx_.null()) return;
        auto dom = ctx_.domain();
        for (int d = 0; d <= dom->dim(); ++d)
            for (int k = 0; k < dom->size(d); ++k) {
                const SimplexPoly<R>& p = comps_[static_cast<size_t>(d)][static_cast<size_t>(k)];
                if (p.nvars() >= 0 && p.nvars() != d)
                    throw error("component has wrong variable count at " + dom->label(d, k));
                for (int i = 0; i <= d && d >= 1; ++i) {
                    SimplexRef r = dom->face_ref(SimplexRef{d, k, identity_word(d)}, i);
                    SimplexPoly<R> lhs = pullback_ordinal(p, coface_values(d, i), d);
                    SimplexPoly<R> rhs = pullback_ordinal(
                        comps_[static_cast<size_t>(r.dim)][static_cast<size_t>(r.idx)], r.word,
                        r.dim);
                    if (lhs != rhs)
                        throw error("face incompatibility at " + dom->label(d, k) + " face " +
                                    std::to_string(i));
                }
            }
    }

    /// First cell of the subcomplex where the family does not vanish.
    std::optional<std::string> kernel_witness() const {
        if (ctx_.null()) return std::nullopt;
        auto dom = ctx_.domain();
        for (int d = 0; d <= dom->dim(); ++d)
            for (int k = 0; k < dom->size(d); ++k)
                if (ctx_.in_sub(d, k) &&
                    !comps_[static_cast<size_t>(d)][static_cast<size_t>(k)].is_zero())
                    return dom->label(d, k);
        return std::nullopt;
    }
    bool vanishes_on_sub() const { return !kernel_witness().has_value(); }

    /// Values of δ_i : [d-1] -> [d].
    static std::vector<int> coface_values(int d, int i) {
        std::vector<int> w;
        for (int v = 0; v <= d; ++v)
            if (v != i) w.push_back(v);
        return w;
    }

    template <class S, class F>
    PolyFamily<S> map_coeffs(F&& f) const {
        PolyFamily<S> r = PolyFamily<S>::zero(ctx_);
        for (size_t d = 0; d < comps_.size(); ++d)
            for (size_t k = 0; k < comps_[d].size(); ++k)
                r.comps_[d][k] = comps_[d][k].template map_coeffs<S>(f);
        r.validate();
        return r;
    }

    /// Raw accessor for builders that assemble components in place.
    std::vector<std::vector<SimplexPoly<R>>>& raw_components() { return comps_; }

private:
    PairContext ctx_;
    std::vector<std::vector<SimplexPoly<R>>> comps_;

    void alloc() {
        auto dom = ctx_.domain();
        comps_.assign(static_cast<size_t>(dom->dim() + 1), {});
        for (int d = 0; d <= dom->dim(); ++d)
            comps_[static_cast<size_t>(d)].resize(static_cast<size_t>(dom->size(d)));
    }
    void unify(const PolyFamily& o) {
        if (o.ctx_.null()) return;
        if (ctx_.null()) {
            ctx_ = o.ctx_;
            alloc();
            return;
        }
        if (!ctx_.same(o.ctx_)) throw error("family context mismatch");
    }

    template <class S>
    friend class PolyFamily;
};

/// Pullback of a family along a simplicial map into its domain.
template <class R>
PolyFamily<R> pullback_family(const PolyFamily<R>& g, const SimplicialMap& f,
                              const PairContext& src) {
    if (g.context().null()) return PolyFamily<R>::zero(src);
    if (!(f.target() == *g.context().domain())) throw error("map target is not the family domain");
    if (!(f.source() == *src.domain())) throw error("map source is not the requested context");
    auto dom = src.domain();
    std::vector<std::vector<SimplexPoly<R>>> comps(static_cast<size_t>(dom->dim() + 1));
    for (int d = 0; d <= dom->dim(); ++d) {
        comps[static_cast<size_t>(d)].resize(static_cast<size_t>(dom->size(d)));
        for (int k = 0; k < dom->size(d); ++k) {
            const SimplexRef& ref = f.image(d, k);
            comps[static_cast<size_t>(d)][static_cast<size_t>(k)] =
                pullback_ordinal(g.component(ref.dim, ref.idx), ref.word, ref.dim);
        }
    }
    return PolyFamily<R>::from_components(src, std::move(comps));
}

/// One subdivision step: reindex along the last-vertex map to level + 1.
template <class R>
PolyFamily<R> transition(const PolyFamily<R>& f) {
    const PairContext& c = f.context();
    if (c.null()) throw error("cannot subdivide the null context");
    PairContext up = c.at_level(c.level() + 1);
    return pullback_family(f, up.gamma(c.level()), up);
}

template <class R>
PolyFamily<R> at_level(PolyFamily<R> f, int r) {
    if (f.context().null()) throw error("cannot reindex the null context");
    if (r < f.context().level()) throw error("cannot lower the level");
    while (f.context().level() < r) f = transition(f);
    return f;
}

/// Coordinate t_i (1 <= i <= n) on an atomic standard simplex, level 0.
template <class R>
PolyFamily<R> simplex_coordinate(const PairContext& ctx, int i, const R& one) {
    auto dom = ctx.domain();
    if (ctx.level() != 0 || dom->is_product()) throw error("need an atomic simplex at level 0");
    int n = dom->dim();
    if (dom->size(n) != 1) throw error("need a unique top cell");
    std::map<CellId, SimplexPoly<R>> top;
    top[CellId{n, 0}] = SimplexPoly<R>::variable(i, n, one);
    return PolyFamily<R>::from_top(ctx, top);
}

/// Coordinate of factor j pulled back from the factor's own coordinate t_i.
template <class R>
PolyFamily<R> factor_coordinate(const PairContext& ctx, int j, int i, const R& one) {
    auto dom = ctx.domain();
    if (ctx.level() != 0) throw error("factor coordinates are built at level 0");
    if (!dom->is_product()) {
        if (j != 0) throw error("atomic set has a single factor");
        return simplex_coordinate(ctx, i, one);
    }
    auto factor = share(SimplicialSet(dom->factor(j)));
    PairContext fc(full_pair(factor), 0);
    return pullback_family(simplex_coordinate(fc, i, one), product_projection(dom, j, j + 1), ctx);
}

/// Restriction to the subcomplex, as a family on the subcomplex itself.
template <class R>
PolyFamily<R> restrict_family(const PolyFamily<R>& f, const SubcomplexSet& sub) {
    PairContext c(full_pair(sub.set), 0);
    return pullback_family(f, sub.inclusion, c);
}

}  // namespace shl

#endif
