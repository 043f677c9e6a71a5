// Relative extension of polynomial families: given data on a subcomplex,
// find a compatible family on the whole pair by solving the face and
// restriction constraints as integer linear systems, one coefficient-algebra
// basis element at a time.
#ifndef SHL_EXTEND_HPP
#define SHL_EXTEND_HPP

#include <functional>
#include <set>
#include <tuple>

#include "shl/family.hpp"
#include "shl/smith.hpp"

namespace shl {

/// All exponent vectors in `vars` variables of total degree at most `deg`.
inline std::vector<std::vector<int>> multidegrees(int vars, int deg) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<size_t>(vars), 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == vars) {
            out.push_back(cur);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            cur[static_cast<size_t>(i)] = e;
            rec(i + 1, left - e);
        }
        cur[static_cast<size_t>(i)] = 0;
    };
    rec(0, deg);
    return out;
}

namespace detail {

/// Linear model of all degree <= deg families on a context: one integer
/// unknown per (cell, monomial), and the face-compatibility equations.
struct FamilyModel {
    PairContext ctx;
    int deg;
    std::vector<std::vector<std::vector<std::vector<int>>>> monos;  // [d][k] -> monomial list
    std::map<std::tuple<int, int, std::vector<int>>, size_t> index;  // (d,k,mono) -> column
    size_t ncols = 0;
    IntMat face_rows;

    FamilyModel(const PairContext& c, int degree) : ctx(c), deg(degree) {
        auto dom = ctx.domain();
        monos.resize(static_cast<size_t>(dom->dim() + 1));
        for (int d = 0; d <= dom->dim(); ++d) {
            auto list = multidegrees(d, deg);
            monos[static_cast<size_t>(d)].assign(static_cast<size_t>(dom->size(d)), list);
            for (int k = 0; k < dom->size(d); ++k)
                for (const auto& m : list) index[{d, k, m}] = ncols++;
        }
        build_face_rows();
    }

    size_t col(int d, int k, const std::vector<int>& m) const { return index.at({d, k, m}); }

    void build_face_rows() {
        auto dom = ctx.domain();
        for (int d = 1; d <= dom->dim(); ++d)
            for (int k = 0; k < dom->size(d); ++k)
                for (int i = 0; i <= d; ++i) {
                    SimplexRef r = dom->face_ref(SimplexRef{d, k, identity_word(d)}, i);
                    // rows indexed by monomials in d-1 variables
                    std::map<std::vector<int>, IntVec> rows;
                    auto touch = [&](const std::vector<int>& m) -> IntVec& {
                        auto it = rows.find(m);
                        if (it == rows.end())
                            it = rows.emplace(m, IntVec(ncols, 0)).first;
                        return it->second;
                    };
                    auto delta = PolyFamily<Int>::coface_values(d, i);
                    for (const auto& m : monos[static_cast<size_t>(d)][static_cast<size_t>(k)]) {
                        auto img = pullback_ordinal(SimplexPoly<Int>::monomial(m, 1), delta, d);
                        for (const auto& [bm, bc] : img.terms()) touch(bm)[col(d, k, m)] += bc;
                    }
                    for (const auto& m :
                         monos[static_cast<size_t>(r.dim)][static_cast<size_t>(r.idx)]) {
                        auto img = pullback_ordinal(SimplexPoly<Int>::monomial(m, 1), r.word, r.dim);
                        for (const auto& [bm, bc] : img.terms())
                            touch(bm)[col(r.dim, r.idx, m)] -= bc;
                    }
                    for (auto& [m, row] : rows) {
                        bool nonzero = false;
                        for (const Int& v : row)
                            if (v != 0) nonzero = true;
                        if (nonzero) face_rows.push_back(std::move(row));
                    }
                }
    }

    PolyFamily<AlgElem> assemble(const std::map<long, IntVec>& per_basis,
                                 const std::shared_ptr<const AlgebraSpec>& spec) const {
        auto dom = ctx.domain();
        std::vector<std::vector<SimplexPoly<AlgElem>>> comps(static_cast<size_t>(dom->dim() + 1));
        for (int d = 0; d <= dom->dim(); ++d) {
            comps[static_cast<size_t>(d)].resize(static_cast<size_t>(dom->size(d)));
            for (int k = 0; k < dom->size(d); ++k) {
                SimplexPoly<AlgElem> p = SimplexPoly<AlgElem>::zero(d);
                for (const auto& m : monos[static_cast<size_t>(d)][static_cast<size_t>(k)]) {
                    AlgElem c;
                    for (const auto& [beta, x] : per_basis) {
                        const Int& v = x[col(d, k, m)];
                        if (v != 0) c += AlgElem::basis(spec, beta, v);
                    }
                    if (!c.is_zero()) p += SimplexPoly<AlgElem>::monomial(m, c);
                }
                comps[static_cast<size_t>(d)][static_cast<size_t>(k)] = std::move(p);
            }
        }
        return PolyFamily<AlgElem>::from_components(ctx, std::move(comps));
    }
};

}  // namespace detail

/// Extend a family given on the subcomplex (as its own simplicial set, from
/// subcomplex_set of the context's level pair) to the whole context. Returns
/// the extension or nothing if none exists up to the degree cap.
inline std::optional<PolyFamily<AlgElem>> extend_from_sub(const PairContext& ctx,
                                                          const SubcomplexSet& sub,
                                                          const PolyFamily<AlgElem>& g,
                                                          int degree_cap = -1) {
    if (!(sub.inclusion.target() == *ctx.domain()))
        throw error("subcomplex does not include into the context domain");
    if (!g.context().null() && !(*g.context().domain() == *sub.set))
        throw error("boundary data does not live on the subcomplex");

    // collect coefficient basis elements appearing in the data
    std::shared_ptr<const AlgebraSpec> spec;
    std::set<long> betas;
    auto lsub = sub.set;
    for (int d = 0; d <= lsub->dim(); ++d)
        for (int k = 0; k < lsub->size(d); ++k)
            for (const auto& [m, c] : g.component(d, k).terms()) {
                if (!spec) spec = c.spec();
                for (const auto& kv : c.coeffs()) betas.insert(kv.first);
            }
    if (!spec) spec = integers_algebra();  // zero data: any algebra works

    int start = std::max(g.max_degree(), 1);
    int cap = degree_cap >= 0 ? degree_cap : 2 * g.max_degree() + ctx.domain()->dim();
    cap = std::max(cap, start);
    for (int deg = start; deg <= cap; ++deg) {
        detail::FamilyModel model(ctx, deg);
        IntMat A = model.face_rows;
        // one restriction row per (subcomplex cell, monomial)
        std::vector<std::pair<std::pair<int, int>, std::vector<int>>> rrows;
        for (int d = 0; d <= lsub->dim(); ++d)
            for (int k = 0; k < lsub->size(d); ++k) {
                int a = sub.to_ambient[static_cast<size_t>(d)][static_cast<size_t>(k)];
                for (const auto& m : model.monos[static_cast<size_t>(d)][static_cast<size_t>(a)]) {
                    IntVec row(model.ncols, 0);
                    row[model.col(d, a, m)] = 1;
                    A.push_back(std::move(row));
                    rrows.push_back({{d, k}, m});
                }
            }
        SmithResult snf = smith_normal_form(A);
        std::map<long, IntVec> per_basis;
        bool ok = true;
        for (long beta : betas) {
            IntVec b(A.size(), 0);
            for (size_t r = 0; r < rrows.size(); ++r) {
                auto [cell, m] = rrows[r];
                const auto& terms = g.component(cell.first, cell.second).terms();
                auto it = terms.find(m);
                if (it == terms.end()) continue;
                auto cit = it->second.coeffs().find(beta);
                if (cit != it->second.coeffs().end())
                    b[model.face_rows.size() + r] = cit->second;
            }
            auto x = solve_with(snf, b);
            if (!x) {
                ok = false;
                break;
            }
            per_basis[beta] = std::move(*x);
        }
        if (!ok) continue;
        if (per_basis.empty()) return PolyFamily<AlgElem>::zero(ctx);
        PolyFamily<AlgElem> f = model.assemble(per_basis, spec);
        if (!(pullback_family(f, sub.inclusion, PairContext(full_pair(sub.set), 0)) == g))
            throw error("extension failed its own restriction check");
        return f;
    }
    return std::nullopt;
}

/// Integer basis of the degree <= deg families vanishing on the subcomplex.
inline std::vector<PolyFamily<AlgElem>> relative_kernel_basis(
    const PairContext& ctx, int deg, const std::shared_ptr<const AlgebraSpec>& spec) {
    detail::FamilyModel model(ctx, deg);
    IntMat A = model.face_rows;
    auto dom = ctx.domain();
    for (int d = 0; d <= dom->dim(); ++d)
        for (int k = 0; k < dom->size(d); ++k) {
            if (!ctx.in_sub(d, k)) continue;
            for (const auto& m : model.monos[static_cast<size_t>(d)][static_cast<size_t>(k)]) {
                IntVec row(model.ncols, 0);
                row[model.col(d, k, m)] = 1;
                A.push_back(std::move(row));
            }
        }
    if (A.empty()) A.push_back(IntVec(model.ncols, 0));
    std::vector<PolyFamily<AlgElem>> out;
    for (auto& v : integer_nullspace(A)) {
        std::map<long, IntVec> per;
        per[0] = v;
        out.push_back(model.assemble(per, spec));
    }
    return out;
}

}  // namespace shl

#endif
