#include "shl/simplicial_set.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace shl {

// --- monotone-map helpers ---

bool is_monotone(const std::vector<int>& w) {
    for (size_t i = 1; i < w.size(); ++i)
        if (w[i] < w[i - 1]) return false;
    return true;
}

bool is_surjection_onto(const std::vector<int>& w, int n) {
    if (w.empty()) return false;
    if (w.front() != 0 || w.back() != n) return false;
    for (size_t i = 1; i < w.size(); ++i)
        if (w[i] - w[i - 1] > 1 || w[i] < w[i - 1]) return false;
    return true;
}

std::vector<int> identity_word(int n) {
    std::vector<int> w(static_cast<size_t>(n) + 1);
    std::iota(w.begin(), w.end(), 0);
    return w;
}

std::vector<int> compose_words(const std::vector<int>& outer, const std::vector<int>& inner) {
    std::vector<int> r(inner.size());
    for (size_t i = 0; i < inner.size(); ++i) r[i] = outer[static_cast<size_t>(inner[i])];
    return r;
}

void factor_monotone(const std::vector<int>& w, std::vector<int>& incl, std::vector<int>& surj) {
    incl.clear();
    surj.resize(w.size());
    for (size_t i = 0; i < w.size(); ++i) {
        if (incl.empty() || incl.back() != w[i]) incl.push_back(w[i]);
        surj[i] = static_cast<int>(incl.size()) - 1;
    }
}

std::string word_suffix(const std::vector<int>& w, int base_dim) {
    if (static_cast<int>(w.size()) == base_dim + 1) return {};
    std::string s = "~";
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(w[i]);
    }
    return s;
}

// --- SimplicialSet ---

int SimplicialSet::total_cells() const {
    int n = 0;
    for (const auto& lv : labels_) n += static_cast<int>(lv.size());
    return n;
}

std::optional<CellId> SimplicialSet::find(const std::string& lbl) const {
    auto it = by_label_.find(lbl);
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
}

const std::vector<SimplexRef>& SimplicialSet::tuple(int d, int k) const {
    if (!is_product()) throw error("tuple() requires a product simplicial set");
    return tuples_[d][k];
}

CellId SimplicialSet::iterated_face(CellId x, const std::vector<int>& incl) const {
    // apply face operators for the missed indices, largest first
    for (int j = x.dim; j >= 0; --j) {
        if (std::find(incl.begin(), incl.end(), j) != incl.end()) continue;
        x = CellId{x.dim - 1, face(x.dim, x.idx, j)};
    }
    return x;
}

SimplexRef SimplicialSet::apply_word(CellId x, const std::vector<int>& w) const {
    if (!is_monotone(w) || w.empty() || w.back() > x.dim || w.front() < 0)
        throw error("apply_word: not a monotone map into the cell");
    std::vector<int> incl, surj;
    factor_monotone(w, incl, surj);
    CellId b = iterated_face(x, incl);
    return SimplexRef{b.dim, b.idx, std::move(surj)};
}

SimplexRef SimplicialSet::face_ref(const SimplexRef& r, int i) const {
    std::vector<int> w = r.word;
    w.erase(w.begin() + i);
    return apply_word(CellId{r.dim, r.idx}, w);
}

SimplexRef SimplicialSet::degeneracy_ref(const SimplexRef& r, int i) const {
    std::vector<int> w = r.word;
    w.insert(w.begin() + i + 1, w[static_cast<size_t>(i)]);
    return SimplexRef{r.dim, r.idx, std::move(w)};
}

void SimplicialSet::index_labels() {
    by_label_.clear();
    for (int d = 0; d <= dim(); ++d)
        for (int k = 0; k < size(d); ++k) {
            auto [it, fresh] = by_label_.emplace(labels_[d][k], CellId{d, k});
            if (!fresh) throw error("duplicate cell label: " + labels_[d][k]);
        }
}

void SimplicialSet::validate() const {
    if (labels_.size() != faces_.size()) throw error("cell/face table size mismatch");
    for (int d = 0; d <= dim(); ++d) {
        if (labels_[d].size() != faces_[d].size()) throw error("face table shape mismatch");
        for (int k = 0; k < size(d); ++k) {
            const auto& f = faces_[d][k];
            if (static_cast<int>(f.size()) != (d == 0 ? 0 : d + 1))
                throw error("face count mismatch at " + label(d, k));
            for (int v : f)
                if (v < 0 || v >= size(d - 1)) throw error("face index out of range at " + label(d, k));
        }
    }
    // d_i d_j = d_{j-1} d_i for i < j
    for (int d = 2; d <= dim(); ++d)
        for (int k = 0; k < size(d); ++k)
            for (int j = 1; j <= d; ++j)
                for (int i = 0; i < j; ++i)
                    if (face(d - 1, face(d, k, j), i) != face(d - 1, face(d, k, i), j - 1))
                        throw error("simplicial identity fails at " + label(d, k));
    if (is_product()) {
        if (tuples_.size() != labels_.size()) throw error("product tuple table shape mismatch");
        for (int d = 0; d <= dim(); ++d)
            if (tuples_[d].size() != labels_[d].size())
                throw error("product tuple table shape mismatch");
    }
}

bool operator==(const SimplicialSet& a, const SimplicialSet& b) {
    return a.labels_ == b.labels_ && a.faces_ == b.faces_;
}

SimplicialSet SimplicialSet::make(std::vector<std::vector<std::string>> labels,
                                  std::vector<std::vector<std::vector<int>>> faces) {
    SimplicialSet s;
    s.labels_ = std::move(labels);
    s.faces_ = std::move(faces);
    s.index_labels();
    s.validate();
    return s;
}

SimplicialSet SimplicialSet::make_product(std::vector<SimplicialSet> factors,
                                          std::vector<std::vector<std::string>> labels,
                                          std::vector<std::vector<std::vector<int>>> faces,
                                          std::vector<std::vector<std::vector<SimplexRef>>> tuples) {
    SimplicialSet s;
    s.factors_ = std::move(factors);
    s.labels_ = std::move(labels);
    s.faces_ = std::move(faces);
    s.tuples_ = std::move(tuples);
    s.index_labels();
    s.validate();
    return s;
}

// --- SimplicialMap ---

SimplicialMap::SimplicialMap(std::shared_ptr<const SimplicialSet> src,
                             std::shared_ptr<const SimplicialSet> dst,
                             std::vector<std::vector<SimplexRef>> img)
    : src_(std::move(src)), dst_(std::move(dst)), img_(std::move(img)) {}

SimplexRef SimplicialMap::apply(const SimplexRef& r) const {
    const SimplexRef& b = img_[r.dim][r.idx];
    return SimplexRef{b.dim, b.idx, compose_words(b.word, r.word)};
}

void SimplicialMap::validate() const {
    if (static_cast<int>(img_.size()) != src_->dim() + 1 && !(src_->dim() < 0 && img_.empty()))
        throw error("map image table shape mismatch");
    for (int d = 0; d <= src_->dim(); ++d) {
        if (static_cast<int>(img_[d].size()) != src_->size(d)) throw error("map image table shape mismatch");
        for (int k = 0; k < src_->size(d); ++k) {
            const SimplexRef& r = img_[d][k];
            if (r.top_dim() != d) throw error("map image dimension mismatch at " + src_->label(d, k));
            if (!is_surjection_onto(r.word, r.dim)) throw error("map image word invalid at " + src_->label(d, k));
            if (r.dim < 0 || r.dim > dst_->dim() || r.idx < 0 || r.idx >= dst_->size(r.dim))
                throw error("map image out of range at " + src_->label(d, k));
            for (int i = 0; i <= d && d >= 1; ++i) {
                SimplexRef lhs = apply(SimplexRef{d - 1, src_->face(d, k, i), identity_word(d - 1)});
                SimplexRef rhs = dst_->face_ref(r, i);
                if (lhs != rhs) throw error("map does not commute with faces at " + src_->label(d, k));
            }
        }
    }
}

bool operator==(const SimplicialMap& a, const SimplicialMap& b) {
    return *a.src_ == *b.src_ && *a.dst_ == *b.dst_ && a.img_ == b.img_;
}

// --- pairs ---

void SimplicialPair::validate() const {
    if (static_cast<int>(inL.size()) != K->dim() + 1 && !(K->dim() < 0 && inL.empty()))
        throw error("pair flag table shape mismatch");
    for (int d = 0; d <= K->dim(); ++d) {
        if (static_cast<int>(inL[d].size()) != K->size(d)) throw error("pair flag table shape mismatch");
        for (int k = 0; k < K->size(d); ++k)
            if (inL[d][k] && d >= 1)
                for (int i = 0; i <= d; ++i)
                    if (!inL[d - 1][K->face(d, k, i)])
                        throw error("subcomplex not closed under faces at " + K->label(d, k));
    }
}

bool operator==(const SimplicialPair& a, const SimplicialPair& b) {
    return *a.K == *b.K && a.inL == b.inL;
}

SimplicialPair make_pair(std::shared_ptr<const SimplicialSet> K,
                         const std::vector<std::string>& sub_labels) {
    SimplicialPair p;
    p.K = std::move(K);
    p.inL.assign(static_cast<size_t>(p.K->dim()) + 1, {});
    for (int d = 0; d <= p.K->dim(); ++d) p.inL[d].assign(static_cast<size_t>(p.K->size(d)), 0);
    for (const auto& lbl : sub_labels) {
        auto c = p.K->find(lbl);
        if (!c) throw error("subcomplex label not found: " + lbl);
        p.inL[c->dim][c->idx] = 1;
    }
    p.validate();
    return p;
}

SimplicialPair full_pair(std::shared_ptr<const SimplicialSet> K) {
    return make_pair(std::move(K), {});
}

// --- standard simplices ---

namespace {

void subsets_rec(int n, int want, int from, std::vector<int>& cur,
                 std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == want) {
        out.push_back(cur);
        return;
    }
    for (int v = from; v <= n; ++v) {
        cur.push_back(v);
        subsets_rec(n, want, v + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> subsets_of_size(int n, int sz) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    subsets_rec(n, sz, 0, cur, out);
    return out;
}

std::string subset_label(const std::vector<int>& s) {
    std::string l;
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) l += '.';
        l += std::to_string(s[i]);
    }
    return l;
}

}  // namespace

SimplicialSet std_simplex(int n) {
    if (n < 0) throw error("std_simplex: negative dimension");
    std::vector<std::vector<std::string>> labels(static_cast<size_t>(n) + 1);
    std::vector<std::vector<std::vector<int>>> faces(static_cast<size_t>(n) + 1);
    std::vector<std::map<std::vector<int>, int>> index(static_cast<size_t>(n) + 1);
    for (int d = 0; d <= n; ++d) {
        auto subs = subsets_of_size(n, d + 1);
        for (int k = 0; k < static_cast<int>(subs.size()); ++k) {
            labels[d].push_back(subset_label(subs[k]));
            index[d][subs[k]] = k;
            std::vector<int> fs;
            if (d >= 1)
                for (int i = 0; i <= d; ++i) {
                    std::vector<int> f = subs[k];
                    f.erase(f.begin() + i);
                    fs.push_back(index[d - 1][f]);
                }
            faces[d].push_back(std::move(fs));
        }
    }
    return SimplicialSet::make(std::move(labels), std::move(faces));
}

// --- products ---

bool is_point(const SimplicialSet& s) { return s.dim() == 0 && s.size(0) == 1; }

namespace {

std::string component_label(const SimplicialSet& f, const SimplexRef& r) {
    return f.label(r.dim, r.idx) + word_suffix(r.word, r.dim);
}

std::string tuple_label(const std::vector<SimplicialSet>& fs, const std::vector<SimplexRef>& refs) {
    std::string l;
    for (size_t j = 0; j < refs.size(); ++j) {
        if (j) l += '|';
        l += component_label(fs[j], refs[j]);
    }
    return l;
}

// Enumerate jointly injective word tuples for fixed base dims, depth-first
// over nonempty advance sets; calls out(words) for every complete tuple.
void chains_rec(const std::vector<int>& dims, std::vector<std::vector<int>>& words,
                const std::function<void(const std::vector<std::vector<int>>&)>& out) {
    bool done = true;
    for (size_t j = 0; j < dims.size(); ++j)
        if (words[j].back() != dims[j]) done = false;
    if (done) out(words);
    int n = static_cast<int>(dims.size());
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        bool ok = true;
        for (int j = 0; j < n && ok; ++j)
            if (mask & (1u << j))
                if (words[j].back() + 1 > dims[j]) ok = false;
        if (!ok) continue;
        for (int j = 0; j < n; ++j)
            words[j].push_back(words[j].back() + ((mask >> j) & 1u));
        chains_rec(dims, words, out);
        for (int j = 0; j < n; ++j) words[j].pop_back();
    }
}

}  // namespace

SimplicialSet simplex_product(std::vector<SimplicialSet> factors) {
    std::vector<SimplicialSet> flat;
    for (auto& f : factors) {
        if (is_point(f)) continue;
        if (f.is_product())
            for (int j = 0; j < f.arity(); ++j) flat.push_back(f.factor(j));
        else
            flat.push_back(std::move(f));
    }
    if (flat.empty()) return std_simplex(0);
    if (flat.size() == 1) return std::move(flat[0]);
    for (const auto& f : flat)
        if (f.dim() < 0) throw error("simplex_product: empty factor");

    int n = static_cast<int>(flat.size());
    // gather cells per dim: (tuple, label); order: base combos lex, then DFS
    std::vector<std::vector<std::vector<SimplexRef>>> tuples;
    std::vector<std::vector<std::string>> labels;
    auto ensure_dim = [&](int m) {
        if (static_cast<int>(tuples.size()) <= m) {
            tuples.resize(static_cast<size_t>(m) + 1);
            labels.resize(static_cast<size_t>(m) + 1);
        }
    };
    // odometer over base cells of each factor, ordered by (dim, idx)
    std::vector<std::vector<CellId>> cells_of(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j)
        for (int d = 0; d <= flat[j].dim(); ++d)
            for (int k = 0; k < flat[j].size(d); ++k) cells_of[j].push_back(CellId{d, k});
    std::vector<size_t> pos(static_cast<size_t>(n), 0);
    bool running = true;
    while (running) {
        std::vector<int> dims(static_cast<size_t>(n));
        std::vector<CellId> bases(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            bases[j] = cells_of[j][pos[j]];
            dims[j] = bases[j].dim;
        }
        std::vector<std::vector<int>> words(static_cast<size_t>(n), std::vector<int>{0});
        chains_rec(dims, words, [&](const std::vector<std::vector<int>>& ws) {
            int m = static_cast<int>(ws[0].size()) - 1;
            ensure_dim(m);
            std::vector<SimplexRef> tup(static_cast<size_t>(n));
            for (int j = 0; j < n; ++j) tup[j] = SimplexRef{dims[j], bases[j].idx, ws[j]};
            labels[m].push_back(tuple_label(flat, tup));
            tuples[m].push_back(std::move(tup));
        });
        int j = n - 1;
        while (j >= 0 && ++pos[j] == cells_of[j].size()) pos[j--] = 0;
        running = j >= 0;
    }

    std::vector<std::vector<std::vector<int>>> faces(tuples.size());
    std::vector<std::map<std::string, int>> index(tuples.size());
    for (size_t m = 0; m < tuples.size(); ++m)
        for (int k = 0; k < static_cast<int>(tuples[m].size()); ++k) index[m][labels[m][k]] = k;
    for (int m = 0; m < static_cast<int>(tuples.size()); ++m) {
        faces[m].resize(tuples[m].size());
        if (m == 0) continue;
        for (int k = 0; k < static_cast<int>(tuples[m].size()); ++k) {
            for (int i = 0; i <= m; ++i) {
                std::vector<SimplexRef> frefs(static_cast<size_t>(n));
                for (int j = 0; j < n; ++j) frefs[j] = flat[j].face_ref(tuples[m][k][j], i);
                auto it = index[m - 1].find(tuple_label(flat, frefs));
                if (it == index[m - 1].end()) throw error("product face lookup failed");
                faces[m][k].push_back(it->second);
            }
        }
    }
    return SimplicialSet::make_product(std::move(flat), std::move(labels), std::move(faces),
                                       std::move(tuples));
}

SimplicialSet cube(int n) {
    std::vector<SimplicialSet> fs;
    for (int j = 0; j < n; ++j) fs.push_back(std_simplex(1));
    return simplex_product(std::move(fs));
}

namespace {

std::vector<SimplexRef> cell_as_tuple(const SimplicialSet& X, int d, int k) {
    if (X.is_product()) return X.tuple(d, k);
    return {SimplexRef{d, k, identity_word(d)}};
}

}  // namespace

SimplicialPair cube_pair(int n) {
    auto K = share(cube(n));
    SimplicialPair p;
    p.K = K;
    p.inL.resize(static_cast<size_t>(K->dim()) + 1);
    for (int d = 0; d <= K->dim(); ++d) {
        p.inL[d].assign(static_cast<size_t>(K->size(d)), 0);
        if (n == 0) continue;
        for (int k = 0; k < K->size(d); ++k) {
            auto tup = cell_as_tuple(*K, d, k);
            for (const auto& r : tup)
                if (r.dim == 0) {
                    p.inL[d][k] = 1;
                    break;
                }
        }
    }
    p.validate();
    return p;
}

SimplicialPair cube_simplex_pair(int n, int q) {
    if (q == 0) return cube_pair(n);
    std::vector<SimplicialSet> fs;
    for (int j = 0; j < n; ++j) fs.push_back(std_simplex(1));
    fs.push_back(std_simplex(q));
    auto K = share(simplex_product(std::move(fs)));
    SimplicialPair p;
    p.K = K;
    p.inL.resize(static_cast<size_t>(K->dim()) + 1);
    for (int d = 0; d <= K->dim(); ++d) {
        p.inL[d].assign(static_cast<size_t>(K->size(d)), 0);
        if (n == 0) continue;
        for (int k = 0; k < K->size(d); ++k) {
            auto tup = cell_as_tuple(*K, d, k);
            for (int j = 0; j < n; ++j)
                if (tup[static_cast<size_t>(j)].dim == 0) {
                    p.inL[d][k] = 1;
                    break;
                }
        }
    }
    p.validate();
    return p;
}

SimplexRef ref_from_tuple(const SimplicialSet& P, const std::vector<SimplexRef>& refs) {
    if (refs.empty()) {
        if (!is_point(P)) throw error("ref_from_tuple: empty tuple into non-point");
        return SimplexRef{0, 0, {0}};
    }
    if (!P.is_product()) {
        if (refs.size() != 1) throw error("ref_from_tuple: arity mismatch");
        return refs[0];
    }
    if (static_cast<int>(refs.size()) != P.arity()) throw error("ref_from_tuple: arity mismatch");
    int m = refs[0].top_dim();
    for (const auto& r : refs)
        if (r.top_dim() != m) throw error("ref_from_tuple: mixed dimensions");
    // collapse steps where every component repeats
    std::vector<int> surj{0};
    for (int i = 0; i < m; ++i) {
        bool all_repeat = true;
        for (const auto& r : refs)
            if (r.word[static_cast<size_t>(i) + 1] != r.word[static_cast<size_t>(i)]) all_repeat = false;
        surj.push_back(surj.back() + (all_repeat ? 0 : 1));
    }
    int m2 = surj.back();
    std::vector<SimplexRef> collapsed(refs.size());
    for (size_t j = 0; j < refs.size(); ++j) {
        std::vector<int> w(static_cast<size_t>(m2) + 1);
        for (int i = 0; i <= m; ++i) w[static_cast<size_t>(surj[static_cast<size_t>(i)])] = refs[j].word[static_cast<size_t>(i)];
        collapsed[j] = SimplexRef{refs[j].dim, refs[j].idx, std::move(w)};
    }
    std::vector<SimplicialSet> fs;
    for (int j = 0; j < P.arity(); ++j) fs.push_back(P.factor(j));
    auto cell = P.find(tuple_label(fs, collapsed));
    if (!cell) throw error("ref_from_tuple: tuple is not a cell of the product");
    return SimplexRef{cell->dim, cell->idx, std::move(surj)};
}

SimplicialMap product_projection(std::shared_ptr<const SimplicialSet> P, int lo, int hi) {
    std::vector<SimplicialSet> sub;
    int n = P->is_product() ? P->arity() : 1;
    if (lo < 0 || hi > n || lo > hi) throw error("product_projection: bad range");
    for (int j = lo; j < hi; ++j) sub.push_back(P->is_product() ? P->factor(j) : *P);
    auto T = share(simplex_product(sub));
    std::vector<std::vector<SimplexRef>> img(static_cast<size_t>(P->dim()) + 1);
    for (int d = 0; d <= P->dim(); ++d)
        for (int k = 0; k < P->size(d); ++k) {
            auto tup = cell_as_tuple(*P, d, k);
            std::vector<SimplexRef> sel(tup.begin() + lo, tup.begin() + hi);
            if (sel.empty())
                img[d].push_back(SimplexRef{0, 0, std::vector<int>(static_cast<size_t>(d) + 1, 0)});
            else
                img[d].push_back(ref_from_tuple(*T, sel));
        }
    return SimplicialMap(P, T, std::move(img));
}

SimplicialMap product_map(const std::vector<SimplicialMap>& fs,
                          std::shared_ptr<const SimplicialSet> P,
                          std::shared_ptr<const SimplicialSet> Q) {
    int n = P->is_product() ? P->arity() : 1;
    if (static_cast<int>(fs.size()) != n) throw error("product_map: arity mismatch");
    for (int j = 0; j < n; ++j)
        if (!(fs[j].source() == (P->is_product() ? P->factor(j) : *P)))
            throw error("product_map: source factor mismatch");
    std::vector<std::vector<SimplexRef>> img(static_cast<size_t>(P->dim()) + 1);
    for (int d = 0; d <= P->dim(); ++d)
        for (int k = 0; k < P->size(d); ++k) {
            auto tup = cell_as_tuple(*P, d, k);
            std::vector<SimplexRef> imgs(static_cast<size_t>(n));
            for (int j = 0; j < n; ++j) imgs[j] = fs[j].apply(tup[j]);
            img[d].push_back(ref_from_tuple(*Q, imgs));
        }
    return SimplicialMap(P, Q, std::move(img));
}

SimplicialMap permute_product(std::shared_ptr<const SimplicialSet> P, const std::vector<int>& perm) {
    int n = P->arity();
    if (static_cast<int>(perm.size()) != n) throw error("permute_product: bad permutation");
    std::vector<SimplicialSet> fs;
    for (int j = 0; j < n; ++j) fs.push_back(P->factor(perm[j]));
    auto Q = share(simplex_product(fs));
    std::vector<std::vector<SimplexRef>> img(static_cast<size_t>(P->dim()) + 1);
    for (int d = 0; d <= P->dim(); ++d)
        for (int k = 0; k < P->size(d); ++k) {
            auto tup = P->tuple(d, k);
            std::vector<SimplexRef> q(static_cast<size_t>(n));
            for (int j = 0; j < n; ++j) q[j] = tup[static_cast<size_t>(perm[j])];
            img[d].push_back(ref_from_tuple(*Q, q));
        }
    return SimplicialMap(P, Q, std::move(img));
}

SimplicialMap insert_vertex_slice(std::shared_ptr<const SimplicialSet> Q, int pos, int vertex_idx) {
    if (!Q->is_product()) throw error("insert_vertex_slice: target must be a product");
    int n = Q->arity();
    std::vector<SimplicialSet> rest;
    for (int j = 0; j < n; ++j)
        if (j != pos) rest.push_back(Q->factor(j));
    auto P = share(simplex_product(rest));
    std::vector<std::vector<SimplexRef>> img(static_cast<size_t>(P->dim()) + 1);
    for (int d = 0; d <= P->dim(); ++d)
        for (int k = 0; k < P->size(d); ++k) {
            auto tup = cell_as_tuple(*P, d, k);
            std::vector<SimplexRef> full;
            full.reserve(static_cast<size_t>(n));
            int t = 0;
            for (int j = 0; j < n; ++j) {
                if (j == pos)
                    full.push_back(SimplexRef{0, vertex_idx, std::vector<int>(static_cast<size_t>(d) + 1, 0)});
                else
                    full.push_back(tup[static_cast<size_t>(t++)]);
            }
            img[d].push_back(ref_from_tuple(*Q, full));
        }
    return SimplicialMap(P, Q, std::move(img));
}

SimplicialPair pair_algebra(const SimplicialPair& a, const SimplicialPair& b) {
    auto Q = share(simplex_product({*a.K, *b.K}));
    int ca = is_point(*a.K) ? 0 : a.K->arity();
    int cb = is_point(*b.K) ? 0 : b.K->arity();
    int n = Q->is_product() ? Q->arity() : (is_point(*Q) ? 0 : 1);
    if (ca + cb != n) throw error("pair_algebra: arity bookkeeping failed");

    bool a_pt_in_L = is_point(*a.K) && !a.inL.empty() && a.inL[0][0];
    bool b_pt_in_L = is_point(*b.K) && !b.inL.empty() && b.inL[0][0];

    auto side_in = [&](const SimplicialPair& side, int lo, int hi, bool pt_in,
                       const std::vector<SimplexRef>& tup) -> bool {
        if (hi == lo) return pt_in;
        std::vector<SimplexRef> sel(tup.begin() + lo, tup.begin() + hi);
        SimplexRef r = ref_from_tuple(*side.K, sel);
        return side.in_sub(r.dim, r.idx);
    };

    SimplicialPair p;
    p.K = Q;
    p.inL.resize(static_cast<size_t>(Q->dim()) + 1);
    for (int d = 0; d <= Q->dim(); ++d) {
        p.inL[d].assign(static_cast<size_t>(Q->size(d)), 0);
        for (int k = 0; k < Q->size(d); ++k) {
            auto tup = cell_as_tuple(*Q, d, k);
            bool inKL = side_in(b, ca, ca + cb, b_pt_in_L, tup);
            bool inLK = side_in(a, 0, ca, a_pt_in_L, tup);
            p.inL[d][k] = (inKL || inLK) ? 1 : 0;
        }
    }
    p.validate();
    return p;
}

// --- subdivision ---

namespace {

// unique monotone embeddings of the iterated faces of every cell
using EmbMap = std::map<CellId, std::map<CellId, std::vector<int>>>;

EmbMap face_embeddings(const SimplicialSet& X) {
    EmbMap emb;
    for (int d = 0; d <= X.dim(); ++d)
        for (int k = 0; k < X.size(d); ++k) {
            CellId top{d, k};
            auto& m = emb[top];
            std::vector<std::pair<CellId, std::vector<int>>> queue{{top, identity_word(d)}};
            m[top] = identity_word(d);
            while (!queue.empty()) {
                auto [c, incl] = queue.back();
                queue.pop_back();
                if (c.dim == 0) continue;
                for (int i = 0; i <= c.dim; ++i) {
                    CellId f{c.dim - 1, X.face(c.dim, c.idx, i)};
                    std::vector<int> fincl = incl;
                    fincl.erase(fincl.begin() + i);
                    auto it = m.find(f);
                    if (it == m.end()) {
                        m[f] = fincl;
                        queue.emplace_back(f, std::move(fincl));
                    } else if (it->second != fincl) {
                        throw error("ambiguous face embedding below " + X.label(d, k) +
                                    "; subdivision as a flag nerve is undefined here");
                    }
                }
            }
        }
    return emb;
}

std::string flag_label(const SimplicialSet& X, const std::vector<CellId>& chain) {
    std::string l = "{";
    for (size_t i = 0; i < chain.size(); ++i) {
        if (i) l += '<';
        l += X.label(chain[i].dim, chain[i].idx);
    }
    return l + "}";
}

}  // namespace

Subdivision subdivide(std::shared_ptr<const SimplicialSet> X) {
    EmbMap emb = face_embeddings(*X);
    std::vector<CellId> order;
    for (int d = 0; d <= X->dim(); ++d)
        for (int k = 0; k < X->size(d); ++k) order.push_back(CellId{d, k});
    // strict upper sets in canonical order
    std::map<CellId, std::vector<CellId>> ups;
    for (CellId y : order)
        for (const auto& [x, incl] : emb[y])
            if (!(x == y)) ups[x].push_back(y);
    for (auto& [x, v] : ups) std::sort(v.begin(), v.end());

    std::vector<std::vector<std::vector<CellId>>> flags;
    std::function<void(std::vector<CellId>&)> extend = [&](std::vector<CellId>& chain) {
        int d = static_cast<int>(chain.size()) - 1;
        if (static_cast<int>(flags.size()) <= d) flags.resize(static_cast<size_t>(d) + 1);
        flags[d].push_back(chain);
        for (CellId y : ups[chain.back()]) {
            chain.push_back(y);
            extend(chain);
            chain.pop_back();
        }
    };
    for (CellId c : order) {
        std::vector<CellId> chain{c};
        extend(chain);
    }

    std::vector<std::vector<std::string>> labels(flags.size());
    std::vector<std::map<std::vector<CellId>, int>> index(flags.size());
    for (size_t d = 0; d < flags.size(); ++d)
        for (int k = 0; k < static_cast<int>(flags[d].size()); ++k) {
            labels[d].push_back(flag_label(*X, flags[d][k]));
            index[d][flags[d][k]] = k;
        }
    std::vector<std::vector<std::vector<int>>> faces(flags.size());
    for (size_t d = 0; d < flags.size(); ++d) {
        faces[d].resize(flags[d].size());
        if (d == 0) continue;
        for (int k = 0; k < static_cast<int>(flags[d].size()); ++k)
            for (size_t i = 0; i < flags[d][k].size(); ++i) {
                std::vector<CellId> sub = flags[d][k];
                sub.erase(sub.begin() + static_cast<long>(i));
                faces[d][k].push_back(index[d - 1][sub]);
            }
    }
    Subdivision s;
    s.set = share(SimplicialSet::make(std::move(labels), std::move(faces)));
    s.flags = std::move(flags);
    s.base = std::move(X);
    return s;
}

SimplicialMap last_vertex_map(const Subdivision& sd) {
    const SimplicialSet& X = *sd.base;
    EmbMap emb = face_embeddings(X);
    std::vector<std::vector<SimplexRef>> img(sd.flags.size());
    for (size_t d = 0; d < sd.flags.size(); ++d)
        for (const auto& chain : sd.flags[d]) {
            CellId top = chain.back();
            std::vector<int> w;
            w.reserve(chain.size());
            for (CellId c : chain) w.push_back(emb[top][c].back());
            img[d].push_back(X.apply_word(top, w));
        }
    return SimplicialMap(sd.set, sd.base, std::move(img));
}

SimplicialMap sd_map(const SimplicialMap& f, const Subdivision& sd_src, const Subdivision& sd_dst) {
    if (!(*sd_src.base == f.source()) || !(*sd_dst.base == f.target()))
        throw error("sd_map: subdivision/base mismatch");
    std::vector<std::vector<SimplexRef>> img(sd_src.flags.size());
    for (size_t d = 0; d < sd_src.flags.size(); ++d)
        for (const auto& chain : sd_src.flags[d]) {
            std::vector<CellId> bases;
            std::vector<int> w;
            for (CellId c : chain) {
                const SimplexRef& r = f.image(c.dim, c.idx);
                CellId b{r.dim, r.idx};
                if (bases.empty() || !(bases.back() == b)) bases.push_back(b);
                w.push_back(static_cast<int>(bases.size()) - 1);
            }
            auto cell = sd_dst.set->find(flag_label(f.target(), bases));
            if (!cell) throw error("sd_map: image flag not found");
            img[d].push_back(SimplexRef{cell->dim, cell->idx, std::move(w)});
        }
    return SimplicialMap(sd_src.set, sd_dst.set, std::move(img));
}

// --- map constructors ---

SimplicialMap identity_map(std::shared_ptr<const SimplicialSet> X) {
    std::vector<std::vector<SimplexRef>> img(static_cast<size_t>(X->dim()) + 1);
    for (int d = 0; d <= X->dim(); ++d)
        for (int k = 0; k < X->size(d); ++k) img[d].push_back(SimplexRef{d, k, identity_word(d)});
    return SimplicialMap(X, X, std::move(img));
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
    if (!(f.target() == g.source())) throw error("compose: middle object mismatch");
    std::vector<std::vector<SimplexRef>> img(static_cast<size_t>(f.source().dim()) + 1);
    for (int d = 0; d <= f.source().dim(); ++d)
        for (int k = 0; k < f.source().size(d); ++k) img[d].push_back(g.apply(f.image(d, k)));
    return SimplicialMap(f.source_ptr(), g.target_ptr(), std::move(img));
}

SimplicialMap simplex_hom(int p, int q, const std::vector<int>& vertex_map) {
    if (static_cast<int>(vertex_map.size()) != p + 1 || !is_monotone(vertex_map) ||
        vertex_map.front() < 0 || vertex_map.back() > q)
        throw error("simplex_hom: bad vertex map");
    auto S = share(std_simplex(p));
    auto T = share(std_simplex(q));
    std::vector<std::vector<SimplexRef>> img(static_cast<size_t>(p) + 1);
    for (int d = 0; d <= p; ++d) {
        auto subs = subsets_of_size(p, d + 1);
        for (const auto& s : subs) {
            std::vector<int> vals;
            vals.reserve(s.size());
            for (int v : s) vals.push_back(vertex_map[static_cast<size_t>(v)]);
            std::vector<int> incl, surj;
            factor_monotone(vals, incl, surj);
            auto cell = T->find(subset_label(incl));
            img[d].push_back(SimplexRef{static_cast<int>(incl.size()) - 1, cell->idx, std::move(surj)});
        }
    }
    return SimplicialMap(S, T, std::move(img));
}

SimplicialMap coface_map(int n, int i) {
    std::vector<int> vm;
    for (int v = 0; v < n; ++v) vm.push_back(v < i ? v : v + 1);
    return simplex_hom(n - 1, n, vm);
}

SimplicialMap codegeneracy_map(int n, int i) {
    std::vector<int> vm;
    for (int v = 0; v <= n + 1; ++v) vm.push_back(v <= i ? v : v - 1);
    return simplex_hom(n + 1, n, vm);
}

SimplicialMap constant_map(std::shared_ptr<const SimplicialSet> X,
                           std::shared_ptr<const SimplicialSet> Y, int vertex_idx) {
    std::vector<std::vector<SimplexRef>> img(static_cast<size_t>(X->dim()) + 1);
    for (int d = 0; d <= X->dim(); ++d)
        for (int k = 0; k < X->size(d); ++k)
            img[d].push_back(SimplexRef{0, vertex_idx, std::vector<int>(static_cast<size_t>(d) + 1, 0)});
    return SimplicialMap(std::move(X), std::move(Y), std::move(img));
}

SubcomplexSet subcomplex_set(const SimplicialPair& pair) {
    const SimplicialSet& K = *pair.K;
    std::vector<std::vector<std::string>> labels;
    std::vector<std::vector<std::vector<int>>> faces;
    std::vector<std::vector<int>> to_ambient;
    std::vector<std::vector<int>> new_idx(static_cast<size_t>(K.dim()) + 1);
    for (int d = 0; d <= K.dim(); ++d) {
        new_idx[d].assign(static_cast<size_t>(K.size(d)), -1);
        std::vector<std::string> lv;
        std::vector<std::vector<int>> fv;
        std::vector<int> amb;
        for (int k = 0; k < K.size(d); ++k) {
            if (!pair.in_sub(d, k)) continue;
            new_idx[d][k] = static_cast<int>(lv.size());
            lv.push_back(K.label(d, k));
            amb.push_back(k);
            std::vector<int> fs;
            if (d >= 1)
                for (int i = 0; i <= d; ++i) fs.push_back(new_idx[d - 1][K.face(d, k, i)]);
            fv.push_back(std::move(fs));
        }
        labels.push_back(std::move(lv));
        faces.push_back(std::move(fv));
        to_ambient.push_back(std::move(amb));
    }
    while (!labels.empty() && labels.back().empty()) {
        labels.pop_back();
        faces.pop_back();
        to_ambient.pop_back();
    }
    SubcomplexSet out;
    out.set = share(SimplicialSet::make(std::move(labels), std::move(faces)));
    out.to_ambient = std::move(to_ambient);
    std::vector<std::vector<SimplexRef>> img(static_cast<size_t>(out.set->dim()) + 1);
    for (int d = 0; d <= out.set->dim(); ++d)
        for (int k = 0; k < out.set->size(d); ++k)
            img[d].push_back(SimplexRef{d, out.to_ambient[d][k], identity_word(d)});
    out.inclusion = SimplicialMap(out.set, pair.K, std::move(img));
    return out;
}

SimplicialMap sd_interval_flip(const Subdivision& sd_interval) {
    const SimplicialSet& S = *sd_interval.set;
    if (!(*sd_interval.base == std_simplex(1))) throw error("sd_interval_flip: base must be the interval");
    auto v0 = S.find("{0}"), v1 = S.find("{1}"), vb = S.find("{0.1}");
    auto e0 = S.find("{0<0.1}"), e1 = S.find("{1<0.1}");
    if (!v0 || !v1 || !vb || !e0 || !e1) throw error("sd_interval_flip: unexpected labels");
    std::vector<std::vector<SimplexRef>> img(2);
    img[0].resize(3);
    img[0][static_cast<size_t>(v0->idx)] = SimplexRef{0, v1->idx, {0}};
    img[0][static_cast<size_t>(v1->idx)] = SimplexRef{0, v0->idx, {0}};
    img[0][static_cast<size_t>(vb->idx)] = SimplexRef{0, vb->idx, {0}};
    img[1].resize(2);
    img[1][static_cast<size_t>(e0->idx)] = SimplexRef{1, e1->idx, {0, 1}};
    img[1][static_cast<size_t>(e1->idx)] = SimplexRef{1, e0->idx, {0, 1}};
    return SimplicialMap(sd_interval.set, sd_interval.set, std::move(img));
}

}  // namespace shl
