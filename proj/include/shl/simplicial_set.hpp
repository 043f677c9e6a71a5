// Finite nonsingular simplicial sets: face tables over labeled nondegenerate
// cells, Eilenberg-Zilber normal forms for degenerate simplices, products,
// barycentric subdivision and last-vertex maps.
#ifndef SHL_SIMPLICIAL_SET_HPP
#define SHL_SIMPLICIAL_SET_HPP

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace shl {

/// Library-wide error type; the CLI maps it to the input-error exit code.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// (dimension, index) of a nondegenerate cell.
struct CellId {
    int dim = 0;
    int idx = 0;
    friend bool operator==(const CellId&, const CellId&) = default;
    friend auto operator<=>(const CellId&, const CellId&) = default;
};

// Monotone-map helpers. A map [m] -> [n] is stored as its value list of
// length m+1; words of SimplexRefs are the surjective ones.
bool is_monotone(const std::vector<int>& w);
bool is_surjection_onto(const std::vector<int>& w, int n);
std::vector<int> identity_word(int n);
std::vector<int> compose_words(const std::vector<int>& outer, const std::vector<int>& inner);
/// Epi-mono factorization: w = incl . surj with incl strictly monotone.
void factor_monotone(const std::vector<int>& w, std::vector<int>& incl, std::vector<int>& surj);

/// A possibly degenerate simplex in normal form: nondegenerate base cell plus
/// a monotone surjection word ([m] ->> [dim]); the word is the identity
/// exactly when the simplex is nondegenerate.
struct SimplexRef {
    int dim = 0;  // dimension of the base cell
    int idx = 0;
    std::vector<int> word;  // values of [m] ->> [dim], size m+1

    int top_dim() const { return static_cast<int>(word.size()) - 1; }
    bool degenerate() const { return top_dim() != dim; }
    friend bool operator==(const SimplexRef&, const SimplexRef&) = default;
    friend auto operator<=>(const SimplexRef&, const SimplexRef&) = default;
};

/// Finite nonsingular simplicial set. Cells are the nondegenerate simplices,
/// listed per dimension with unique labels; faces index one dimension down.
/// Products carry their (flattened) factor list and per-cell ref tuples so
/// that iterated products are strictly associative.
class SimplicialSet {
public:
    SimplicialSet() = default;

    /// Number of dimensions with cells minus one; -1 for the empty set.
    int dim() const { return static_cast<int>(labels_.size()) - 1; }
    int size(int d) const {
        return d >= 0 && d <= dim() ? static_cast<int>(labels_[d].size()) : 0;
    }
    int total_cells() const;
    const std::string& label(int d, int k) const { return labels_[d][k]; }
    int face(int d, int k, int i) const { return faces_[d][k][i]; }
    std::optional<CellId> find(const std::string& lbl) const;

    /// Product structure: arity 1 means atomic (no tuple data).
    int arity() const { return factors_.empty() ? 1 : static_cast<int>(factors_.size()); }
    bool is_product() const { return !factors_.empty(); }
    const SimplicialSet& factor(int j) const { return factors_[j]; }
    const std::vector<SimplexRef>& tuple(int d, int k) const;

    /// x . w for an arbitrary monotone w: [m] -> [d]; normalizes to base+word.
    SimplexRef apply_word(CellId x, const std::vector<int>& w) const;
    SimplexRef face_ref(const SimplexRef& r, int i) const;
    SimplexRef degeneracy_ref(const SimplexRef& r, int i) const;
    /// Iterated face along a strictly monotone inclusion.
    CellId iterated_face(CellId x, const std::vector<int>& incl) const;

    /// Simplicial identities, label uniqueness, face-table shape.
    void validate() const;

    friend bool operator==(const SimplicialSet&, const SimplicialSet&);

    // Raw construction; used by the builders below and the JSON codec.
    static SimplicialSet make(std::vector<std::vector<std::string>> labels,
                              std::vector<std::vector<std::vector<int>>> faces);
    static SimplicialSet make_product(std::vector<SimplicialSet> factors,
                                      std::vector<std::vector<std::string>> labels,
                                      std::vector<std::vector<std::vector<int>>> faces,
                                      std::vector<std::vector<std::vector<SimplexRef>>> tuples);

private:
    std::vector<std::vector<std::string>> labels_;
    std::vector<std::vector<std::vector<int>>> faces_;  // faces_[d][k][i], d >= 1
    std::map<std::string, CellId> by_label_;
    std::vector<SimplicialSet> factors_;
    std::vector<std::vector<std::vector<SimplexRef>>> tuples_;

    void index_labels();
};

/// A simplicial map: per nondegenerate source cell, a target SimplexRef of
/// the same total dimension, commuting with faces.
class SimplicialMap {
public:
    SimplicialMap() = default;
    SimplicialMap(std::shared_ptr<const SimplicialSet> src,
                  std::shared_ptr<const SimplicialSet> dst,
                  std::vector<std::vector<SimplexRef>> img);

    const SimplicialSet& source() const { return *src_; }
    const SimplicialSet& target() const { return *dst_; }
    std::shared_ptr<const SimplicialSet> source_ptr() const { return src_; }
    std::shared_ptr<const SimplicialSet> target_ptr() const { return dst_; }

    const SimplexRef& image(int d, int k) const { return img_[d][k]; }
    SimplexRef apply(const SimplexRef& r) const;
    /// Face commutation on every cell; throws on failure.
    void validate() const;

    friend bool operator==(const SimplicialMap& a, const SimplicialMap& b);

private:
    std::shared_ptr<const SimplicialSet> src_, dst_;
    std::vector<std::vector<SimplexRef>> img_;
};

inline std::shared_ptr<const SimplicialSet> share(SimplicialSet s) {
    return std::make_shared<const SimplicialSet>(std::move(s));
}

/// Subcomplex flags over a simplicial set; inL[d][k] marks cells of L.
struct SimplicialPair {
    std::shared_ptr<const SimplicialSet> K;
    std::vector<std::vector<char>> inL;

    bool in_sub(int d, int k) const { return inL[d][k] != 0; }
    void validate() const;  // closure under faces
    friend bool operator==(const SimplicialPair& a, const SimplicialPair& b);
};

bool is_point(const SimplicialSet& s);

SimplicialPair make_pair(std::shared_ptr<const SimplicialSet> K,
                         const std::vector<std::string>& sub_labels);
SimplicialPair full_pair(std::shared_ptr<const SimplicialSet> K);  // L = empty

// --- constructors ---

/// Standard n-simplex; cells are the nonempty subsets of {0..n}, labels
/// dot-joined vertex lists ("0.2.3").
SimplicialSet std_simplex(int n);

/// Flattened n-ary product. Factors that are products expand in place,
/// one-point factors are dropped, a single remaining factor is returned
/// unchanged and an empty list yields the point.
SimplicialSet simplex_product(std::vector<SimplicialSet> factors);

/// n-fold product of the interval; cube(0) is the point.
SimplicialSet cube(int n);
/// (I^n, boundary): cells whose tuple has a vertex component in some factor.
SimplicialPair cube_pair(int n);
/// (I^n x Delta^q, boundary x Delta^q); q = 0 gives cube_pair(n).
SimplicialPair cube_simplex_pair(int n, int q);

/// Product of pairs: (K x K', K x L' u L x K').
SimplicialPair pair_algebra(const SimplicialPair& a, const SimplicialPair& b);

/// Barycentric subdivision: nerve of the nondegenerate-cell poset. Requires
/// unique face embeddings (validated); flags[d][k] lists the base cells of
/// each flag in increasing order.
struct Subdivision {
    std::shared_ptr<const SimplicialSet> set;
    std::vector<std::vector<std::vector<CellId>>> flags;
    std::shared_ptr<const SimplicialSet> base;
};
Subdivision subdivide(std::shared_ptr<const SimplicialSet> X);

/// Last-vertex map sd X -> X: a flag goes to the face of its top cell
/// spanned by the last vertices of its members.
SimplicialMap last_vertex_map(const Subdivision& sd);

/// Functorial action on subdivisions: flags map to image flags with repeats
/// collapsed into the degeneracy word.
SimplicialMap sd_map(const SimplicialMap& f, const Subdivision& sd_src, const Subdivision& sd_dst);

// --- map constructors ---

SimplicialMap identity_map(std::shared_ptr<const SimplicialSet> X);
SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);
/// Map Delta^p -> Delta^q induced by a monotone vertex map.
SimplicialMap simplex_hom(int p, int q, const std::vector<int>& vertex_map);
/// Coface d^i: Delta^{n-1} -> Delta^n and codegeneracy s^i: Delta^{n+1} -> Delta^n.
SimplicialMap coface_map(int n, int i);
SimplicialMap codegeneracy_map(int n, int i);
/// Constant map to a vertex.
SimplicialMap constant_map(std::shared_ptr<const SimplicialSet> X,
                           std::shared_ptr<const SimplicialSet> Y, int vertex_idx);

/// Normalize a tuple of refs into a cell of the product P (strips common
/// degeneracies); tuple entries index P's factors in order.
SimplexRef ref_from_tuple(const SimplicialSet& P, const std::vector<SimplexRef>& refs);

/// Projection of a product onto the sub-product of factors [lo, hi).
SimplicialMap product_projection(std::shared_ptr<const SimplicialSet> P, int lo, int hi);
/// Product of maps, against prebuilt source/target products.
SimplicialMap product_map(const std::vector<SimplicialMap>& fs,
                          std::shared_ptr<const SimplicialSet> P,
                          std::shared_ptr<const SimplicialSet> Q);
/// Factor permutation iso; perm[j] is the source position placed at j.
SimplicialMap permute_product(std::shared_ptr<const SimplicialSet> P, const std::vector<int>& perm);
/// Insert a constant vertex of factor `pos` of Q; source is Q minus that factor.
SimplicialMap insert_vertex_slice(std::shared_ptr<const SimplicialSet> Q, int pos, int vertex_idx);

/// Inclusion of the subcomplex L as its own simplicial set.
struct SubcomplexSet {
    std::shared_ptr<const SimplicialSet> set;
    SimplicialMap inclusion;
    std::vector<std::vector<int>> to_ambient;  // cell index in K per L cell
};
SubcomplexSet subcomplex_set(const SimplicialPair& pair);

/// The nontrivial simplicial automorphism of sd Delta^1 (swaps the two
/// edges, fixes the barycenter). There is no simplicial flip on Delta^1
/// itself; level-0 reversal is an algebra-side operation.
SimplicialMap sd_interval_flip(const Subdivision& sd_interval);

std::string word_suffix(const std::vector<int>& w, int base_dim);

}  // namespace shl

#endif
