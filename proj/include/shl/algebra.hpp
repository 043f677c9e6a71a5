// Coefficient algebras: basis-presented associative algebras over the
// integers with exact structure constants, finitely presented algebras,
// and evaluation of noncommutative polynomials.
#ifndef SHL_ALGEBRA_HPP
#define SHL_ALGEBRA_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "shl/simplicial_set.hpp"  // for shl::error

namespace shl {

using Int = boost::multiprecision::cpp_int;

/// A basis-presented associative algebra: countable ordered basis with
/// integer structure constants. Instances are the builtin coefficient
/// algebras; elements are finite integer combinations of basis indices.
class AlgebraSpec {
public:
    virtual ~AlgebraSpec() = default;
    virtual const std::string& name() const = 0;
    /// Number of basis elements, or -1 if countably infinite.
    virtual long basis_bound() const = 0;
    virtual bool commutative() const = 0;
    virtual std::string basis_label(long i) const = 0;
    /// Product of basis elements as a sparse integer combination.
    virtual std::vector<std::pair<long, Int>> mult(long i, long j) const = 0;
};

std::shared_ptr<const AlgebraSpec> make_algebra(const std::string& spec);
std::shared_ptr<const AlgebraSpec> integers_algebra();

/// Element of a basis-presented algebra. A default-constructed element is
/// the zero of any algebra; binary operations unify the specs.
class AlgElem {
public:
    AlgElem() = default;
    static AlgElem basis(std::shared_ptr<const AlgebraSpec> spec, long i, Int coeff = 1);
    static AlgElem integer(const Int& n);  // n times the unit of `integers`

    bool is_zero() const { return c_.empty(); }
    const std::map<long, Int>& coeffs() const { return c_; }
    std::shared_ptr<const AlgebraSpec> spec() const { return spec_; }

    AlgElem& operator+=(const AlgElem& o);
    AlgElem& operator-=(const AlgElem& o);
    friend AlgElem operator+(AlgElem a, const AlgElem& b) { return a += b; }
    friend AlgElem operator-(AlgElem a, const AlgElem& b) { return a -= b; }
    friend AlgElem operator*(const AlgElem& a, const AlgElem& b);
    friend AlgElem operator*(const Int& n, AlgElem a);
    friend bool operator==(const AlgElem& a, const AlgElem& b);
    friend bool operator!=(const AlgElem& a, const AlgElem& b) { return !(a == b); }

private:
    std::shared_ptr<const AlgebraSpec> spec_;
    std::map<long, Int> c_;

    void trim();
    void unify(const AlgElem& o);
};

std::string to_string(const AlgElem& x);
/// The multiplicative unit, when the algebra has one in the span of finitely
/// many basis elements (integers, poly1, dual, matrix); empty for free(g).
std::optional<AlgElem> algebra_unit(const std::shared_ptr<const AlgebraSpec>& spec);

// word <-> index helpers for free(g)
long free_word_index(int g, const std::vector<int>& word);
std::vector<int> free_word_of_index(int g, long idx);

/// Noncommutative integer polynomial in abstract generators; the empty word
/// stands for the unit and evaluates only in unital contexts.
struct NCPoly {
    std::map<std::vector<int>, Int> terms;

    bool is_zero() const { return terms.empty(); }
    NCPoly& operator+=(const NCPoly& o);
    NCPoly& operator-=(const NCPoly& o);
    friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
    friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
    friend NCPoly operator*(const NCPoly& a, const NCPoly& b);
    friend bool operator==(const NCPoly& a, const NCPoly& b) = default;
    void trim();
    static NCPoly gen(int i);
    static NCPoly word(const std::vector<int>& w, Int coeff = 1);
};

/// Finitely presented algebra: named generators and relation polynomials.
struct FinPresAlgebra {
    std::string name;
    std::vector<std::string> gens;
    std::vector<NCPoly> rels;

    friend bool operator==(const FinPresAlgebra&, const FinPresAlgebra&) = default;
};

/// Parse "2*a*b - b^2*a + 3*c" over the given generator names.
NCPoly parse_ncpoly(const std::string& text, const std::vector<std::string>& gens);

FinPresAlgebra free_presentation(int g);  // generators a1..ag, no relations

/// Evaluate a word/polynomial in any ring with +, *, integer scaling.
/// Constant terms (the empty word) need an explicit unit element.
template <class R>
R eval_word(const std::vector<int>& w, const std::vector<R>& images) {
    if (w.empty()) throw error("empty word needs an explicit unit");
    R r = images.at(static_cast<size_t>(w[0]));
    for (size_t i = 1; i < w.size(); ++i) r = r * images.at(static_cast<size_t>(w[i]));
    return r;
}

template <class R>
R eval_ncpoly(const NCPoly& p, const std::vector<R>& images,
              const std::optional<R>& unit = std::nullopt) {
    R acc{};
    for (const auto& [w, c] : p.terms) {
        if (w.empty()) {
            if (!unit) throw error("constant term needs an explicit unit");
            acc += c * *unit;
        } else {
            acc += c * eval_word(w, images);
        }
    }
    return acc;
}

/// Algebra morphism from a finite presentation into any ring, given by
/// generator images; validity means every relation evaluates to zero.
/// `unit` supplies the image of 1 when relations have constant terms.
template <class R>
struct Hom {
    FinPresAlgebra source;
    std::vector<R> images;
    std::optional<R> unit;

    R operator()(const NCPoly& p) const { return eval_ncpoly(p, images, unit); }
    std::optional<size_t> failing_relation() const {
        for (size_t i = 0; i < source.rels.size(); ++i)
            if (!eval_ncpoly(source.rels[i], images, unit).is_zero()) return i;
        return std::nullopt;
    }
    void validate() const {
        if (source.gens.size() != images.size()) throw error("generator count mismatch");
        if (auto i = failing_relation())
            throw error("relation does not vanish: " + source.name + "#" + std::to_string(*i));
    }
    friend bool operator==(const Hom& a, const Hom& b) {
        return a.source == b.source && a.images == b.images && a.unit == b.unit;
    }
};

/// Additive, multiplicative map between coefficient algebras, given by basis
/// images; validated on basis pairs up to an explicit bound.
class CoeffHom {
public:
    CoeffHom(std::shared_ptr<const AlgebraSpec> src, std::shared_ptr<const AlgebraSpec> dst,
             std::function<AlgElem(long)> image)
        : src_(std::move(src)), dst_(std::move(dst)), image_(std::move(image)) {}

    const std::shared_ptr<const AlgebraSpec>& source() const { return src_; }
    const std::shared_ptr<const AlgebraSpec>& target() const { return dst_; }
    AlgElem apply(const AlgElem& x) const;
    void validate(long pair_bound) const;

private:
    std::shared_ptr<const AlgebraSpec> src_, dst_;
    std::function<AlgElem(long)> image_;
};

CoeffHom coeff_hom_identity(std::shared_ptr<const AlgebraSpec> spec);
/// poly1 -> B, x -> image (B unital).
CoeffHom coeff_hom_poly1(std::shared_ptr<const AlgebraSpec> dst, const AlgElem& x_image);
/// free(g) -> B, letters -> images.
CoeffHom coeff_hom_free(std::shared_ptr<const AlgebraSpec> src,
                        std::shared_ptr<const AlgebraSpec> dst, std::vector<AlgElem> letter_images);

}  // namespace shl

#endif
