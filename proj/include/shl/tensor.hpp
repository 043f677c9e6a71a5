// Tensor words over a coefficient algebra (or over relative function
// algebras), the multiply-out map and its kernel, and the universal
// square-zero-style extension  ker -> tensor algebra -> algebra  with its
// canonical word-of-length-one splitting.
#ifndef SHL_TENSOR_HPP
#define SHL_TENSOR_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "shl/algebra.hpp"
#include "shl/family.hpp"

namespace shl {

template <class E>
class TensorElem;

// --- canonical atoms -------------------------------------------------------
//
// tensor_atoms decomposes an entry into scaled "atoms", the building blocks
// used to keep tensor words in a canonical multilinear expansion.  Basis-
// presented coefficients expand into their basis elements; relative function
// algebras carry no preferred module basis, so a nonzero family stays whole;
// tensor elements expand into their (already canonical) words.

inline std::vector<std::pair<AlgElem, Int>> tensor_atoms(const AlgElem& x) {
    std::vector<std::pair<AlgElem, Int>> out;
    for (const auto& [i, c] : x.coeffs()) out.emplace_back(AlgElem::basis(x.spec(), i, 1), c);
    return out;
}

template <class R>
std::vector<std::pair<PolyFamily<R>, Int>> tensor_atoms(const PolyFamily<R>& f) {
    if (f.is_zero()) return {};
    return {{f, Int(1)}};
}

template <class E>
std::vector<std::pair<TensorElem<E>, Int>> tensor_atoms(const TensorElem<E>& t);

/// Finite integer combination of tensor words <b_1|...|b_k> with k >= 1.
/// Terms are kept canonical: every entry is an atom, the multilinear
/// expansion is complete, equal words are merged and zero terms dropped.
template <class E>
class TensorElem {
public:
    using Word = std::vector<E>;

    TensorElem() = default;  // zero

    /// coeff * <entries...>; entries are expanded multilinearly.
    static TensorElem word(const Word& entries, Int coeff = 1) {
        if (entries.empty()) throw error("tensor words need at least one entry");
        std::vector<std::pair<Word, Int>> acc;
        acc.emplace_back(Word{}, std::move(coeff));
        for (const E& e : entries) {
            auto atoms = tensor_atoms(e);
            std::vector<std::pair<Word, Int>> next;
            for (const auto& [w, c] : acc)
                for (const auto& [a, ca] : atoms) {
                    Word ext = w;
                    ext.push_back(a);
                    next.emplace_back(std::move(ext), c * ca);
                }
            acc = std::move(next);
        }
        TensorElem t;
        for (auto& [w, c] : acc) t.add_term(std::move(w), std::move(c));
        t.trim();
        return t;
    }

    const std::vector<std::pair<Word, Int>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    TensorElem& operator+=(const TensorElem& o) {
        for (const auto& [w, c] : o.terms_) add_term(w, c);
        trim();
        return *this;
    }
    TensorElem& operator-=(const TensorElem& o) {
        for (const auto& [w, c] : o.terms_) add_term(w, -c);
        trim();
        return *this;
    }
    friend TensorElem operator+(TensorElem a, const TensorElem& b) { return a += b; }
    friend TensorElem operator-(TensorElem a, const TensorElem& b) { return a -= b; }

    /// Concatenation of words, extended bilinearly.
    friend TensorElem operator*(const TensorElem& a, const TensorElem& b) {
        TensorElem r;
        for (const auto& [wa, ca] : a.terms_)
            for (const auto& [wb, cb] : b.terms_) {
                Word w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                r.add_term(std::move(w), ca * cb);
            }
        r.trim();
        return r;
    }
    friend TensorElem operator*(const Int& n, TensorElem t) {
        for (auto& [w, c] : t.terms_) c = n * c;
        t.trim();
        return t;
    }

    friend bool operator==(const TensorElem& a, const TensorElem& b) { return (a - b).is_zero(); }
    friend bool operator!=(const TensorElem& a, const TensorElem& b) { return !(a == b); }

private:
    std::vector<std::pair<Word, Int>> terms_;

    void add_term(Word w, Int c) {
        if (c == 0) return;
        for (auto& [tw, tc] : terms_)
            if (tw == w) {
                tc += c;
                return;
            }
        terms_.emplace_back(std::move(w), std::move(c));
    }
    void trim() {
        std::erase_if(terms_, [](const auto& t) { return t.second == 0; });
    }
};

template <class E>
std::vector<std::pair<TensorElem<E>, Int>> tensor_atoms(const TensorElem<E>& t) {
    std::vector<std::pair<TensorElem<E>, Int>> out;
    for (const auto& [w, c] : t.terms()) {
        TensorElem<E> atom;
        atom += TensorElem<E>::word(w, 1);
        out.emplace_back(std::move(atom), c);
    }
    return out;
}

// --- unit, counit, kernel ---------------------------------------------------

/// The length-one word on x (zero when x is zero).
template <class E>
TensorElem<E> sigma(const E& x) {
    if (tensor_atoms(x).empty()) return {};
    return TensorElem<E>::word({x});
}

/// Multiply every word out in the coefficient algebra and add up.
template <class E>
E eta(const TensorElem<E>& t) {
    E acc{};
    for (const auto& [w, c] : t.terms()) {
        E prod = w[0];
        for (size_t i = 1; i < w.size(); ++i) prod = prod * w[i];
        acc += c * prod;
    }
    return acc;
}

/// Membership in the kernel of the multiply-out map.
template <class E>
bool j_member(const TensorElem<E>& t) {
    return eta(t).is_zero();
}

/// Apply a map to every entry of every word; the result is re-normalized, so
/// f may send atoms to arbitrary combinations.
template <class E, class F>
auto tensor_map(const TensorElem<E>& t, F&& f)
    -> TensorElem<std::decay_t<decltype(f(std::declval<const E&>()))>> {
    using E2 = std::decay_t<decltype(f(std::declval<const E&>()))>;
    TensorElem<E2> r;
    for (const auto& [w, c] : t.terms()) {
        typename TensorElem<E2>::Word img;
        img.reserve(w.size());
        for (const E& e : w) img.push_back(f(e));
        r += TensorElem<E2>::word(img, c);
    }
    return r;
}

std::string to_string(const TensorElem<AlgElem>& t);

// --- the universal extension ------------------------------------------------

/// ker(multiply-out) -> tensor algebra -> algebra, split by the length-one
/// word map.  Kernel membership is exact through coefficient normal forms.
struct UniversalExtension {
    std::shared_ptr<const AlgebraSpec> algebra;

    /// Splitting: module map back into the tensor algebra.
    TensorElem<AlgElem> s(const AlgElem& x) const { return sigma(x); }
    /// Surjection: multiply out.
    AlgElem pi(const TensorElem<AlgElem>& t) const { return eta(t); }
    /// Inclusion of the kernel (membership-checked).
    TensorElem<AlgElem> incl(const TensorElem<AlgElem>& t) const {
        if (!j_member(t)) throw error("universal extension: element is outside the kernel");
        return t;
    }
    bool in_kernel(const TensorElem<AlgElem>& t) const { return j_member(t); }
};

inline UniversalExtension universal_extension(std::shared_ptr<const AlgebraSpec> algebra) {
    if (!algebra) throw error("universal extension needs an algebra");
    return UniversalExtension{std::move(algebra)};
}

inline std::string to_string(const TensorElem<AlgElem>& t) {
    if (t.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : t.terms()) {
        if (!first) out += " + ";
        first = false;
        out += c.str() + "*<";
        for (size_t i = 0; i < w.size(); ++i) {
            if (i) out += "|";
            out += to_string(w[i]);
        }
        out += ">";
    }
    return out;
}

}  // namespace shl

#endif
