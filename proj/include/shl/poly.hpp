// Polynomials on a standard simplex in barycentric coordinates t_1..t_n
// (t_0 = 1 - sum is eliminated), with coefficients in any exact ring R.
// The variables are central even when R is noncommutative.
#ifndef SHL_POLY_HPP
#define SHL_POLY_HPP

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "shl/algebra.hpp"

namespace shl {

template <class R>
class SimplexPoly {
public:
    /// Zero in any number of variables.
    SimplexPoly() = default;

    static SimplexPoly zero(int nvars) {
        SimplexPoly p;
        p.nvars_ = nvars;
        return p;
    }

    /// coeff * t^degree, where degree lists the exponents of t_1..t_nvars.
    static SimplexPoly monomial(std::vector<int> degree, R coeff) {
        SimplexPoly p;
        p.nvars_ = static_cast<int>(degree.size());
        for (int e : degree)
            if (e < 0) throw error("negative exponent");
        if (!(coeff == R{})) p.terms_.emplace(std::move(degree), std::move(coeff));
        return p;
    }

    /// coeff * t_i with 1 <= i <= nvars.
    static SimplexPoly variable(int i, int nvars, R coeff) {
        if (i < 1 || i > nvars) throw error("variable index out of range");
        std::vector<int> d(static_cast<size_t>(nvars), 0);
        d[static_cast<size_t>(i - 1)] = 1;
        return monomial(std::move(d), std::move(coeff));
    }

    static SimplexPoly constant(int nvars, R coeff) {
        return monomial(std::vector<int>(static_cast<size_t>(nvars), 0), std::move(coeff));
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, R>& terms() const { return terms_; }

    int total_degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) {
            int s = 0;
            for (int e : m) s += e;
            d = std::max(d, s);
        }
        return d;
    }

    /// The value of a 0-variable polynomial.
    R as_constant() const {
        if (nvars_ > 0) throw error("not a constant polynomial");
        if (terms_.empty()) return R{};
        return terms_.begin()->second;
    }

    SimplexPoly& operator+=(const SimplexPoly& o) {
        unify(o);
        for (const auto& [m, c] : o.terms_) {
            auto it = terms_.find(m);
            if (it == terms_.end()) terms_.emplace(m, c);
            else it->second += c;
        }
        trim();
        return *this;
    }
    SimplexPoly& operator-=(const SimplexPoly& o) {
        unify(o);
        for (const auto& [m, c] : o.terms_) {
            auto it = terms_.find(m);
            if (it == terms_.end()) {
                R neg{};
                neg -= c;
                terms_.emplace(m, std::move(neg));
            } else {
                it->second -= c;
            }
        }
        trim();
        return *this;
    }
    friend SimplexPoly operator+(SimplexPoly a, const SimplexPoly& b) { return a += b; }
    friend SimplexPoly operator-(SimplexPoly a, const SimplexPoly& b) { return a -= b; }

    friend SimplexPoly operator*(const SimplexPoly& a, const SimplexPoly& b) {
        SimplexPoly r;
        r.unify(a);
        r.unify(b);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                std::vector<int> m = ma;
                for (size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
                R prod = ca * cb;
                auto it = r.terms_.find(m);
                if (it == r.terms_.end()) r.terms_.emplace(std::move(m), std::move(prod));
                else it->second += prod;
            }
        r.trim();
        return r;
    }

    friend SimplexPoly operator*(const Int& n, SimplexPoly p) {
        for (auto& [m, c] : p.terms_) c = n * c;
        p.trim();
        return p;
    }

    friend bool operator==(const SimplexPoly& a, const SimplexPoly& b) {
        if (a.terms_.empty() || b.terms_.empty()) return a.terms_.empty() && b.terms_.empty();
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const SimplexPoly& a, const SimplexPoly& b) { return !(a == b); }

    /// Apply a ring map to every coefficient.
    template <class S, class F>
    SimplexPoly<S> map_coeffs(F&& f) const {
        SimplexPoly<S> r = SimplexPoly<S>::zero(nvars_);
        for (const auto& [m, c] : terms_) {
            SimplexPoly<S> t = SimplexPoly<S>::monomial(m, f(c));
            r += t;
        }
        return r;
    }

private:
    int nvars_ = -1;  // -1: zero of any variable count
    std::map<std::vector<int>, R> terms_;

    void trim() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = (it->second == R{}) ? terms_.erase(it) : std::next(it);
    }
    void unify(const SimplexPoly& o) {
        if (o.nvars_ < 0) return;
        if (nvars_ < 0) {
            nvars_ = o.nvars_;
            return;
        }
        if (nvars_ != o.nvars_) throw error("variable count mismatch");
    }

    template <class S>
    friend class SimplexPoly;
};

/// Substitute t_i -> images[i-1] (integer-coefficient polynomials in the
/// output variables). Coefficients in R pass through unchanged, so R needs
/// no unit.
template <class R>
SimplexPoly<R> substitute_vars(const SimplexPoly<R>& p, const std::vector<SimplexPoly<Int>>& images,
                               int out_nvars) {
    if (p.nvars() >= 0 && static_cast<int>(images.size()) != p.nvars())
        throw error("one image per variable required");
    SimplexPoly<R> out = SimplexPoly<R>::zero(out_nvars);
    // cache of images[i]^e
    std::vector<std::vector<SimplexPoly<Int>>> pw(images.size());
    auto power = [&](size_t i, int e) -> const SimplexPoly<Int>& {
        auto& cache = pw[i];
        if (cache.empty()) cache.push_back(SimplexPoly<Int>::constant(out_nvars, 1));
        while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images[i]);
        return cache[static_cast<size_t>(e)];
    };
    for (const auto& [m, c] : p.terms()) {
        SimplexPoly<Int> mono = SimplexPoly<Int>::constant(out_nvars, 1);
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0) mono = mono * power(i, m[i]);
        for (const auto& [bm, bc] : mono.terms()) out += SimplexPoly<R>::monomial(bm, bc * c);
    }
    return out;
}

/// Pullback along the affine map of simplices induced by phi : [m] -> [n],
/// given as the value list word[0..m]. In eliminated coordinates
/// t_i maps to sum of t_j over phi(j) = i, with t_0 = 1 - sum t_j.
template <class R>
SimplexPoly<R> pullback_ordinal(const SimplexPoly<R>& p, const std::vector<int>& word, int n) {
    int m = static_cast<int>(word.size()) - 1;
    if (m < 0) throw error("empty ordinal word");
    if (p.nvars() >= 0 && p.nvars() != n) throw error("ordinal word does not match variables");
    std::vector<SimplexPoly<Int>> images;
    images.reserve(static_cast<size_t>(n));
    SimplexPoly<Int> t0 = SimplexPoly<Int>::constant(m, 1);
    for (int j = 1; j <= m; ++j) t0 -= SimplexPoly<Int>::variable(j, m, 1);
    for (int i = 1; i <= n; ++i) {
        SimplexPoly<Int> img = SimplexPoly<Int>::zero(m);
        for (int j = 0; j <= m; ++j) {
            if (word[static_cast<size_t>(j)] != i) continue;
            img += j == 0 ? t0 : SimplexPoly<Int>::variable(j, m, 1);
        }
        images.push_back(std::move(img));
    }
    return substitute_vars(p, images, m);
}

/// t_1 -> 1 - t_1 on one-variable polynomials (interval reversal).
template <class R>
SimplexPoly<R> reverse_interval_poly(const SimplexPoly<R>& p) {
    if (p.nvars() > 1) throw error("interval reversal needs one variable");
    if (p.nvars() < 0) return p;
    SimplexPoly<Int> img = SimplexPoly<Int>::constant(1, 1) - SimplexPoly<Int>::variable(1, 1, 1);
    return substitute_vars(p, {img}, 1);
}

inline std::string to_string(const Int& n) { return n.str(); }

template <class R>
std::string to_string(const SimplexPoly<R>& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        if (!first) os << " + ";
        os << "(" << to_string(c) << ")";
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            os << "*t" << (i + 1);
            if (m[i] > 1) os << "^" << m[i];
        }
        first = false;
    }
    return os.str();
}

}  // namespace shl

#endif
