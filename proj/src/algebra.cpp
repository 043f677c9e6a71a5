#include "shl/algebra.hpp"

#include <cctype>
#include <sstream>

namespace shl {

namespace {

class IntegersAlg : public AlgebraSpec {
public:
    const std::string& name() const override {
        static const std::string n = "integers";
        return n;
    }
    long basis_bound() const override { return 1; }
    bool commutative() const override { return true; }
    std::string basis_label(long) const override { return "1"; }
    std::vector<std::pair<long, Int>> mult(long, long) const override { return {{0, 1}}; }
};

class Poly1Alg : public AlgebraSpec {
public:
    const std::string& name() const override {
        static const std::string n = "poly1";
        return n;
    }
    long basis_bound() const override { return -1; }
    bool commutative() const override { return true; }
    std::string basis_label(long i) const override {
        if (i == 0) return "1";
        if (i == 1) return "x";
        return "x^" + std::to_string(i);
    }
    std::vector<std::pair<long, Int>> mult(long i, long j) const override { return {{i + j, 1}}; }
};

class DualAlg : public AlgebraSpec {
public:
    const std::string& name() const override {
        static const std::string n = "dual";
        return n;
    }
    long basis_bound() const override { return 2; }
    bool commutative() const override { return true; }
    std::string basis_label(long i) const override { return i == 0 ? "1" : "x"; }
    std::vector<std::pair<long, Int>> mult(long i, long j) const override {
        if (i + j > 1) return {};  // x^2 = 0
        return {{i + j, 1}};
    }
};

class MatrixAlg : public AlgebraSpec {
public:
    explicit MatrixAlg(int k) : k_(k), name_("matrix(" + std::to_string(k) + ")") {}
    const std::string& name() const override { return name_; }
    long basis_bound() const override { return static_cast<long>(k_) * k_; }
    bool commutative() const override { return k_ == 1; }
    std::string basis_label(long i) const override {
        return "e" + std::to_string(i / k_) + std::to_string(i % k_);
    }
    std::vector<std::pair<long, Int>> mult(long i, long j) const override {
        long a = i / k_, b = i % k_, c = j / k_, d = j % k_;
        if (b != c) return {};
        return {{a * k_ + d, 1}};
    }

private:
    int k_;
    std::string name_;
};

class FreeAlg : public AlgebraSpec {
public:
    explicit FreeAlg(int g) : g_(g), name_("free(" + std::to_string(g) + ")") {}
    const std::string& name() const override { return name_; }
    long basis_bound() const override { return -1; }
    bool commutative() const override { return g_ == 1; }
    std::string basis_label(long i) const override {
        auto w = free_word_of_index(g_, i);
        std::string s;
        for (size_t p = 0; p < w.size(); ++p) {
            if (p) s += ".";
            s += "a" + std::to_string(w[p] + 1);
        }
        return s;
    }
    std::vector<std::pair<long, Int>> mult(long i, long j) const override {
        auto wi = free_word_of_index(g_, i), wj = free_word_of_index(g_, j);
        wi.insert(wi.end(), wj.begin(), wj.end());
        return {{free_word_index(g_, wi), 1}};
    }

private:
    int g_;
    std::string name_;
};

int parse_param(const std::string& spec, const std::string& head) {
    // spec = head "(" k ")"
    std::string inner = spec.substr(head.size() + 1, spec.size() - head.size() - 2);
    size_t pos = 0;
    int k = std::stoi(inner, &pos);
    if (pos != inner.size() || k < 1) throw error("bad algebra parameter: " + spec);
    return k;
}

}  // namespace

std::shared_ptr<const AlgebraSpec> integers_algebra() {
    static const auto z = std::make_shared<IntegersAlg>();
    return z;
}

std::shared_ptr<const AlgebraSpec> make_algebra(const std::string& spec) {
    if (spec == "integers") return integers_algebra();
    if (spec == "poly1") {
        static const auto a = std::make_shared<Poly1Alg>();
        return a;
    }
    if (spec == "dual") {
        static const auto a = std::make_shared<DualAlg>();
        return a;
    }
    if (spec.rfind("matrix(", 0) == 0 && spec.back() == ')')
        return std::make_shared<MatrixAlg>(parse_param(spec, "matrix"));
    if (spec.rfind("free(", 0) == 0 && spec.back() == ')')
        return std::make_shared<FreeAlg>(parse_param(spec, "free"));
    throw error("unknown algebra: " + spec);
}

long free_word_index(int g, const std::vector<int>& word) {
    if (word.empty()) throw error("free algebra has no empty word");
    // words ordered by length, then lexicographically within a length
    long offset = 0, block = 1;
    for (size_t m = 1; m < word.size(); ++m) {
        block *= g;
        offset += block;
    }
    long pos = 0;
    for (int letter : word) {
        if (letter < 0 || letter >= g) throw error("letter out of range");
        pos = pos * g + letter;
    }
    return offset + pos;
}

std::vector<int> free_word_of_index(int g, long idx) {
    if (idx < 0) throw error("bad word index");
    long block = g, len = 1, rem = idx;
    while (rem >= block) {
        rem -= block;
        block *= g;
        ++len;
    }
    std::vector<int> w(static_cast<size_t>(len));
    for (long p = len - 1; p >= 0; --p) {
        w[static_cast<size_t>(p)] = static_cast<int>(rem % g);
        rem /= g;
    }
    return w;
}

void AlgElem::trim() {
    for (auto it = c_.begin(); it != c_.end();)
        it = it->second == 0 ? c_.erase(it) : std::next(it);
    if (c_.empty()) spec_.reset();
}

void AlgElem::unify(const AlgElem& o) {
    if (!o.spec_) return;
    if (!spec_) {
        spec_ = o.spec_;
        return;
    }
    if (spec_->name() != o.spec_->name())
        throw error("algebra mismatch: " + spec_->name() + " vs " + o.spec_->name());
}

AlgElem AlgElem::basis(std::shared_ptr<const AlgebraSpec> spec, long i, Int coeff) {
    if (i < 0 || (spec->basis_bound() >= 0 && i >= spec->basis_bound()))
        throw error("basis index out of range for " + spec->name());
    AlgElem x;
    x.spec_ = std::move(spec);
    x.c_[i] = std::move(coeff);
    x.trim();
    return x;
}

AlgElem AlgElem::integer(const Int& n) { return basis(integers_algebra(), 0, n); }

AlgElem& AlgElem::operator+=(const AlgElem& o) {
    unify(o);
    for (const auto& [i, c] : o.c_) c_[i] += c;
    trim();
    return *this;
}

AlgElem& AlgElem::operator-=(const AlgElem& o) {
    unify(o);
    for (const auto& [i, c] : o.c_) c_[i] -= c;
    trim();
    return *this;
}

AlgElem operator*(const AlgElem& a, const AlgElem& b) {
    // the integers act centrally on every algebra
    if (a.spec_ && a.spec_->name() == "integers" && b.spec_ &&
        b.spec_->name() != "integers")
        return a.c_.at(0) * b;
    if (b.spec_ && b.spec_->name() == "integers" && a.spec_ &&
        a.spec_->name() != "integers")
        return b.c_.at(0) * a;
    AlgElem r;
    r.unify(a);
    r.unify(b);
    for (const auto& [i, ci] : a.c_)
        for (const auto& [j, cj] : b.c_)
            for (const auto& [k, s] : r.spec_->mult(i, j)) r.c_[k] += ci * cj * s;
    r.trim();
    return r;
}

AlgElem operator*(const Int& n, AlgElem a) {
    for (auto& [i, c] : a.c_) c *= n;
    a.trim();
    return a;
}

bool operator==(const AlgElem& a, const AlgElem& b) {
    if (a.c_.empty() || b.c_.empty()) return a.c_.empty() && b.c_.empty();
    return a.spec_->name() == b.spec_->name() && a.c_ == b.c_;
}

std::string to_string(const AlgElem& x) {
    if (x.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : x.coeffs()) {
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        Int a = abs(c);
        std::string lbl = x.spec()->basis_label(i);
        if (a != 1 || lbl == "1") {
            os << a;
            if (lbl != "1") os << "*";
        }
        if (lbl != "1") os << lbl;
        first = false;
    }
    return os.str();
}

std::optional<AlgElem> algebra_unit(const std::shared_ptr<const AlgebraSpec>& spec) {
    const std::string& n = spec->name();
    if (n == "integers" || n == "poly1" || n == "dual") return AlgElem::basis(spec, 0);
    if (n.rfind("matrix(", 0) == 0) {
        long k = 0;
        while ((k + 1) * (k + 1) <= spec->basis_bound()) ++k;
        AlgElem u;
        for (long i = 0; i < k; ++i) u += AlgElem::basis(spec, i * k + i);
        return u;
    }
    return std::nullopt;
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms) terms[w] += c;
    trim();
    return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms) terms[w] -= c;
    trim();
    return *this;
}

NCPoly operator*(const NCPoly& a, const NCPoly& b) {
    NCPoly r;
    for (const auto& [wa, ca] : a.terms)
        for (const auto& [wb, cb] : b.terms) {
            auto w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            r.terms[w] += ca * cb;
        }
    r.trim();
    return r;
}

void NCPoly::trim() {
    for (auto it = terms.begin(); it != terms.end();)
        it = it->second == 0 ? terms.erase(it) : std::next(it);
}

NCPoly NCPoly::gen(int i) { return word({i}); }

NCPoly NCPoly::word(const std::vector<int>& w, Int coeff) {
    NCPoly p;
    if (coeff != 0) p.terms[w] = std::move(coeff);
    return p;
}

namespace {

struct PolyParser {
    const std::string& s;
    const std::vector<std::string>& gens;
    size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    NCPoly expr() {
        skip();
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        NCPoly acc = term();
        if (neg) acc = NCPoly{} - acc;
        for (;;) {
            skip();
            if (eat('+')) acc += term();
            else if (eat('-')) acc -= term();
            else break;
        }
        return acc;
    }

    NCPoly term() {
        NCPoly acc = factor();
        while (eat('*')) acc = acc * factor();
        return acc;
    }

    NCPoly factor() {
        skip();
        if (pos >= s.size()) throw error("polynomial ends unexpectedly: " + s);
        if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            return NCPoly::word({}, Int(s.substr(start, pos - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_') {
            size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            std::string id = s.substr(start, pos - start);
            int gi = -1;
            for (size_t k = 0; k < gens.size(); ++k)
                if (gens[k] == id) gi = static_cast<int>(k);
            if (gi < 0) throw error("unknown generator: " + id);
            int e = 1;
            if (eat('^')) {
                skip();
                size_t es = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                if (es == pos) throw error("exponent expected in: " + s);
                e = std::stoi(s.substr(es, pos - es));
            }
            return NCPoly::word(std::vector<int>(static_cast<size_t>(e), gi));
        }
        throw error(std::string("unexpected character '") + s[pos] + "' in: " + s);
    }
};

}  // namespace

NCPoly parse_ncpoly(const std::string& text, const std::vector<std::string>& gens) {
    PolyParser p{text, gens};
    NCPoly r = p.expr();
    p.skip();
    if (p.pos != text.size()) throw error("trailing input in polynomial: " + text);
    return r;
}

FinPresAlgebra free_presentation(int g) {
    FinPresAlgebra a;
    a.name = "free(" + std::to_string(g) + ")";
    for (int i = 1; i <= g; ++i) a.gens.push_back("a" + std::to_string(i));
    return a;
}

AlgElem CoeffHom::apply(const AlgElem& x) const {
    if (x.is_zero()) return {};
    if (x.spec()->name() != src_->name()) throw error("element not in source algebra");
    AlgElem r;
    for (const auto& [i, c] : x.coeffs()) r += c * image_(i);
    return r;
}

void CoeffHom::validate(long pair_bound) const {
    long n = src_->basis_bound();
    long lim = n >= 0 ? std::min(n, pair_bound) : pair_bound;
    for (long i = 0; i < lim; ++i)
        for (long j = 0; j < lim; ++j) {
            AlgElem lhs;
            for (const auto& [k, s] : src_->mult(i, j)) lhs += s * image_(k);
            if (lhs != image_(i) * image_(j))
                throw error("not multiplicative on basis pair (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
        }
}

CoeffHom coeff_hom_identity(std::shared_ptr<const AlgebraSpec> spec) {
    auto s = spec;
    return CoeffHom(spec, spec, [s](long i) { return AlgElem::basis(s, i); });
}

CoeffHom coeff_hom_poly1(std::shared_ptr<const AlgebraSpec> dst, const AlgElem& x_image) {
    auto unit = algebra_unit(dst);
    if (!unit) throw error("target of poly1 morphism must be unital");
    AlgElem u = *unit, x = x_image;
    return CoeffHom(make_algebra("poly1"), dst, [u, x](long k) {
        AlgElem r = u;
        for (long p = 0; p < k; ++p) r = r * x;
        return r;
    });
}

CoeffHom coeff_hom_free(std::shared_ptr<const AlgebraSpec> src,
                        std::shared_ptr<const AlgebraSpec> dst,
                        std::vector<AlgElem> letter_images) {
    const std::string& sn = src->name();
    if (sn.rfind("free(", 0) != 0) throw error("source must be a free algebra");
    int letters = static_cast<int>(letter_images.size());
    if (sn != "free(" + std::to_string(letters) + ")")
        throw error("need one image per letter of " + sn);
    return CoeffHom(src, dst, [letters, letter_images](long i) {
        auto w = free_word_of_index(letters, i);
        AlgElem r = letter_images.at(static_cast<size_t>(w[0]));
        for (size_t p = 1; p < w.size(); ++p) r = r * letter_images.at(static_cast<size_t>(w[p]));
        return r;
    });
}

}  // namespace shl
