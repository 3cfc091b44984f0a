/*
   Copyright 2026 The fdcube Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef FDCUBE_POLY_HPP
#define FDCUBE_POLY_HPP

/**
 * @file poly.hpp
 * @brief Sparse multivariate polynomial functions over GF(p^m).
 *
 * A MultiPoly is kept in canonical reduced form: every exponent is at most
 * q - 1 (x^q = x as functions), no zero coefficient is stored, and terms are
 * ordered graded-lexicographically. Two canonical polynomials are equal iff
 * they define the same function GF(q)^n -> GF(q).
 */

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "combinat.hpp"
#include "error.hpp"
#include "field.hpp"
#include "linalg.hpp"
#include "rng.hpp"

namespace fdcube {

/// Exponent vector, one entry per variable (x1 first).
struct Monomial {
    std::vector<std::uint32_t> exps;

    Monomial() = default;
    explicit Monomial(std::size_t n) : exps(n, 0) {}
    Monomial(std::initializer_list<std::uint32_t> e) : exps(e) {}
    explicit Monomial(std::vector<std::uint32_t> e) : exps(std::move(e)) {}

    std::size_t size() const noexcept { return exps.size(); }
    std::uint32_t operator[](std::size_t i) const { return exps[i]; }
    std::uint32_t& operator[](std::size_t i) { return exps[i]; }

    std::uint64_t total_degree() const { return std::accumulate(exps.begin(), exps.end(), std::uint64_t{0}); }
    bool is_constant() const {
        return std::all_of(exps.begin(), exps.end(), [](auto e) { return e == 0; });
    }

    /// Every exponent of *this is <= the one in other.
    bool divides(const Monomial& other) const {
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] > other.exps[i]) return false;
        }
        return true;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lexicographic order: total degree first, then x1 > x2 > ...
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const auto da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        return a.exps < b.exps;
    }
};

/// Canonical exponent for functions over GF(q): e >= q folds to
/// ((e - 1) mod (q - 1)) + 1; zero stays zero.
inline std::uint64_t fold_exponent(std::uint64_t e, std::uint64_t q) {
    if (e < q) return e;
    return (e - 1) % (q - 1) + 1;
}

class MultiPoly {
  public:
    using TermMap = std::map<Monomial, Elem, GrlexLess>;

    MultiPoly(Field field, std::size_t n) : field_(std::move(field)), n_(n) {}

    static MultiPoly constant(Field field, std::size_t n, Elem c) {
        MultiPoly f(std::move(field), n);
        f.add_term(Monomial(n), c);
        return f;
    }

    /// x_i, 0-based index.
    static MultiPoly variable(Field field, std::size_t n, std::size_t i) {
        MultiPoly f(field, n);
        Monomial m(n);
        m[i] = 1;
        f.add_term(std::move(m), field.one());
        return f;
    }

    const Field& field() const noexcept { return field_; }
    std::size_t variables() const noexcept { return n_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    Elem coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? field_.zero() : it->second;
    }

    /// Adds c * m, folding exponents into canonical range.
    void add_term(Monomial m, Elem c) {
        if (m.size() != n_) throw InvalidArgument("monomial has wrong number of variables");
        field_.check(c);
        if (field_.is_zero(c)) return;
        for (auto& e : m.exps) e = static_cast<std::uint32_t>(fold_exponent(e, field_.order()));
        auto [it, inserted] = terms_.try_emplace(std::move(m), c);
        if (!inserted) {
            it->second = field_.add(it->second, c);
            if (field_.is_zero(it->second)) terms_.erase(it);
        }
    }

    MultiPoly operator-() const {
        MultiPoly r(field_, n_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, field_.neg(c));
        return r;
    }

    MultiPoly& operator+=(const MultiPoly& g) {
        require_compatible(g);
        for (const auto& [m, c] : g.terms_) add_term(m, c);
        return *this;
    }

    MultiPoly& operator-=(const MultiPoly& g) {
        require_compatible(g);
        for (const auto& [m, c] : g.terms_) add_term(m, field_.neg(c));
        return *this;
    }

    friend MultiPoly operator+(MultiPoly f, const MultiPoly& g) { return f += g; }
    friend MultiPoly operator-(MultiPoly f, const MultiPoly& g) { return f -= g; }

    friend MultiPoly operator*(const MultiPoly& f, const MultiPoly& g) {
        f.require_compatible(g);
        MultiPoly r(f.field_, f.n_);
        for (const auto& [mf, cf] : f.terms_) {
            for (const auto& [mg, cg] : g.terms_) {
                Monomial m(f.n_);
                for (std::size_t i = 0; i < f.n_; ++i) m[i] = mf[i] + mg[i];
                r.add_term(std::move(m), f.field_.mul(cf, cg));
            }
        }
        return r;
    }

    MultiPoly scaled(Elem c) const {
        field_.check(c);
        MultiPoly r(field_, n_);
        if (field_.is_zero(c)) return r;
        for (const auto& [m, v] : terms_) r.terms_.emplace(m, field_.mul(v, c));
        return r;
    }

    Elem evaluate(std::span<const Elem> point) const {
        if (point.size() != n_) throw InvalidArgument("evaluation point has wrong dimension");
        // per-variable power tables up to the largest exponent in use
        std::vector<std::uint32_t> max_e(n_, 0);
        for (const auto& [m, c] : terms_) {
            for (std::size_t i = 0; i < n_; ++i) max_e[i] = std::max(max_e[i], m[i]);
        }
        std::vector<std::vector<Elem>> powers(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            powers[i].resize(max_e[i] + 1);
            powers[i][0] = field_.one();
            for (std::uint32_t e = 1; e <= max_e[i]; ++e) powers[i][e] = field_.mul(powers[i][e - 1], point[i]);
        }
        Elem acc = field_.zero();
        for (const auto& [m, c] : terms_) {
            Elem t = c;
            for (std::size_t i = 0; i < n_ && !field_.is_zero(t); ++i) {
                if (m[i] != 0) t = field_.mul(t, powers[i][m[i]]);
            }
            acc = field_.add(acc, t);
        }
        return acc;
    }

    /// Replaces x_i by the constant v; the result still has n variables but
    /// no longer depends on x_i.
    MultiPoly substitute(std::size_t i, Elem v) const {
        if (i >= n_) throw InvalidArgument("variable index out of range");
        MultiPoly r(field_, n_);
        for (const auto& [m, c] : terms_) {
            Monomial mm = m;
            const Elem factor = field_.pow(v, mm[i]);
            mm[i] = 0;
            r.add_term(std::move(mm), field_.mul(c, factor));
        }
        return r;
    }

    std::uint64_t total_degree() const {
        std::uint64_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
        return d;
    }

    std::uint64_t degree_in(std::size_t i) const {
        std::uint64_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max<std::uint64_t>(d, m[i]);
        return d;
    }

    /// Total degree counting only the variables flagged in `which`.
    std::uint64_t degree_in(const std::vector<bool>& which) const {
        std::uint64_t d = 0;
        for (const auto& [m, c] : terms_) {
            std::uint64_t s = 0;
            for (std::size_t i = 0; i < n_; ++i) {
                if (which[i]) s += m[i];
            }
            d = std::max(d, s);
        }
        return d;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.field_ == b.field_ && a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    void require_compatible(const MultiPoly& g) const {
        if (!(field_ == g.field_)) throw InvalidArgument("polynomials over different fields");
        if (n_ != g.n_) throw InvalidArgument("polynomials with different variable counts");
    }

  private:
    Field field_;
    std::size_t n_;
    TermMap terms_;
};

/// Flat, allocation-free evaluator for hot loops.
class PolyEvaluator {
  public:
    explicit PolyEvaluator(const MultiPoly& f) : field_(f.field()), n_(f.variables()) {
        max_e_.assign(n_, 0);
        for (const auto& [m, c] : f.terms()) {
            coeffs_.push_back(c);
            for (std::size_t i = 0; i < n_; ++i) {
                exps_.push_back(m[i]);
                max_e_[i] = std::max(max_e_[i], m[i]);
            }
        }
        offsets_.assign(n_ + 1, 0);
        for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] = offsets_[i] + max_e_[i] + 1;
    }

    std::size_t variables() const noexcept { return n_; }

    Elem operator()(std::span<const Elem> x) const {
        thread_local std::vector<Elem> powers;
        powers.resize(offsets_.back());
        for (std::size_t i = 0; i < n_; ++i) {
            Elem* pw = powers.data() + offsets_[i];
            pw[0] = field_.one();
            for (std::uint32_t e = 1; e <= max_e_[i]; ++e) pw[e] = field_.mul(pw[e - 1], x[i]);
        }
        Elem acc = field_.zero();
        const std::uint32_t* e = exps_.data();
        for (Elem c : coeffs_) {
            Elem t = c;
            for (std::size_t i = 0; i < n_; ++i, ++e) {
                if (*e) t = field_.mul(t, powers[offsets_[i] + *e]);
            }
            acc = field_.add(acc, t);
        }
        return acc;
    }

  private:
    Field field_;
    std::size_t n_;
    std::vector<Elem> coeffs_;
    std::vector<std::uint32_t> exps_;
    std::vector<std::uint32_t> max_e_;
    std::vector<std::size_t> offsets_;
};

/// f = t * quotient + remainder, no monomial of remainder divisible by t.
struct TermFactorization {
    MultiPoly quotient;
    MultiPoly remainder;
};

inline TermFactorization factor_term(const MultiPoly& f, const Monomial& t) {
    if (t.size() != f.variables()) throw InvalidArgument("term has wrong number of variables");
    TermFactorization out{MultiPoly(f.field(), f.variables()), MultiPoly(f.field(), f.variables())};
    for (const auto& [m, c] : f.terms()) {
        if (t.divides(m)) {
            Monomial q = m;
            for (std::size_t i = 0; i < q.size(); ++i) q[i] -= t[i];
            out.quotient.add_term(std::move(q), c);
        } else {
            out.remainder.add_term(m, c);
        }
    }
    return out;
}

struct Degrees {
    std::uint64_t total = 0;
    std::vector<std::uint64_t> per_variable;
    /// max S_p(e) over nonzero terms, per variable
    std::vector<std::uint64_t> digit_sum;
};

inline Degrees degrees(const MultiPoly& f) {
    const std::size_t n = f.variables();
    const std::uint64_t p = f.field().characteristic();
    Degrees d{0, std::vector<std::uint64_t>(n, 0), std::vector<std::uint64_t>(n, 0)};
    for (const auto& [m, c] : f.terms()) {
        d.total = std::max(d.total, m.total_degree());
        for (std::size_t i = 0; i < n; ++i) {
            d.per_variable[i] = std::max<std::uint64_t>(d.per_variable[i], m[i]);
            d.digit_sum[i] = std::max(d.digit_sum[i], digit_sum(m[i], p));
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// Text form
//
//   poly   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := integer | '(' element ')' | 'x' index ['^' exponent]
//
// Extension coefficients are written as polynomials in `a`, e.g.
// `(2*a+1)*x1^3`. Whitespace is insignificant.

/// `x1^4*x2`, or `1` for the constant monomial.
inline std::string format_monomial(const Monomial& m) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += "x" + std::to_string(i + 1);
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

inline std::string format_coefficient(const Field& F, Elem c) {
    if (F.is_prime_field()) return F.format(c);
    const std::string body = F.format(c);
    return "(" + body + ")";
}

/// Canonical text: terms in decreasing graded-lex order joined by ` + `.
inline std::string format(const MultiPoly& f) {
    if (f.is_zero()) return "0";
    std::string s;
    const Field& F = f.field();
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        if (!s.empty()) s += " + ";
        if (m.is_constant()) {
            s += format_coefficient(F, c);
        } else if (c == F.one()) {
            s += format_monomial(m);
        } else {
            s += format_coefficient(F, c) + "*" + format_monomial(m);
        }
    }
    return s;
}

namespace detail {

class PolyParser {
  public:
    PolyParser(std::string_view text, const Field& F, std::size_t n) : t_(text), F_(F), n_(n) {}

    MultiPoly parse() {
        std::vector<std::pair<Monomial, Elem>> terms;
        std::size_t max_var = 0;
        skip();
        if (i_ == t_.size()) throw ParseError("empty polynomial", i_);
        bool first = true;
        while (true) {
            skip();
            bool negative = false;
            if (i_ < t_.size() && (t_[i_] == '+' || t_[i_] == '-')) {
                negative = t_[i_] == '-';
                ++i_;
            } else if (!first) {
                if (i_ < t_.size()) throw ParseError("expected '+' or '-'", i_);
                break;
            }
            first = false;
            auto [exps, coeff] = term(max_var);
            terms.emplace_back(Monomial(std::move(exps)), negative ? F_.neg(coeff) : coeff);
            skip();
            if (i_ == t_.size()) break;
        }
        std::size_t n = n_;
        if (n == 0) n = max_var;
        if (max_var > n) throw ParseError("variable x" + std::to_string(max_var) + " exceeds n = " + std::to_string(n), 0);
        MultiPoly f(F_, n);
        for (auto& [m, c] : terms) {
            m.exps.resize(n, 0);
            f.add_term(std::move(m), c);
        }
        return f;
    }

  private:
    std::pair<std::vector<std::uint32_t>, Elem> term(std::size_t& max_var) {
        std::vector<std::uint32_t> exps;
        Elem coeff = F_.one();
        while (true) {
            skip();
            if (i_ >= t_.size()) throw ParseError("expected a factor", i_);
            const char c = t_[i_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                const std::size_t start = i_;
                while (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_]))) ++i_;
                std::uint64_t v = 0;
                if (!parse_u64(t_.substr(start, i_ - start), v)) throw ParseError("integer too large", start);
                coeff = F_.scale(coeff, v % F_.characteristic());
            } else if (c == '(') {
                const std::size_t start = i_;
                int depth = 0;
                std::size_t j = i_;
                for (; j < t_.size(); ++j) {
                    if (t_[j] == '(') ++depth;
                    if (t_[j] == ')' && --depth == 0) break;
                }
                if (j == t_.size()) throw ParseError("unbalanced parenthesis", start);
                Elem e;
                try {
                    e = F_.parse_element(t_.substr(start + 1, j - start - 1));
                } catch (const ParseError& err) {
                    throw ParseError(std::string("bad coefficient: ") + err.what(), start + 1 + err.position());
                }
                coeff = F_.mul(coeff, e);
                i_ = j + 1;
            } else if (c == 'x') {
                ++i_;
                const std::size_t start = i_;
                while (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_]))) ++i_;
                std::uint64_t idx = 0;
                if (!parse_u64(t_.substr(start, i_ - start), idx) || idx == 0) {
                    throw ParseError("expected variable index >= 1 after 'x'", start);
                }
                std::uint64_t e = 1;
                skip();
                if (i_ < t_.size() && t_[i_] == '^') {
                    ++i_;
                    skip();
                    const std::size_t es = i_;
                    while (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_]))) ++i_;
                    if (!parse_u64(t_.substr(es, i_ - es), e)) throw ParseError("expected exponent", es);
                }
                if (exps.size() < idx) exps.resize(idx, 0);
                exps[idx - 1] += static_cast<std::uint32_t>(e);
                max_var = std::max<std::size_t>(max_var, idx);
            } else if (c == 'a') {
                throw ParseError("extension coefficients must be parenthesized, e.g. (a)", i_);
            } else {
                throw ParseError(std::string("unexpected character '") + c + "'", i_);
            }
            skip();
            if (i_ < t_.size() && t_[i_] == '*') {
                ++i_;
                continue;
            }
            return {std::move(exps), coeff};
        }
    }

    void skip() {
        while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) ++i_;
    }

    std::string_view t_;
    const Field& F_;
    std::size_t n_;
    std::size_t i_ = 0;
};

}  // namespace detail

/// Parses a polynomial over F. With n = 0 the variable count is the largest
/// index used.
inline MultiPoly parse_poly(std::string_view text, const Field& F, std::size_t n = 0) {
    return detail::PolyParser(text, F, n).parse();
}

/// Parses a single monomial such as `x1^2*x3` (coefficient must be 1).
inline Monomial parse_monomial(std::string_view text, const Field& F, std::size_t n = 0) {
    const MultiPoly f = parse_poly(text, F, n);
    if (f.size() != 1 || f.terms().begin()->second != F.one()) {
        throw ParseError("expected a single monomial with coefficient 1", 0);
    }
    return f.terms().begin()->first;
}

/// Deterministic random canonical polynomial: up to term_count distinct
/// monomials with total degree <= max_total_degree and per-variable exponent
/// <= q - 1, each with a nonzero coefficient.
inline MultiPoly random_poly(const Field& F, std::size_t n, std::uint64_t max_total_degree, std::size_t term_count,
                             std::uint64_t seed) {
    Rng rng(seed);
    MultiPoly f(F, n);
    const std::uint64_t q = F.order();
    std::size_t attempts = 0;
    while (f.size() < term_count && attempts < 50 * (term_count + 1)) {
        ++attempts;
        Monomial m(n);
        std::uint64_t budget = rng.below(max_total_degree + 1);
        // spread the degree over random variables
        for (std::uint64_t k = 0; k < budget && n > 0; ++k) {
            const std::size_t v = rng.below(n);
            if (m[v] + 1 < q) ++m[v];
        }
        if (f.coefficient(m) != F.zero()) continue;
        f.add_term(std::move(m), Elem{1 + rng.below(q - 1)});
    }
    return f;
}

/// Uniform random element; nonzero when asked.
inline Elem random_element(const Field& F, Rng& rng, bool nonzero = false) {
    return nonzero ? Elem{1 + rng.below(F.order() - 1)} : Elem{rng.below(F.order())};
}

/**
 * The unique canonical polynomial agreeing with `values` on GF(q)^n.
 *
 * values[idx] is the function value at the point whose i-th coordinate has
 * code (idx / q^i) mod q. Solves the evaluation system V c = values, where V
 * is the n-fold Kronecker power of the q x q Vandermonde matrix
 * V[a][e] = a^e, one axis at a time. Only for q^n <= 2^16.
 */
inline MultiPoly interpolate(const Field& F, std::size_t n, std::span<const Elem> values) {
    const std::uint64_t q = F.order();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        total *= q;
        if (total > (1u << 16)) throw InvalidArgument("interpolation limited to q^n <= 2^16 points");
    }
    if (values.size() != total) throw InvalidArgument("function table has wrong size");
    Matrix vandermonde(q, Row(q));
    for (std::uint64_t a = 0; a < q; ++a) {
        for (std::uint64_t e = 0; e < q; ++e) vandermonde[a][e] = F.pow(Elem{a}, e);
    }
    const auto vinv = inverse(F, vandermonde);
    if (!vinv) throw Error("Vandermonde matrix unexpectedly singular");
    std::vector<Elem> coeffs(values.begin(), values.end());
    std::uint64_t stride = 1;
    std::vector<Elem> line(q), out(q);
    for (std::size_t axis = 0; axis < n; ++axis) {
        for (std::uint64_t base = 0; base < total; ++base) {
            if ((base / stride) % q != 0) continue;
            for (std::uint64_t a = 0; a < q; ++a) line[a] = coeffs[base + a * stride];
            for (std::uint64_t e = 0; e < q; ++e) {
                Elem acc = F.zero();
                for (std::uint64_t a = 0; a < q; ++a) acc = F.add(acc, F.mul((*vinv)[e][a], line[a]));
                out[e] = acc;
            }
            for (std::uint64_t e = 0; e < q; ++e) coeffs[base + e * stride] = out[e];
        }
        stride *= q;
    }
    MultiPoly f(F, n);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        if (F.is_zero(coeffs[idx])) continue;
        Monomial m(n);
        std::uint64_t r = idx;
        for (std::size_t i = 0; i < n; ++i) {
            m[i] = static_cast<std::uint32_t>(r % q);
            r /= q;
        }
        f.add_term(std::move(m), coeffs[idx]);
    }
    return f;
}

/// Tabulates fn over GF(q)^n in the index order used by interpolate().
template <class Fn>
std::vector<Elem> function_table(const Field& F, std::size_t n, Fn&& fn) {
    const std::uint64_t q = F.order();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= q;
    std::vector<Elem> values(total);
    std::vector<Elem> x(n);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t r = idx;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = Elem{r % q};
            r /= q;
        }
        values[idx] = fn(std::span<const Elem>(x));
    }
    return values;
}

}  // namespace fdcube

#endif  // FDCUBE_POLY_HPP
