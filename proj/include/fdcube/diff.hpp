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

#ifndef FDCUBE_DIFF_HPP
#define FDCUBE_DIFF_HPP

/**
 * @file diff.hpp
 * @brief Finite differences Delta_a f(x) = f(x + a) - f(x), symbolic and
 *        black-box.
 *
 * Symbolic routines act on MultiPoly. Black-box routines only evaluate a
 * callable `Elem fn(std::span<const Elem>)` on a grid of shifted points; the
 * callable must be pure.
 *
 * A DiffPlan lists, per variable, the steps h_1..h_k of the repeated
 * differences. Over GF(p) the default steps are all 1; over GF(p^m) they are
 * the basis blocks b_0 (p-1 times), b_1 (p-1 times), ...
 */

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "combinat.hpp"
#include "error.hpp"
#include "field.hpp"
#include "poly.hpp"

namespace fdcube {

/// Steps for differentiating repeatedly w.r.t. one variable.
struct PlanEntry {
    std::size_t var = 0;  ///< 0-based variable index
    std::vector<Elem> steps;

    std::size_t multiplicity() const noexcept { return steps.size(); }
};

/// The first m1 steps of b_0 x (p-1), b_1 x (p-1), ..., b_(m-1) x (p-1).
inline std::vector<Elem> step_sequence_pm(const Field& F, std::uint64_t m1) {
    const std::uint64_t p = F.characteristic();
    if (m1 < 1 || m1 > F.degree() * (p - 1)) {
        throw InvalidArgument("multiplicity " + std::to_string(m1) + " outside 1.." + std::to_string(F.degree() * (p - 1)));
    }
    const auto basis = F.basis();
    std::vector<Elem> h;
    h.reserve(m1);
    for (std::uint64_t i = 0; i < m1; ++i) h.push_back(basis[i / (p - 1)]);
    return h;
}

class DiffPlan {
  public:
    DiffPlan() = default;
    explicit DiffPlan(std::vector<PlanEntry> entries) : entries_(std::move(entries)) {}

    /// The plan t = prod x_i^(m_i) with the field's default steps.
    static DiffPlan from_term(const Field& F, const Monomial& t) {
        DiffPlan plan;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] == 0) continue;
            std::vector<Elem> steps;
            if (F.is_prime_field()) {
                steps.assign(t[i], F.one());
            } else {
                steps = step_sequence_pm(F, t[i]);
            }
            plan.entries_.push_back({i, std::move(steps)});
        }
        return plan;
    }

    /// The plan for t with explicit steps, listed variable by variable in
    /// increasing index order.
    static DiffPlan from_term(const Monomial& t, std::span<const Elem> steps) {
        DiffPlan plan;
        std::size_t k = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] == 0) continue;
            if (k + t[i] > steps.size()) throw InvalidArgument("fewer steps than the plan's total multiplicity");
            plan.entries_.push_back({i, std::vector<Elem>(steps.begin() + static_cast<std::ptrdiff_t>(k),
                                                           steps.begin() + static_cast<std::ptrdiff_t>(k + t[i]))});
            k += t[i];
        }
        if (k != steps.size()) throw InvalidArgument("more steps than the plan's total multiplicity");
        return plan;
    }

    const std::vector<PlanEntry>& entries() const noexcept { return entries_; }
    std::vector<PlanEntry>& entries() noexcept { return entries_; }

    std::uint64_t total_multiplicity() const {
        std::uint64_t s = 0;
        for (const auto& e : entries_) s += e.multiplicity();
        return s;
    }

    Monomial term(std::size_t n) const {
        Monomial t(n);
        for (const auto& e : entries_) t[e.var] = static_cast<std::uint32_t>(e.multiplicity());
        return t;
    }

    bool unit_steps(const Field& F) const {
        for (const auto& e : entries_) {
            for (auto h : e.steps) {
                if (h != F.one()) return false;
            }
        }
        return true;
    }

    /// Throws InvalidArgument unless the plan is usable over F with n
    /// variables: distinct variables, nonzero steps, m_i <= p-1 over GF(p)
    /// and m_i <= m(p-1) over GF(p^m).
    void validate(const Field& F, std::size_t n) const {
        std::vector<bool> seen(n, false);
        const std::uint64_t cap = F.degree() * (F.characteristic() - 1);
        for (const auto& e : entries_) {
            if (e.var >= n) throw InvalidArgument("plan variable x" + std::to_string(e.var + 1) + " out of range");
            if (seen[e.var]) throw InvalidArgument("plan repeats variable x" + std::to_string(e.var + 1));
            seen[e.var] = true;
            if (e.steps.empty()) throw InvalidArgument("plan entry without steps");
            if (e.multiplicity() > cap) {
                throw InvalidArgument("multiplicity " + std::to_string(e.multiplicity()) + " for x" + std::to_string(e.var + 1) +
                                      " exceeds " + std::to_string(cap));
            }
            for (auto h : e.steps) {
                F.check(h);
                if (F.is_zero(h)) throw InvalidArgument("difference step must be nonzero");
            }
        }
    }

  private:
    std::vector<PlanEntry> entries_;
};

// ---------------------------------------------------------------------------
// Symbolic differences

/// f(x + a) as a canonical polynomial, by binomial expansion of each
/// shifted variable.
inline MultiPoly shift(const MultiPoly& f, std::span<const Elem> a) {
    const std::size_t n = f.variables();
    if (a.size() != n) throw InvalidArgument("shift vector has wrong dimension");
    const Field& F = f.field();
    const std::uint64_t p = F.characteristic();
    MultiPoly out(F, n);
    std::vector<std::pair<Monomial, Elem>> partial, next;
    for (const auto& [m, c] : f.terms()) {
        partial.assign(1, {m, c});
        for (std::size_t i = 0; i < n; ++i) {
            if (F.is_zero(a[i]) || m[i] == 0) continue;
            next.clear();
            const std::uint32_t e = m[i];
            // (x_i + a_i)^e = sum_k binom(e, k) a_i^(e-k) x_i^k
            std::vector<Elem> apow(e + 1);
            apow[0] = F.one();
            for (std::uint32_t k = 1; k <= e; ++k) apow[k] = F.mul(apow[k - 1], a[i]);
            for (const auto& [pm, pc] : partial) {
                for (std::uint32_t k = 0; k <= e; ++k) {
                    const std::uint64_t b = binomial_mod(e, k, p);
                    if (b == 0) continue;
                    Monomial mm = pm;
                    mm[i] = k;
                    next.emplace_back(std::move(mm), F.mul(pc, F.scale(apow[e - k], b)));
                }
            }
            partial.swap(next);
        }
        for (auto& [pm, pc] : partial) out.add_term(std::move(pm), pc);
    }
    return out;
}

/// Delta_a f = f(x + a) - f(x). a must be nonzero.
inline MultiPoly delta(const MultiPoly& f, std::span<const Elem> a) {
    if (std::all_of(a.begin(), a.end(), [&](Elem v) { return f.field().is_zero(v); })) {
        throw InvalidArgument("difference vector must be nonzero");
    }
    return shift(f, a) - f;
}

/// Delta along h * e_var.
inline MultiPoly delta_along(const MultiPoly& f, std::size_t var, Elem h) {
    std::vector<Elem> a(f.variables(), f.field().zero());
    if (var >= a.size()) throw InvalidArgument("variable index out of range");
    a[var] = h;
    return delta(f, a);
}

/// Applies every step of the plan, in the listed order.
inline MultiPoly delta_plan(const MultiPoly& f, const DiffPlan& plan) {
    plan.validate(f.field(), f.variables());
    MultiPoly g = f;
    for (const auto& e : plan.entries()) {
        for (auto h : e.steps) {
            if (g.is_zero()) return g;
            g = delta_along(g, e.var, h);
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Black-box differences

/// One grid point of a unit-step plan over GF(p): offsets j_l in 0..m_l,
/// sign (-1)^(sum(m_l - j_l)) and weight prod binom(m_l, j_l) mod p.
struct GridPoint {
    std::vector<std::uint64_t> offsets;
    int sign = 1;
    std::uint64_t weight = 1;
};

/// The prod(m_l + 1) signed, weighted points of a unit-step plan over GF(p).
inline std::vector<GridPoint> grid_weights(const Field& F, const DiffPlan& plan) {
    const std::uint64_t p = F.characteristic();
    for (const auto& e : plan.entries()) {
        if (e.multiplicity() >= p) throw InvalidArgument("unit-step grid needs every multiplicity below p");
    }
    std::vector<GridPoint> grid(1);
    for (const auto& e : plan.entries()) {
        const std::uint64_t m = e.multiplicity();
        std::vector<GridPoint> next;
        next.reserve(grid.size() * (m + 1));
        for (const auto& g : grid) {
            for (std::uint64_t j = 0; j <= m; ++j) {
                GridPoint h = g;
                h.offsets.push_back(j);
                if ((m - j) % 2 == 1) h.sign = -h.sign;
                h.weight = detail::mulmod(h.weight, binomial_mod(m, j, p), p);
                next.push_back(std::move(h));
            }
        }
        grid = std::move(next);
    }
    return grid;
}

/// Offsets and signed weights for repeated differences along one variable:
/// the expansion of prod_k (S_{h_k} - 1), S_h being the shift by h. Offsets
/// whose weight cancels to zero are dropped.
struct Stencil {
    std::vector<Elem> offsets;
    std::vector<Elem> weights;  ///< in the prime subfield, sign included
};

inline Stencil stencil_for(const Field& F, std::span<const Elem> steps) {
    std::map<Elem, Elem> acc{{F.zero(), F.one()}};
    for (auto h : steps) {
        std::map<Elem, Elem> next;
        for (const auto& [off, w] : acc) {
            auto& shifted = next[F.add(off, h)];
            shifted = F.add(shifted, w);
            auto& same = next[off];
            same = F.sub(same, w);
        }
        acc.clear();
        for (const auto& [off, w] : next) {
            if (!F.is_zero(w)) acc.emplace(off, w);
        }
    }
    Stencil s;
    for (const auto& [off, w] : acc) {
        s.offsets.push_back(off);
        s.weights.push_back(w);
    }
    return s;
}

/**
 * A plan expanded into its full evaluation grid with precomputed weights.
 *
 * evaluate() returns sum_w weight * fn(base + offset) and calls fn exactly
 * size() times: prod(m_l + 1) for unit steps over GF(p), p^q (r + 1) per
 * variable for the basis-block steps over GF(p^m).
 */
class DiffGrid {
  public:
    DiffGrid(Field F, const DiffPlan& plan, std::size_t n) : field_(std::move(F)), n_(n) {
        plan.validate(field_, n);
        points_.push_back({});
        weights_.push_back(field_.one());
        for (const auto& e : plan.entries()) {
            vars_.push_back(e.var);
            const Stencil st = stencil_for(field_, e.steps);
            std::vector<std::vector<Elem>> np;
            std::vector<Elem> nw;
            for (std::size_t g = 0; g < points_.size(); ++g) {
                for (std::size_t s = 0; s < st.offsets.size(); ++s) {
                    auto pt = points_[g];
                    pt.push_back(st.offsets[s]);
                    np.push_back(std::move(pt));
                    nw.push_back(field_.mul(weights_[g], st.weights[s]));
                }
            }
            points_ = std::move(np);
            weights_ = std::move(nw);
        }
    }

    std::size_t size() const noexcept { return points_.size(); }
    const std::vector<std::size_t>& variables() const noexcept { return vars_; }

    template <class Fn>
    Elem evaluate(Fn&& fn, std::span<const Elem> base) const {
        if (base.size() != n_) throw InvalidArgument("base point has wrong dimension");
        std::vector<Elem> x(base.begin(), base.end());
        Elem acc = field_.zero();
        for (std::size_t g = 0; g < points_.size(); ++g) {
            for (std::size_t k = 0; k < vars_.size(); ++k) x[vars_[k]] = field_.add(base[vars_[k]], points_[g][k]);
            acc = field_.add(acc, field_.mul(weights_[g], fn(std::span<const Elem>(x))));
        }
        return acc;
    }

  private:
    Field field_;
    std::size_t n_;
    std::vector<std::size_t> vars_;
    std::vector<std::vector<Elem>> points_;
    std::vector<Elem> weights_;
};

/// f_t at `base` for a black box, using the plan's grid.
template <class Fn>
Elem blackbox_diff(Fn&& fn, const Field& F, const DiffPlan& plan, std::span<const Elem> base) {
    return DiffGrid(F, plan, base.size()).evaluate(fn, base);
}

/**
 * m1-fold difference along x_var over GF(p^m) with the basis-block steps,
 * summed directly over the offsets a_0 b_0 + ... + a_q b_q where
 * m1 = q(p-1) + r with 1 <= r <= p-1, a_i in 0..p-1 for i < q and
 * a_q in 0..r, weighted by (-1)^(m1 - sum a) binom(p-1, a_0) ... binom(r, a_q).
 */
template <class Fn>
Elem blackbox_diff_pm(Fn&& fn, const Field& F, std::size_t var, std::uint64_t m1, std::span<const Elem> base) {
    const std::uint64_t p = F.characteristic();
    if (m1 < 1 || m1 > F.degree() * (p - 1)) throw InvalidArgument("multiplicity outside 1..m(p-1)");
    if (var >= base.size()) throw InvalidArgument("variable index out of range");
    const std::uint64_t q = (m1 - 1) / (p - 1);
    const std::uint64_t r = m1 - q * (p - 1);
    const auto basis = F.basis();
    std::vector<std::uint64_t> a(q + 1, 0);
    std::vector<Elem> x(base.begin(), base.end());
    Elem acc = F.zero();
    while (true) {
        Elem offset = F.zero();
        std::uint64_t weight = 1, used = 0;
        for (std::uint64_t i = 0; i <= q; ++i) {
            offset = F.add(offset, F.scale(basis[i], a[i]));
            weight = detail::mulmod(weight, binomial_mod(i < q ? p - 1 : r, a[i], p), p);
            used += a[i];
        }
        x[var] = F.add(base[var], offset);
        Elem term = F.scale(fn(std::span<const Elem>(x)), weight);
        acc = (m1 - used) % 2 == 0 ? F.add(acc, term) : F.sub(acc, term);
        std::uint64_t i = 0;
        while (i <= q && a[i] == (i < q ? p - 1 : r)) a[i++] = 0;
        if (i > q) break;
        ++a[i];
    }
    return acc;
}

/// Delta_{a_1} ... Delta_{a_k} f at base, as the 2^k-term signed subset sum.
template <class Fn>
Elem inclusion_exclusion(Fn&& fn, const Field& F, const std::vector<std::vector<Elem>>& directions,
                         std::span<const Elem> base) {
    const std::size_t k = directions.size();
    if (k >= 31) throw InvalidArgument("too many directions for a subset sum");
    for (const auto& a : directions) {
        if (a.size() != base.size()) throw InvalidArgument("direction has wrong dimension");
        if (std::all_of(a.begin(), a.end(), [&](Elem v) { return F.is_zero(v); })) {
            throw InvalidArgument("difference vector must be nonzero");
        }
    }
    std::vector<Elem> x(base.size());
    Elem acc = F.zero();
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        std::copy(base.begin(), base.end(), x.begin());
        for (std::size_t i = 0; i < k; ++i) {
            if (!(mask >> i & 1)) continue;
            for (std::size_t c = 0; c < x.size(); ++c) x[c] = F.add(x[c], directions[i][c]);
        }
        const Elem v = fn(std::span<const Elem>(x));
        const bool negative = (k - static_cast<std::size_t>(std::popcount(mask))) % 2 == 1;
        acc = negative ? F.sub(acc, v) : F.add(acc, v);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Closed-form constants

/// One cube-variable term t_i of f_S(t) with its cofactor g_i and constant c_i.
struct FundamentalTerm {
    Monomial cube_part;  ///< t_i, exponents only on the differentiated variables
    MultiPoly cofactor;  ///< g_i, free of the differentiated variables
    Elem constant;       ///< c_i
};

/**
 * Splits f_S(t) = sum_i t_i g_i by the cube variables of t and attaches
 * c_i = prod_l D(m_l + e_l, m_l + e_l, m_l) where t_i = prod x_l^(e_l), so
 * that f_t evaluated with the cube variables at 0 equals sum_i c_i g_i.
 * Unit steps over GF(p) only.
 */
inline std::vector<FundamentalTerm> fundamental_constants(const Monomial& t, const MultiPoly& quotient) {
    const Field& F = quotient.field();
    if (!F.is_prime_field()) throw InvalidArgument("fundamental constants are defined for unit steps over GF(p)");
    const std::uint64_t p = F.characteristic();
    const std::size_t n = quotient.variables();
    std::map<Monomial, MultiPoly, GrlexLess> groups;
    for (const auto& [m, c] : quotient.terms()) {
        Monomial cube(n), rest = m;
        for (std::size_t i = 0; i < n; ++i) {
            if (t[i] == 0) continue;
            cube[i] = m[i];
            rest[i] = 0;
        }
        auto it = groups.try_emplace(cube, F, n).first;
        it->second.add_term(std::move(rest), c);
    }
    std::vector<FundamentalTerm> out;
    for (auto& [cube, g] : groups) {
        std::uint64_t c = 1 % p;
        for (std::size_t i = 0; i < n; ++i) {
            if (t[i] == 0) continue;
            const std::uint64_t d = t[i] + cube[i];
            c = detail::mulmod(c, diff_coefficient(d, d, t[i], p), p);
        }
        out.push_back({cube, std::move(g), F.from_int(static_cast<std::int64_t>(c))});
    }
    return out;
}

/// sum_i c_i g_i from fundamental_constants().
inline MultiPoly fundamental_sum(const std::vector<FundamentalTerm>& terms, const Field& F, std::size_t n) {
    MultiPoly s(F, n);
    for (const auto& ft : terms) s += ft.cofactor.scaled(ft.constant);
    return s;
}

/**
 * c_j for one variable over GF(p^m): the sum over C_p(j, j, m1) of
 * binom(j; i_1, ..., i_m1, 0) h_1^(i_1) ... h_m1^(i_m1). It is the factor
 * multiplying g_j (the coefficient of x^j) in f_t with x set to 0.
 * Zero when S_p(j) < m1 (no carry-free split into m1 positive parts).
 */
inline Elem pm_constant(const Field& F, std::uint64_t j, std::span<const Elem> h) {
    const std::uint64_t m1 = h.size();
    const std::uint64_t p = F.characteristic();
    if (m1 == 0) return j == 0 ? F.one() : F.zero();
    if (j < m1 || digit_sum(j, p) < m1) return F.zero();
    Elem acc = F.zero();
    std::vector<std::uint64_t> parts;
    for_each_composition(j, j, m1, p, [&](const Composition& c) {
        parts = c.parts;
        parts.push_back(0);
        Elem term = F.from_int(static_cast<std::int64_t>(multinomial_mod(j, parts, p)));
        for (std::size_t l = 0; l < m1; ++l) term = F.mul(term, F.pow(h[l], c.parts[l]));
        acc = F.add(acc, term);
    });
    return acc;
}

/// f_t(0, x_2, ...) for t = x_var^(h.size()), as sum_j c_j g_j.
inline MultiPoly pm_restricted_sum(const MultiPoly& f, std::size_t var, std::span<const Elem> h) {
    const Field& F = f.field();
    MultiPoly out(F, f.variables());
    std::map<std::uint32_t, Elem> cache;
    for (const auto& [m, c] : f.terms()) {
        const std::uint32_t j = m[var];
        auto it = cache.find(j);
        if (it == cache.end()) it = cache.emplace(j, pm_constant(F, j, h)).first;
        if (F.is_zero(it->second)) continue;
        Monomial rest = m;
        rest[var] = 0;
        out.add_term(std::move(rest), F.mul(c, it->second));
    }
    return out;
}

/**
 * A univariate f with digit-sum degree m1 whose m1-fold difference with the
 * basis-block steps is the nonzero constant (-1)^m1 f(0): the product of (x - a)
 * over the nonzero offsets a of the difference grid.
 */
inline MultiPoly noncollapse_witness(const Field& F, std::uint64_t m1) {
    const std::uint64_t p = F.characteristic();
    if (m1 < 1 || m1 > F.degree() * (p - 1)) throw InvalidArgument("multiplicity outside 1..m(p-1)");
    const std::uint64_t q = (m1 - 1) / (p - 1);
    const std::uint64_t r = m1 - q * (p - 1);
    const auto basis = F.basis();
    const MultiPoly x = MultiPoly::variable(F, 1, 0);
    MultiPoly f = MultiPoly::constant(F, 1, F.one());
    std::vector<std::uint64_t> a(q + 1, 0);
    while (true) {
        std::uint64_t i = 0;
        while (i <= q && a[i] == (i < q ? p - 1 : r)) a[i++] = 0;
        if (i > q) break;
        ++a[i];
        Elem root = F.zero();
        for (std::uint64_t k = 0; k <= q; ++k) root = F.add(root, F.scale(basis[k], a[k]));
        f = f * (x - MultiPoly::constant(F, 1, root));
    }
    return f;
}

}  // namespace fdcube

#endif  // FDCUBE_DIFF_HPP
