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

#ifndef FDCUBE_COMBINAT_HPP
#define FDCUBE_COMBINAT_HPP

/**
 * @file combinat.hpp
 * @brief Binomials, multinomials, carries and digit sums modulo a prime.
 *
 * Everything works digit by digit in base p (Lucas' theorem and its
 * multinomial form), so no factorial is ever formed.
 */

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <vector>

#include "error.hpp"
#include "field.hpp"

namespace fdcube {

/// Base-p digits of a, least significant first; empty for a = 0.
inline std::vector<std::uint64_t> base_digits(std::uint64_t a, std::uint64_t p) {
    std::vector<std::uint64_t> d;
    while (a) {
        d.push_back(a % p);
        a /= p;
    }
    return d;
}

/// S_p(a): sum of the base-p digits of a.
inline std::uint64_t digit_sum(std::uint64_t a, std::uint64_t p) {
    std::uint64_t s = 0;
    while (a) {
        s += a % p;
        a /= p;
    }
    return s;
}

/// Total of the carries produced when all parts are added column by column
/// in base p. Equals the exponent of p in the multinomial coefficient of the
/// parts (Kummer).
inline std::uint64_t carry_count(std::span<const std::uint64_t> parts, std::uint64_t p) {
    if (parts.empty()) throw InvalidArgument("carry_count needs at least one part");
    std::vector<std::uint64_t> rest(parts.begin(), parts.end());
    std::uint64_t carry = 0, total = 0;
    bool more = true;
    while (more || carry) {
        more = false;
        std::uint64_t column = carry;
        for (auto& r : rest) {
            column += r % p;
            r /= p;
            more = more || r != 0;
        }
        carry = column / p;
        total += carry;
    }
    return total;
}

/// binom(n, k) mod p for n < p.
inline std::uint64_t small_binomial_mod(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t num = 1, den = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        num = detail::mulmod(num, n - i, p);
        den = detail::mulmod(den, i + 1, p);
    }
    return detail::mulmod(num, detail::inv_mod(den, p), p);
}

/// binom(n, k) mod p by Lucas' theorem.
inline std::uint64_t binomial_mod(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    while (n || k) {
        const std::uint64_t nd = n % p, kd = k % p;
        if (kd > nd) return 0;
        r = detail::mulmod(r, small_binomial_mod(nd, kd, p), p);
        n /= p;
        k /= p;
    }
    return r;
}

/// n! mod p.
inline std::uint64_t factorial_mod(std::uint64_t n, std::uint64_t p) {
    if (n >= p) return 0;
    std::uint64_t r = 1 % p;
    for (std::uint64_t i = 2; i <= n; ++i) r = detail::mulmod(r, i, p);
    return r;
}

/// Multinomial coefficient d! / (k_1! ... k_s!) mod p, digit-wise. It is
/// nonzero exactly when adding the parts in base p produces no carry.
inline std::uint64_t multinomial_mod(std::uint64_t d, std::span<const std::uint64_t> parts, std::uint64_t p) {
    std::uint64_t sum = 0;
    for (auto k : parts) sum += k;
    if (sum != d) throw InvalidArgument("multinomial parts do not sum to d");
    std::vector<std::uint64_t> rest(parts.begin(), parts.end());
    std::uint64_t r = 1 % p;
    while (d) {
        const std::uint64_t dd = d % p;
        std::uint64_t used = 0;
        // digit multinomial as a product of binomials of partial sums
        std::uint64_t remaining = dd;
        for (auto& k : rest) {
            const std::uint64_t kd = k % p;
            k /= p;
            used += kd;
            if (used > dd) return 0;
            r = detail::mulmod(r, small_binomial_mod(remaining, kd, p), p);
            remaining -= kd;
        }
        if (used != dd) return 0;
        d /= p;
    }
    return r;
}

/// An ordered tuple of positive integers (i_1, ..., i_k).
struct Composition {
    std::vector<std::uint64_t> parts;

    std::uint64_t sum() const { return std::accumulate(parts.begin(), parts.end(), std::uint64_t{0}); }
    friend bool operator==(const Composition&, const Composition&) = default;
    friend auto operator<=>(const Composition&, const Composition&) = default;
};

namespace detail {

inline void check_djm(std::uint64_t d, std::uint64_t j, std::uint64_t m) {
    if (!(1 <= m && m <= j && j <= d)) {
        throw InvalidArgument("need 1 <= m <= j <= d, got d=" + std::to_string(d) + " j=" + std::to_string(j) +
                              " m=" + std::to_string(m));
    }
}

}  // namespace detail

/**
 * D(d, j, m) mod p: the sum, over compositions (i_1, ..., i_m) of j into
 * positive parts, of the multinomial binom(d; i_1, ..., i_m, d - j).
 *
 * This is the coefficient of x^(d-j) in the m-th unit-step difference of x^d.
 * Evaluated by peeling one part at a time,
 *   E(r, s) = sum_i binom(d - (j - r), i) E(r - i, s - 1),
 * which is the defining sum with the multinomial split into binomials.
 */
inline std::uint64_t diff_coefficient(std::uint64_t d, std::uint64_t j, std::uint64_t m, std::uint64_t p) {
    detail::check_djm(d, j, m);
    // table[s][r]: s parts still to place, r of j still to distribute
    std::vector<std::vector<std::uint64_t>> table(m + 1, std::vector<std::uint64_t>(j + 1, 0));
    table[0][0] = 1 % p;
    for (std::uint64_t s = 1; s <= m; ++s) {
        for (std::uint64_t r = s; r <= j; ++r) {
            const std::uint64_t avail = d - (j - r);
            std::uint64_t acc = 0;
            for (std::uint64_t i = 1; i + (s - 1) <= r; ++i) {
                const std::uint64_t below = table[s - 1][r - i];
                if (below == 0) continue;
                acc = (acc + detail::mulmod(binomial_mod(avail, i, p), below, p)) % p;
            }
            table[s][r] = acc;
        }
    }
    return table[m][j];
}

/**
 * Visits C_p(d, j, k): the compositions (i_1, ..., i_k) of j whose
 * multinomial binom(d; i_1, ..., i_k, d - j) is nonzero mod p, in
 * lexicographic order.
 *
 * Backtracking over base-p digits: a nonzero multinomial means the digits of
 * the parts add up to the digits of d with no carry, so every part must be
 * digit-wise dominated by what is left of d.
 */
inline void for_each_composition(std::uint64_t d, std::uint64_t j, std::uint64_t k, std::uint64_t p,
                                 const std::function<void(const Composition&)>& visit) {
    detail::check_djm(d, j, k);
    auto dd = base_digits(d, p);
    auto rest_digits = base_digits(d - j, p);
    std::vector<std::uint64_t> budget(dd.size(), 0);
    for (std::size_t i = 0; i < dd.size(); ++i) {
        const std::uint64_t r = i < rest_digits.size() ? rest_digits[i] : 0;
        if (r > dd[i]) return;  // d - j itself carries
        budget[i] = dd[i] - r;
    }
    Composition current;
    current.parts.reserve(k);

    auto value_of = [p](const std::vector<std::uint64_t>& digits) {
        std::uint64_t v = 0;
        for (std::size_t i = digits.size(); i-- > 0;) v = v * p + digits[i];
        return v;
    };

    std::function<void(std::uint64_t)> place = [&](std::uint64_t left) {
        const std::uint64_t remaining_value = value_of(budget);
        if (left == 1) {
            if (remaining_value == 0) return;
            current.parts.push_back(remaining_value);
            visit(current);
            current.parts.pop_back();
            return;
        }
        if (digit_sum(remaining_value, p) < left) return;
        // enumerate parts dominated digit-wise by the budget, in increasing order
        std::vector<std::uint64_t> choice(budget.size(), 0);
        std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>> options;
        while (true) {
            std::size_t i = 0;
            while (i < choice.size() && choice[i] == budget[i]) choice[i++] = 0;
            if (i == choice.size()) break;
            ++choice[i];
            options.emplace_back(value_of(choice), choice);
        }
        std::sort(options.begin(), options.end());
        for (const auto& [value, digits] : options) {
            for (std::size_t i = 0; i < budget.size(); ++i) budget[i] -= digits[i];
            current.parts.push_back(value);
            place(left - 1);
            current.parts.pop_back();
            for (std::size_t i = 0; i < budget.size(); ++i) budget[i] += digits[i];
        }
    };
    place(k);
}

/// C_p(d, j, k) materialized.
inline std::vector<Composition> composition_set(std::uint64_t d, std::uint64_t j, std::uint64_t k, std::uint64_t p) {
    std::vector<Composition> out;
    for_each_composition(d, j, k, p, [&](const Composition& c) { out.push_back(c); });
    return out;
}

/// Upper bound on the degree of x^d after k differentiations over a field of
/// characteristic p, with an explicit identically-zero outcome.
struct DegreeBound {
    bool identically_zero = false;
    std::uint64_t degree = 0;  ///< meaningful only when !identically_zero

    static DegreeBound zero() { return {true, 0}; }
    static DegreeBound at_most(std::uint64_t d) { return {false, d}; }
    friend bool operator==(const DegreeBound&, const DegreeBound&) = default;
};

/**
 * Degree bound after k nonzero-step differentiations of x^d.
 *
 * Write d = (d_u ... d_1 d_0) in base p, take the largest i with
 * d_0 + ... + d_i <= k, lower digit i+1 by the k - (d_0 + ... + d_i)
 * differentiations still unspent and clear digits 0..i. For p = 2 this
 * clears the k lowest one bits.
 *
 * k = S_p(d) leaves a constant (bound 0, possibly zero); k > S_p(d) always
 * yields the zero function.
 */
inline DegreeBound degree_after_diff(std::uint64_t d, std::uint64_t k, std::uint64_t p) {
    if (k == 0) return DegreeBound::at_most(d);
    const std::uint64_t s = digit_sum(d, p);
    if (k > s) return DegreeBound::zero();
    auto digits = base_digits(d, p);
    std::uint64_t prefix = 0;
    std::size_t cleared = 0;  // number of low digits consumed entirely
    while (cleared < digits.size() && prefix + digits[cleared] <= k) {
        prefix += digits[cleared];
        ++cleared;
    }
    for (std::size_t i = 0; i < cleared; ++i) digits[i] = 0;
    if (cleared < digits.size()) digits[cleared] -= k - prefix;
    std::uint64_t out = 0;
    for (std::size_t i = digits.size(); i-- > 0;) out = out * p + digits[i];
    return DegreeBound::at_most(out);
}

}  // namespace fdcube

#endif  // FDCUBE_COMBINAT_HPP
