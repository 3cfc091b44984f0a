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

#ifndef FDCUBE_FIELD_HPP
#define FDCUBE_FIELD_HPP

/**
 * @file field.hpp
 * @brief Exact arithmetic in GF(p) and GF(p^m).
 *
 * GF(p^m) is represented as GF(p)[a]/(g) for a monic irreducible g of degree
 * m, so every element has m coordinates in the basis 1, a, ..., a^(m-1).
 * The coordinates are packed into a single integer code
 *
 *     code = c_0 + c_1 p + ... + c_(m-1) p^(m-1),
 *
 * which makes elements trivially comparable, hashable and enumerable as
 * 0 .. q-1. For m = 1 the code is the residue itself.
 *
 * Limits: p < 2^32 and q = p^m < 2^62. Fields with q <= 256 get full addition
 * and multiplication tables.
 */

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "error.hpp"

namespace fdcube {

/// Field element, meaningful only together with the Field that produced it.
struct Elem {
    std::uint64_t code = 0;

    friend constexpr bool operator==(Elem, Elem) = default;
    friend constexpr auto operator<=>(Elem, Elem) = default;
};

namespace detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % small == 0) return n == small;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline u64 inv_mod(u64 a, u64 p) {
    // extended Euclid on integers
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
    if (new_r == 0) throw DomainError("inverse of zero");
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        std::tie(t, new_t) = std::pair{new_t, t - q * new_t};
        std::tie(r, new_r) = std::pair{new_r, r - q * new_r};
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<u64>(t);
}

// Dense univariate polynomials over GF(p), lowest coefficient first.
using Coeffs = std::vector<u64>;

inline void trim(Coeffs& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Coeffs poly_rem(Coeffs a, const Coeffs& b, u64 p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    const u64 lead_inv = inv_mod(b.back(), p);
    while (a.size() > db && !a.empty()) {
        const u64 factor = mulmod(a.back(), lead_inv, p);
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) {
            a[shift + i] = (a[shift + i] + p - mulmod(factor, b[i], p)) % p;
        }
        trim(a);
    }
    return a;
}

inline Coeffs poly_mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& mod, u64 p) {
    if (a.empty() || b.empty()) return {};
    Coeffs r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    }
    return poly_rem(std::move(r), mod, p);
}

inline Coeffs poly_powmod(Coeffs base, u64 e, const Coeffs& mod, u64 p) {
    Coeffs r{1};
    base = poly_rem(std::move(base), mod, p);
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, mod, p);
        base = poly_mulmod(base, base, mod, p);
        e >>= 1;
    }
    return r;
}

inline Coeffs poly_gcd(Coeffs a, Coeffs b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Coeffs r = poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Rabin's test: g of degree m is irreducible over GF(p) iff x^(p^m) = x mod g
/// and gcd(x^(p^(m/r)) - x, g) = 1 for every prime r dividing m.
inline bool is_irreducible(const Coeffs& g, u64 p) {
    const std::size_t m = g.size() - 1;
    if (m == 0) return false;
    if (m == 1) return true;
    // x^(p^k) mod g for k = 1..m by repeated p-th powering
    std::vector<Coeffs> frob(m + 1);
    frob[0] = poly_rem(Coeffs{0, 1}, g, p);
    for (std::size_t k = 1; k <= m; ++k) frob[k] = poly_powmod(frob[k - 1], p, g, p);
    auto minus_x = [&](Coeffs c) {
        if (c.size() < 2) c.resize(2, 0);
        c[1] = (c[1] + p - 1) % p;
        trim(c);
        return c;
    };
    if (!minus_x(frob[m]).empty()) return false;
    std::size_t rest = m;
    for (std::size_t r = 2; r <= rest; ++r) {
        if (rest % r != 0) continue;
        while (rest % r == 0) rest /= r;
        const Coeffs gg = poly_gcd(minus_x(frob[m / r]), g, p);
        if (gg.size() != 1) return false;
    }
    return true;
}

}  // namespace detail

/**
 * A finite field GF(p^m) with a fixed monic modulus.
 *
 * Cheap to copy (shared immutable state). Two Field objects compare equal iff
 * they have the same p, m and modulus.
 */
class Field {
  public:
    static constexpr unsigned kMaxDegree = 16;

    /// GF(p). Throws InvalidArgument unless p is a prime below 2^32.
    static Field prime(std::uint64_t p) { return Field(p, {0, 1}); }

    /// GF(p^m) from modulus coefficients given most significant first
    /// (c_m, ..., c_0), as in the text form. The modulus must be monic and
    /// irreducible.
    static Field extension(std::uint64_t p, std::span<const std::uint64_t> modulus_msf) {
        if (modulus_msf.size() < 2) throw InvalidArgument("modulus must have degree >= 1");
        detail::Coeffs low(modulus_msf.rbegin(), modulus_msf.rend());
        return Field(p, std::move(low));
    }

    /// GF(p^m) with the shipped modulus; available for 4, 8, 9, 27, 16, 25,
    /// 49 and for every prime field (m = 1).
    static Field with_default_modulus(std::uint64_t p, unsigned m) {
        if (m == 1) return prime(p);
        const auto* mod = default_modulus(p, m);
        if (mod == nullptr) {
            throw InvalidArgument("no shipped modulus for " + std::to_string(p) + "^" + std::to_string(m) +
                                  "; give one as p^m/c_m,...,c_0");
        }
        return extension(p, *mod);
    }

    /// Parses `p`, a prime power `q` or `p^m` (shipped modulus), or `p^m/c_m,...,c_0`.
    static Field parse(std::string_view text);

    std::uint64_t characteristic() const noexcept { return d_->p; }
    unsigned degree() const noexcept { return d_->m; }
    std::uint64_t order() const noexcept { return d_->q; }
    bool is_prime_field() const noexcept { return d_->m == 1; }

    /// Modulus coefficients, lowest first; size degree()+1, monic.
    const std::vector<std::uint64_t>& modulus() const noexcept { return d_->modulus; }

    /// Canonical text form: `p` or `p^m/c_m,...,c_0`.
    std::string spec_text() const {
        std::string s = std::to_string(d_->p);
        if (d_->m == 1) return s;
        s += "^" + std::to_string(d_->m) + "/";
        for (std::size_t i = d_->modulus.size(); i-- > 0;) {
            s += std::to_string(d_->modulus[i]);
            if (i != 0) s += ",";
        }
        return s;
    }

    friend bool operator==(const Field& a, const Field& b) {
        return a.d_ == b.d_ || (a.d_->p == b.d_->p && a.d_->modulus == b.d_->modulus);
    }

    bool contains(Elem a) const noexcept { return a.code < d_->q; }

    /// Throws InvalidArgument if a is not a valid code for this field.
    void check(Elem a) const {
        if (!contains(a)) throw InvalidArgument("element code " + std::to_string(a.code) + " not in GF(" + std::to_string(d_->q) + ")");
    }

    Elem zero() const noexcept { return Elem{0}; }
    Elem one() const noexcept { return Elem{1}; }

    /// Image of an integer under Z -> GF(p) -> GF(p^m).
    Elem from_int(std::int64_t v) const noexcept {
        const auto p = static_cast<std::int64_t>(d_->p);
        std::int64_t r = v % p;
        if (r < 0) r += p;
        return Elem{static_cast<std::uint64_t>(r)};
    }

    /// Element with the given coordinates in the basis 1, a, ..., a^(m-1).
    /// Missing trailing coordinates are zero; each coordinate must be < p.
    Elem from_coords(std::span<const std::uint64_t> coords) const {
        if (coords.size() > d_->m) throw InvalidArgument("too many coordinates for field");
        std::uint64_t code = 0;
        for (std::size_t i = coords.size(); i-- > 0;) {
            if (coords[i] >= d_->p) throw InvalidArgument("coordinate not reduced modulo p");
            code = code * d_->p + coords[i];
        }
        return Elem{code};
    }

    std::vector<std::uint64_t> coords(Elem a) const {
        std::vector<std::uint64_t> c(d_->m);
        for (unsigned i = 0; i < d_->m; ++i) {
            c[i] = a.code % d_->p;
            a.code /= d_->p;
        }
        return c;
    }

    std::uint64_t coord(Elem a, unsigned i) const { return a.code / d_->ppow[i] % d_->p; }

    /// The adjoined root a of the modulus (equals 0 - c_0 for m = 1).
    Elem generator() const {
        if (d_->m == 1) return neg(Elem{d_->modulus[0]});
        return Elem{d_->p};
    }

    /// Polynomial basis 1, a, ..., a^(m-1).
    std::vector<Elem> basis() const {
        std::vector<Elem> b;
        b.reserve(d_->m);
        for (unsigned i = 0; i < d_->m; ++i) b.push_back(Elem{d_->ppow[i]});
        return b;
    }

    Elem add(Elem a, Elem b) const {
        if (d_->m == 1) {
            const std::uint64_t s = a.code + b.code;
            return Elem{s >= d_->p ? s - d_->p : s};
        }
        if (!d_->add_table.empty()) return Elem{d_->add_table[a.code * d_->q + b.code]};
        std::uint64_t code = 0;
        for (unsigned i = d_->m; i-- > 0;) {
            const std::uint64_t s = coord(a, i) + coord(b, i);
            code = code * d_->p + (s >= d_->p ? s - d_->p : s);
        }
        return Elem{code};
    }

    Elem neg(Elem a) const {
        if (d_->m == 1) return Elem{a.code == 0 ? 0 : d_->p - a.code};
        std::uint64_t code = 0;
        for (unsigned i = d_->m; i-- > 0;) {
            const std::uint64_t c = coord(a, i);
            code = code * d_->p + (c == 0 ? 0 : d_->p - c);
        }
        return Elem{code};
    }

    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const {
        if (d_->m == 1) return Elem{a.code * b.code % d_->p};
        if (!d_->mul_table.empty()) return Elem{d_->mul_table[a.code * d_->q + b.code]};
        return mul_slow(a, b);
    }

    /// Multiplication by the prime-field integer k (taken mod p).
    Elem scale(Elem a, std::uint64_t k) const {
        k %= d_->p;
        if (d_->m == 1) return Elem{a.code * k % d_->p};
        std::uint64_t code = 0;
        for (unsigned i = d_->m; i-- > 0;) code = code * d_->p + coord(a, i) * k % d_->p;
        return Elem{code};
    }

    /// Square and multiply; pow(x, 0) = 1 including x = 0.
    Elem pow(Elem a, std::uint64_t e) const {
        Elem r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    /// Multiplicative inverse by the extended Euclidean algorithm (on
    /// integers for m = 1, on polynomials over GF(p) otherwise).
    Elem inv(Elem a) const {
        if (a.code == 0) throw DomainError("inverse of zero");
        if (d_->m == 1) return Elem{detail::inv_mod(a.code, d_->p)};
        return inv_poly(a);
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    bool is_zero(Elem a) const noexcept { return a.code == 0; }

    /// Text form of an element: a decimal residue for prime fields, a
    /// polynomial in `a` such as `2*a+1` for extensions.
    std::string format(Elem x) const {
        if (d_->m == 1) return std::to_string(x.code);
        if (x.code == 0) return "0";
        std::string s;
        for (unsigned i = d_->m; i-- > 0;) {
            const std::uint64_t c = coord(x, i);
            if (c == 0) continue;
            if (!s.empty()) s += "+";
            if (i == 0) {
                s += std::to_string(c);
                continue;
            }
            if (c != 1) s += std::to_string(c) + "*";
            s += "a";
            if (i > 1) s += "^" + std::to_string(i);
        }
        return s;
    }

    /// Parses an element: an integer (reduced mod p) or, for extensions, a
    /// polynomial in `a` with integer coefficients, optionally parenthesized.
    /// Offsets in ParseError are relative to `text`.
    Elem parse_element(std::string_view text) const;

  private:
    struct Data {
        std::uint64_t p = 0;
        unsigned m = 0;
        std::uint64_t q = 0;
        std::vector<std::uint64_t> modulus;
        std::array<std::uint64_t, kMaxDegree + 1> ppow{};
        std::vector<std::uint16_t> add_table;
        std::vector<std::uint16_t> mul_table;
    };

    Field(std::uint64_t p, detail::Coeffs modulus_low) {
        if (p >= (1ULL << 32) || !detail::is_prime(p)) {
            throw InvalidArgument("field characteristic " + std::to_string(p) + " is not a prime below 2^32");
        }
        const std::size_t m = modulus_low.size() - 1;
        if (m > kMaxDegree) throw InvalidArgument("extension degree above " + std::to_string(kMaxDegree));
        for (auto c : modulus_low) {
            if (c >= p) throw InvalidArgument("modulus coefficient not reduced modulo p");
        }
        if (modulus_low.back() != 1) throw InvalidArgument("modulus must be monic");
        auto d = std::make_shared<Data>();
        d->p = p;
        d->m = static_cast<unsigned>(m);
        d->ppow[0] = 1;
        for (std::size_t i = 1; i <= m; ++i) {
            if (d->ppow[i - 1] > (1ULL << 62) / p) throw InvalidArgument("field order exceeds 2^62");
            d->ppow[i] = d->ppow[i - 1] * p;
        }
        d->q = d->ppow[m];
        if (m == 1) {
            // GF(p) is always represented by the modulus x.
            modulus_low = {0, 1};
        } else if (!detail::is_irreducible(modulus_low, p)) {
            throw InvalidArgument("modulus is reducible over GF(" + std::to_string(p) + ")");
        }
        d->modulus = std::move(modulus_low);
        d_ = d;
        if (m > 1 && d->q <= 256) build_tables(*d);
    }

    static const std::vector<std::uint64_t>* default_modulus(std::uint64_t p, unsigned m) {
        // most significant first
        static const std::vector<std::uint64_t> gf4{1, 1, 1};      // x^2+x+1
        static const std::vector<std::uint64_t> gf8{1, 0, 1, 1};   // x^3+x+1
        static const std::vector<std::uint64_t> gf16{1, 0, 0, 1, 1};  // x^4+x+1
        static const std::vector<std::uint64_t> gf9{1, 2, 2};      // x^2-x-1, so a^2 = a+1
        static const std::vector<std::uint64_t> gf27{1, 0, 2, 1};  // x^3+2x+1
        static const std::vector<std::uint64_t> gf25{1, 1, 2};     // x^2+x+2
        static const std::vector<std::uint64_t> gf49{1, 1, 3};     // x^2+x+3
        if (p == 2 && m == 2) return &gf4;
        if (p == 2 && m == 3) return &gf8;
        if (p == 2 && m == 4) return &gf16;
        if (p == 3 && m == 2) return &gf9;
        if (p == 3 && m == 3) return &gf27;
        if (p == 5 && m == 2) return &gf25;
        if (p == 7 && m == 2) return &gf49;
        return nullptr;
    }

    Elem mul_slow(Elem a, Elem b) const {
        const unsigned m = d_->m;
        const std::uint64_t p = d_->p;
        std::array<std::uint64_t, 2 * kMaxDegree> prod{};
        std::array<std::uint64_t, kMaxDegree> ca{}, cb{};
        for (unsigned i = 0; i < m; ++i) {
            ca[i] = coord(a, i);
            cb[i] = coord(b, i);
        }
        for (unsigned i = 0; i < m; ++i) {
            if (ca[i] == 0) continue;
            for (unsigned j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + detail::mulmod(ca[i], cb[j], p)) % p;
        }
        // x^m = -(c_0 + ... + c_(m-1) x^(m-1))
        for (unsigned k = 2 * m - 1; k-- > m;) {
            const std::uint64_t top = prod[k];
            if (top == 0) continue;
            prod[k] = 0;
            for (unsigned i = 0; i < m; ++i) {
                prod[k - m + i] = (prod[k - m + i] + p - detail::mulmod(top, d_->modulus[i], p)) % p;
            }
        }
        std::uint64_t code = 0;
        for (unsigned i = m; i-- > 0;) code = code * p + prod[i];
        return Elem{code};
    }

    Elem inv_poly(Elem a) const {
        using detail::Coeffs;
        const std::uint64_t p = d_->p;
        Coeffs r0 = d_->modulus;
        Coeffs r1 = coords(a);
        detail::trim(r1);
        Coeffs s0{}, s1{1};
        // invariant: s_i * a = r_i  (mod modulus)
        while (r1.size() > 1) {
            // polynomial long division r0 = qt * r1 + rem
            Coeffs rem = r0;
            Coeffs qt(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 1, 0);
            const std::uint64_t lead_inv = detail::inv_mod(r1.back(), p);
            while (rem.size() >= r1.size()) {
                const std::uint64_t f = detail::mulmod(rem.back(), lead_inv, p);
                const std::size_t sh = rem.size() - r1.size();
                qt[sh] = f;
                for (std::size_t i = 0; i < r1.size(); ++i) rem[sh + i] = (rem[sh + i] + p - detail::mulmod(f, r1[i], p)) % p;
                detail::trim(rem);
            }
            Coeffs s2(std::max(s0.size(), qt.size() + s1.size()), 0);
            for (std::size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
            for (std::size_t i = 0; i < qt.size(); ++i) {
                for (std::size_t j = 0; j < s1.size(); ++j) s2[i + j] = (s2[i + j] + p - detail::mulmod(qt[i], s1[j], p)) % p;
            }
            detail::trim(s2);
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        // r1 is a nonzero constant because the modulus is irreducible
        const std::uint64_t c = detail::inv_mod(r1[0], p);
        s1 = detail::poly_rem(s1, d_->modulus, p);
        for (auto& v : s1) v = detail::mulmod(v, c, p);
        s1.resize(d_->m, 0);
        return from_coords(s1);
    }

    // Runs while the tables are still empty, so mul_slow is the only path used.
    void build_tables(Data& d) const {
        const std::uint64_t q = d.q;
        std::vector<std::uint16_t> add_t(q * q), mul_t(q * q);
        for (std::uint64_t a = 0; a < q; ++a) {
            for (std::uint64_t b = 0; b < q; ++b) {
                std::uint64_t code = 0;
                for (unsigned i = d.m; i-- > 0;) {
                    const std::uint64_t s = coord(Elem{a}, i) + coord(Elem{b}, i);
                    code = code * d.p + s % d.p;
                }
                add_t[a * q + b] = static_cast<std::uint16_t>(code);
                mul_t[a * q + b] = static_cast<std::uint16_t>(mul_slow(Elem{a}, Elem{b}).code);
            }
        }
        d.add_table = std::move(add_t);
        d.mul_table = std::move(mul_t);
    }

    std::shared_ptr<const Data> d_;
};

namespace detail {

inline bool parse_u64(std::string_view s, std::uint64_t& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

inline std::string_view strip(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n')) s.remove_suffix(1);
    return s;
}

}  // namespace detail

inline Field Field::parse(std::string_view text) {
    const std::string_view t = detail::strip(text);
    const auto caret = t.find('^');
    std::uint64_t p = 0;
    if (caret == std::string_view::npos) {
        if (!detail::parse_u64(t, p)) throw ParseError("bad field spec '" + std::string(text) + "'", 0);
        // a bare prime power q = p^m selects the shipped modulus
        for (std::uint64_t r = 2; r * r <= p && r < (1ULL << 32); ++r) {
            if (p % r != 0) continue;
            std::uint64_t v = p;
            unsigned m = 0;
            while (v % r == 0) {
                v /= r;
                ++m;
            }
            if (v == 1 && detail::is_prime(r)) return with_default_modulus(r, m);
            break;
        }
        return prime(p);
    }
    if (!detail::parse_u64(t.substr(0, caret), p)) throw ParseError("bad characteristic in field spec", 0);
    const auto slash = t.find('/', caret);
    std::uint64_t m = 0;
    if (!detail::parse_u64(t.substr(caret + 1, slash == std::string_view::npos ? std::string_view::npos : slash - caret - 1), m) ||
        m == 0 || m > kMaxDegree) {
        throw ParseError("bad extension degree in field spec", caret + 1);
    }
    if (slash == std::string_view::npos) return with_default_modulus(p, static_cast<unsigned>(m));
    std::vector<std::uint64_t> coeffs;
    std::size_t pos = slash + 1;
    while (true) {
        const auto comma = t.find(',', pos);
        const auto piece = t.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        std::uint64_t c = 0;
        if (!detail::parse_u64(detail::strip(piece), c)) throw ParseError("bad modulus coefficient", pos);
        coeffs.push_back(c);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (coeffs.size() != m + 1) {
        throw InvalidArgument("modulus for degree " + std::to_string(m) + " needs " + std::to_string(m + 1) + " coefficients");
    }
    if (m == 1) {
        if (coeffs[0] != 1) throw InvalidArgument("modulus must be monic");
        return prime(p);
    }
    return extension(p, coeffs);
}

inline Elem Field::parse_element(std::string_view text) const {
    // sum of terms: [int] [*] [a[^e]], signs between terms
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto skip_ws = [&] {
        while (i < n && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    skip_ws();
    std::size_t end = n;
    if (i < n && text[i] == '(') {
        std::size_t close = text.find_last_of(')');
        if (close == std::string_view::npos) throw ParseError("unbalanced parenthesis", i);
        for (std::size_t k = close + 1; k < n; ++k) {
            if (text[k] != ' ' && text[k] != '\t') throw ParseError("trailing characters after ')'", k);
        }
        end = close;
        ++i;
    }
    Elem acc = zero();
    bool first = true;
    while (true) {
        skip_ws();
        bool negative = false;
        if (i < end && (text[i] == '+' || text[i] == '-')) {
            negative = text[i] == '-';
            ++i;
            skip_ws();
        } else if (!first) {
            break;
        }
        first = false;
        Elem term = one();
        bool any = false;
        while (true) {
            skip_ws();
            if (i < end && std::isdigit(static_cast<unsigned char>(text[i]))) {
                const std::size_t start = i;
                while (i < end && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                std::uint64_t v = 0;
                if (!detail::parse_u64(text.substr(start, i - start), v)) throw ParseError("integer too large", start);
                term = scale(term, v % d_->p);
            } else if (i < end && text[i] == 'a') {
                if (d_->m == 1) throw ParseError("coefficient not in field: `a` needs an extension field", i);
                ++i;
                std::uint64_t e = 1;
                skip_ws();
                if (i < end && text[i] == '^') {
                    ++i;
                    skip_ws();
                    const std::size_t start = i;
                    while (i < end && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                    if (!detail::parse_u64(text.substr(start, i - start), e)) throw ParseError("expected exponent", start);
                }
                term = mul(term, pow(generator(), e));
            } else {
                throw ParseError("expected integer or `a`", i);
            }
            any = true;
            skip_ws();
            if (i < end && text[i] == '*') {
                ++i;
                continue;
            }
            break;
        }
        if (!any) throw ParseError("empty term", i);
        acc = negative ? sub(acc, term) : add(acc, term);
    }
    skip_ws();
    if (i != end) throw ParseError("unexpected character in element", i);
    return acc;
}

}  // namespace fdcube

#endif  // FDCUBE_FIELD_HPP
