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

#ifndef FDCUBE_TARGETS_HPP
#define FDCUBE_TARGETS_HPP

// Attack targets with known ground truth: planted polynomials and a small
// keyed toy cipher over GF(p), plus the target description file.

#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "attack.hpp"
#include "error.hpp"
#include "field.hpp"
#include "linalg.hpp"
#include "poly.hpp"
#include "rng.hpp"

namespace fdcube {

struct PlantedProfile {
    std::uint64_t degree = 4;    ///< total degree d of f
    std::size_t maxterms = 0;    ///< planted t*·l(x) terms; 0 means n_sec + 2 (capped by availability)
    std::size_t noise = 8;       ///< random extra monomials of total degree <= d
};

struct PlantedTarget {
    Field field;
    std::size_t n_pub = 0;
    std::size_t n_sec = 0;
    MultiPoly f;                 ///< f(v_1..v_npub, x_1..x_nsec)
    std::vector<Elem> key;
    std::vector<Monomial> planted_terms;  ///< the public terms t*, over n_pub variables
    PlantedProfile profile;
    std::uint64_t seed = 0;
};

namespace detail {

/// All public monomials of total degree `total` with every exponent <= cap.
inline std::vector<Monomial> monomials_of_degree(std::size_t n, std::uint64_t total, std::uint64_t cap) {
    std::vector<Monomial> out;
    Monomial m(n);
    auto rec = [&](auto&& self, std::size_t i, std::uint64_t left) -> void {
        if (i + 1 == n) {
            if (left <= cap) {
                m[i] = static_cast<std::uint32_t>(left);
                out.push_back(m);
            }
            return;
        }
        for (std::uint64_t e = std::min(left, cap) + 1; e-- > 0;) {
            m[i] = static_cast<std::uint32_t>(e);
            self(self, i + 1, left - e);
        }
    };
    if (n > 0) rec(rec, 0, total);
    return out;
}

inline Matrix random_invertible(const Field& F, std::size_t n, Rng& rng) {
    while (true) {
        Matrix a(n, Row(n));
        for (auto& row : a) {
            for (auto& v : row) v = random_element(F, rng);
        }
        EchelonBasis basis(F, n);
        bool ok = true;
        for (const auto& row : a) ok = ok && basis.insert(row, F.zero()) == RowStatus::independent;
        if (ok) return a;
    }
}

}  // namespace detail

/**
 * Random f of total degree d whose public terms t* of multiplicity d - 1
 * carry planted linear secret forms, so each t* is a maxterm.
 *
 * Every monomial has total degree <= d and per-variable exponent <= p - 1,
 * hence f_t(0, x) is affine in x for every public term t of multiplicity
 * d - 1. The first n_sec planted forms are the rows of a random invertible
 * matrix. Noise never shares a public part with a planted term.
 */
inline PlantedTarget make_planted(std::uint64_t p, std::size_t n_pub, std::size_t n_sec, const PlantedProfile& profile,
                                  std::uint64_t seed) {
    const Field F = Field::prime(p);
    if (n_pub == 0) throw InvalidArgument("planted target needs at least one public variable");
    if (profile.degree < 2) throw InvalidArgument("planted degree must be at least 2");
    const std::uint64_t cap = p - 1;
    auto pool = detail::monomials_of_degree(n_pub, profile.degree - 1, cap);
    if (pool.size() < n_sec || (n_sec > 0 && pool.empty())) {
        throw InvalidArgument("infeasible profile: only " + std::to_string(pool.size()) +
                              " public terms of multiplicity d-1 with exponents <= p-1");
    }
    if (profile.degree > (n_pub + n_sec) * cap) throw InvalidArgument("infeasible profile: degree too large");
    std::size_t count = profile.maxterms ? profile.maxterms : n_sec + 2;
    count = std::min(count, pool.size());
    if (count < n_sec) throw InvalidArgument("infeasible profile: fewer planted terms than secret variables");

    Rng rng(seed);
    PlantedTarget out{F, n_pub, n_sec, MultiPoly(F, n_pub + n_sec), {}, {}, profile, seed};
    for (std::size_t i = 0; i < n_sec; ++i) out.key.push_back(random_element(F, rng));

    // distinct terms: partial Fisher-Yates over the pool
    for (std::size_t i = 0; i < count; ++i) {
        std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
        out.planted_terms.push_back(pool[i]);
    }
    Matrix forms = n_sec ? detail::random_invertible(F, n_sec, rng) : Matrix{};
    for (std::size_t i = n_sec; i < count; ++i) {
        Row r(n_sec);
        do {
            for (auto& v : r) v = random_element(F, rng);
        } while (n_sec && std::all_of(r.begin(), r.end(), [&](Elem v) { return F.is_zero(v); }));
        forms.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < count; ++i) {
        Monomial base(n_pub + n_sec);
        for (std::size_t j = 0; j < n_pub; ++j) base[j] = out.planted_terms[i][j];
        for (std::size_t j = 0; j < n_sec; ++j) {
            if (F.is_zero(forms[i][j])) continue;
            Monomial m = base;
            m[n_pub + j] = 1;
            out.f.add_term(std::move(m), forms[i][j]);
        }
        out.f.add_term(base, random_element(F, rng));
    }
    const std::size_t n = n_pub + n_sec;
    for (std::size_t k = 0; k < profile.noise; ++k) {
        Monomial m(n);
        const std::uint64_t deg = rng.below(profile.degree + 1);
        for (std::uint64_t s = 0; s < deg; ++s) {
            std::size_t v = rng.below(n);
            while (m[v] >= cap) v = (v + 1) % n;
            ++m[v];
        }
        const Elem c = random_element(F, rng, true);
        // noise on a planted public part could cancel its secret form
        const bool clashes = std::any_of(out.planted_terms.begin(), out.planted_terms.end(), [&](const Monomial& t) {
            for (std::size_t j = 0; j < n_pub; ++j) {
                if (m[j] != t[j]) return false;
            }
            return true;
        });
        if (!clashes) out.f.add_term(std::move(m), c);
    }
    return out;
}

inline PolyBlackBox planted_blackbox(const PlantedTarget& t) { return PolyBlackBox(t.f, t.n_pub); }

// ---------------------------------------------------------------------------

/**
 * Toy keyed permutation-like map on GF(p)^w, deliberately weak.
 *
 * state = plaintext; each round: state += key; state = A state + c;
 * state_i += state_i * state_{i+1}. After the rounds: state += key.
 * The output is the sum of the state words. Degree in (plaintext, key) is at most 2^rounds.
 */
struct ToyCipherParams {
    std::uint64_t p = 31;
    std::size_t width = 3;
    std::size_t rounds = 1;
    std::uint64_t seed = 1;  ///< selects A and c
};

class ToyCipher : public BlackBox {
  public:
    explicit ToyCipher(const ToyCipherParams& params) : params_(params), field_(Field::prime(params.p)) {
        if (params.width == 0) throw InvalidArgument("toy cipher width must be positive");
        Rng rng(params.seed);
        for (std::size_t r = 0; r < params.rounds; ++r) {
            mix_.push_back(detail::random_invertible(field_, params.width, rng));
            Row c(params.width);
            for (auto& v : c) v = random_element(field_, rng);
            constants_.push_back(std::move(c));
        }
    }

    const Field& field() const override { return field_; }
    std::size_t public_count() const override { return params_.width; }
    std::size_t secret_count() const override { return params_.width; }
    const ToyCipherParams& params() const noexcept { return params_; }

    /// The whole output state, for test vectors.
    std::vector<Elem> encrypt(std::span<const Elem> pt, std::span<const Elem> key) const {
        const Field& F = field_;
        const std::size_t w = params_.width;
        std::vector<Elem> s(pt.begin(), pt.end()), t(w);
        for (std::size_t r = 0; r < params_.rounds; ++r) {
            for (std::size_t i = 0; i < w; ++i) s[i] = F.add(s[i], key[i]);
            for (std::size_t i = 0; i < w; ++i) {
                Elem acc = constants_[r][i];
                for (std::size_t j = 0; j < w; ++j) acc = F.add(acc, F.mul(mix_[r][i][j], s[j]));
                t[i] = acc;
            }
            for (std::size_t i = 0; i < w; ++i) s[i] = F.add(t[i], F.mul(t[i], t[(i + 1) % w]));
        }
        for (std::size_t i = 0; i < w; ++i) s[i] = F.add(s[i], key[i]);
        return s;
    }

  protected:
    Elem evaluate_impl(std::span<const Elem> pub, std::span<const Elem> secret) const override {
        // the sum of all words: a single word sees only two rows of the last mix
        Elem acc = field_.zero();
        for (const Elem& v : encrypt(pub, secret)) acc = field_.add(acc, v);
        return acc;
    }

  private:
    ToyCipherParams params_;
    Field field_;
    std::vector<Matrix> mix_;
    std::vector<Row> constants_;
};

// ---------------------------------------------------------------------------
// Target description files
//
//   # fdcube target v1
//   kind=planted field=31 n_pub=2 n_sec=3 seed=7 degree=5 maxterms=0 noise=8
//   kind=toy field=31 width=3 rounds=1 seed=7
//   key=1,2,3            (optional: replaces the generated key)
//
// Keys may appear on any line; '#' starts a comment line.

struct TargetSpec {
    enum class Kind { planted, toy };
    Kind kind = Kind::planted;
    std::uint64_t p = 0;
    std::size_t n_pub = 0;
    std::size_t n_sec = 0;
    std::uint64_t seed = 0;
    PlantedProfile profile;
    ToyCipherParams toy;
    std::optional<std::vector<std::uint64_t>> key;
};

/// A live target: the black box plus ground truth where available.
struct Target {
    std::unique_ptr<BlackBox> box;
    std::vector<Elem> key;
    std::optional<MultiPoly> poly;
};

inline TargetSpec parse_target(std::istream& is) {
    TargetSpec spec;
    bool have_kind = false, have_field = false, have_seed = false;
    std::string line, tok;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string_view v = detail::strip(line);
        if (v.empty() || v.starts_with('#')) continue;
        std::istringstream words{std::string(v)};
        while (words >> tok) {
            const auto bad = [&](const std::string& msg) {
                return ParseError("target line " + std::to_string(lineno) + ": " + msg, 0);
            };
            const auto eq = tok.find('=');
            if (eq == std::string::npos) throw bad("expected key=value, got '" + tok + "'");
            const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            std::uint64_t num = 0;
            const auto number = [&] {
                if (!detail::parse_u64(val, num)) throw bad("bad number for " + key);
                return num;
            };
            if (key == "kind") {
                if (val == "planted") spec.kind = TargetSpec::Kind::planted;
                else if (val == "toy") spec.kind = TargetSpec::Kind::toy;
                else throw bad("unknown kind '" + val + "'");
                have_kind = true;
            } else if (key == "field") {
                const Field F = Field::parse(val);
                if (!F.is_prime_field()) throw bad("attack targets live over prime fields");
                spec.p = F.characteristic();
                have_field = true;
            } else if (key == "n_pub") {
                spec.n_pub = number();
            } else if (key == "n_sec") {
                spec.n_sec = number();
            } else if (key == "seed") {
                spec.seed = number();
                have_seed = true;
            } else if (key == "degree") {
                spec.profile.degree = number();
            } else if (key == "maxterms") {
                spec.profile.maxterms = number();
            } else if (key == "noise") {
                spec.profile.noise = number();
            } else if (key == "width") {
                spec.toy.width = number();
            } else if (key == "rounds") {
                spec.toy.rounds = number();
            } else if (key == "key") {
                std::vector<std::uint64_t> k;
                std::string_view rest = val;
                while (!rest.empty()) {
                    const auto comma = rest.find(',');
                    std::uint64_t x = 0;
                    if (!detail::parse_u64(rest.substr(0, comma), x)) throw bad("bad key entry");
                    k.push_back(x);
                    if (comma == std::string_view::npos) break;
                    rest.remove_prefix(comma + 1);
                }
                spec.key = std::move(k);
            } else {
                throw bad("unknown key '" + key + "'");
            }
        }
    }
    if (!have_kind || !have_field || !have_seed) throw ParseError("target file needs kind, field and seed", 0);
    spec.toy.p = spec.p;
    spec.toy.seed = spec.seed;
    return spec;
}

inline void write_target(std::ostream& os, const TargetSpec& s, bool with_key) {
    os << "# fdcube target v1\n";
    if (s.kind == TargetSpec::Kind::planted) {
        os << "kind=planted field=" << s.p << " n_pub=" << s.n_pub << " n_sec=" << s.n_sec << " seed=" << s.seed
           << " degree=" << s.profile.degree << " maxterms=" << s.profile.maxterms << " noise=" << s.profile.noise
           << "\n";
    } else {
        os << "kind=toy field=" << s.p << " width=" << s.toy.width << " rounds=" << s.toy.rounds << " seed=" << s.seed
           << "\n";
    }
    if (with_key && s.key) {
        os << "key=";
        for (std::size_t i = 0; i < s.key->size(); ++i) os << (i ? "," : "") << (*s.key)[i];
        os << "\n";
    }
}

inline Target build_target(const TargetSpec& spec) {
    Target out;
    std::size_t n_sec = 0;
    if (spec.kind == TargetSpec::Kind::planted) {
        auto pt = make_planted(spec.p, spec.n_pub, spec.n_sec, spec.profile, spec.seed);
        out.key = pt.key;
        out.poly = pt.f;
        out.box = std::make_unique<PolyBlackBox>(pt.f, pt.n_pub);
        n_sec = pt.n_sec;
    } else {
        auto cipher = std::make_unique<ToyCipher>(spec.toy);
        n_sec = cipher->secret_count();
        Rng rng(derive_seed(spec.seed, 0x6b6579));
        for (std::size_t i = 0; i < n_sec; ++i) out.key.push_back(random_element(cipher->field(), rng));
        out.box = std::move(cipher);
    }
    if (spec.key) {
        if (spec.key->size() != n_sec) throw InvalidArgument("key length does not match the secret size");
        const Field& F = out.box->field();
        out.key.clear();
        for (auto k : *spec.key) {
            if (k >= F.order()) throw InvalidArgument("key entry outside the field");
            out.key.push_back(Elem{k});
        }
    }
    return out;
}

}  // namespace fdcube

#endif  // FDCUBE_TARGETS_HPP
