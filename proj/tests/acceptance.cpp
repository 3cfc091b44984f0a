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


// Acceptance suite: one PASS/FAIL line per criterion. All comparisons are
// exact field equalities; the only tolerances are the runtime limits and the
// attack success threshold below.

#include <gmpxx.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fdcube/fdcube.hpp"

namespace {

using namespace fdcube;
using U = std::uint64_t;

// Pinned limits.
constexpr double kLimitExample = 1.0;        // criteria 1-4, seconds
constexpr double kLimitProperty = 30.0;      // criteria 5-7
constexpr double kLimitCollapse = 10.0;      // criterion 8
constexpr double kLimitReduction = 60.0;     // criterion 9
constexpr double kLimitAttack = 300.0;       // criterion 10
constexpr double kLimitOracle = 10.0;        // criterion 11
constexpr int kAttackInstances = 50;
constexpr int kAttackRequired = 48;
constexpr U kAttackBudget = 1'000'000;

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

const char* kExample = "x1^5*x2 + x1^4*x3*x4 + x4^6";

auto wrap(const MultiPoly& f) {
    return [ev = PolyEvaluator(f)](std::span<const Elem> x) { return ev(x); };
}

MultiPoly power(const Field& F, std::uint32_t d) {
    MultiPoly x(F, 1);
    x.add_term(Monomial{d}, F.one());
    return x;
}

// --- 1 --------------------------------------------------------------------

Outcome gf31_example() {
    Outcome out;
    const Field F = Field::prime(31);
    const auto f = parse_poly(kExample, F);
    const auto first = parse_poly(
        "5*x1^4*x2 + 10*x1^3*x2 + 4*x1^3*x3*x4 + 10*x1^2*x2 + 6*x1^2*x3*x4 + 5*x1*x2 + 4*x1*x3*x4 + x2 + x3*x4", F, 4);
    const auto second =
        parse_poly("20*x1^3*x2 + 29*x1^2*x2 + 12*x1^2*x3*x4 + 8*x1*x2 + 24*x1*x3*x4 + 30*x2 + 14*x3*x4", F, 4);
    const auto fifth = parse_poly("27*x2", F, 4);
    if (delta_along(f, 0, F.one()) != first) out.fail("first order: " + format(delta_along(f, 0, F.one())));
    const auto d2 = delta_plan(f, DiffPlan::from_term(F, Monomial{2, 0, 0, 0}));
    if (d2 != second) out.fail("second order: " + format(d2));
    const auto d5 = delta_plan(f, DiffPlan::from_term(F, Monomial{5, 0, 0, 0}));
    if (d5 != fifth) out.fail("fifth order: " + format(d5));
    return out;
}

// --- 2 --------------------------------------------------------------------

Outcome counterexample() {
    Outcome out;
    const Field F = Field::prime(31);
    const auto f = parse_poly(kExample, F);
    const auto at = [&](const MultiPoly& g, Elem x1) { return g.substitute(0, x1); };

    const Monomial t2{2, 0, 0, 0}, t5{5, 0, 0, 0};
    const auto ft2 = at(delta_plan(f, DiffPlan::from_term(F, t2)), F.zero());
    const auto st2 = at(factor_term(f, t2).quotient, F.one());
    if (ft2 != parse_poly("30*x2 + 14*x3*x4", F, 4)) out.fail("f_t(0) for x1^2: " + format(ft2));
    if (st2 != parse_poly("x2 + x3*x4", F, 4)) out.fail("f_S(1) for x1^2: " + format(st2));
    if (ft2 == st2) out.fail("x1^2: the two sides coincide");

    const auto ft5 = delta_plan(f, DiffPlan::from_term(F, t5));
    const auto st5 = factor_term(f, t5).quotient;
    if (ft5 != parse_poly("27*x2", F, 4)) out.fail("f_t for x1^5: " + format(ft5));
    if (st5 != parse_poly("x2", F, 4)) out.fail("f_S for x1^5: " + format(st5));
    if (ft5 == st5) out.fail("x1^5: the two sides coincide");
    if (ft5 != st5.scaled(Elem{factorial_mod(5, 31)})) out.fail("x1^5: f_t is not 5! f_S");
    return out;
}

// --- 3 --------------------------------------------------------------------

Outcome factorial_law() {
    Outcome out;
    for (U p : {3u, 5u, 7u, 31u}) {
        const Field F = Field::prime(p);
        U fact = 1;
        for (std::uint32_t d = 1; d < p; ++d) {
            fact = fact * d % p;  // independent running product
            const auto g = delta_plan(power(F, d), DiffPlan::from_term(F, Monomial{d}));
            if (g != MultiPoly::constant(F, 1, Elem{fact})) {
                out.fail("p=" + std::to_string(p) + " d=" + std::to_string(d) + ": " + format(g));
            }
        }
    }
    return out;
}

// --- 4 --------------------------------------------------------------------

Outcome gf9_example() {
    Outcome out;
    const Field F = Field::parse("9");
    const Elem a = F.generator();
    // a^2 = a + 1 under the shipped modulus x^2 + 2x + 2
    if (F.mul(a, a) != F.add(a, F.one())) out.fail("shipped GF(9) modulus changed");
    const Elem expect = F.add(F.scale(F.pow(a, 3), 2), a);
    const Elem factored = F.mul(F.scale(a, 2), F.mul(F.add(a, F.one()), F.add(a, F.from_int(2))));
    if (expect != factored) out.fail("2a^3+a != 2a(a+1)(a+2)");
    if (F.is_zero(expect)) out.fail("constant is zero");

    const auto x5 = parse_poly("x1^5", F);
    const std::vector<Elem> steps{F.one(), F.one(), a};
    const auto sym = delta_plan(x5, DiffPlan::from_term(Monomial{3}, steps));
    if (sym != MultiPoly::constant(F, 1, expect)) out.fail("symbolic: " + format(sym));
    const std::vector<std::vector<Elem>> dirs{{F.one()}, {F.one()}, {a}};
    for (U b = 0; b < F.order(); ++b) {
        const std::vector<Elem> base{Elem{b}};
        if (inclusion_exclusion(wrap(x5), F, dirs, base) != expect) out.fail("subset sum differs at a point");
    }
    if (F.format(expect) != "2*a+2") out.fail("coordinates: " + F.format(expect));
    return out;
}

// --- 5 --------------------------------------------------------------------

Outcome duality() {
    Outcome out;
    Rng rng(derive_seed(5, 0));
    const U primes[] = {3, 5, 31};
    for (int it = 0; it < 500 && out.ok; ++it) {
        const Field F = Field::prime(primes[it % 3]);
        const U p = F.characteristic();
        const std::size_t n = 1 + rng.below(4);
        const auto f = random_poly(F, n, 6, 1 + rng.below(12), rng.next());
        DiffPlan plan;
        for (std::size_t i = 0; i < n; ++i) {
            const U mult = rng.below(std::min<U>(p, 4));
            if (mult == 0) continue;
            std::vector<Elem> steps;
            for (U k = 0; k < mult; ++k) steps.push_back(random_element(F, rng, true));
            plan.entries().push_back({i, steps});
        }
        if (plan.entries().empty()) plan.entries().push_back({0, {random_element(F, rng, true)}});
        std::vector<Elem> base(n);
        for (auto& v : base) v = random_element(F, rng);
        const Elem black = blackbox_diff(wrap(f), F, plan, base);
        const Elem white = delta_plan(f, plan).evaluate(base);
        if (black != white) out.fail("triple " + std::to_string(it) + " over GF(" + std::to_string(p) + ")");
    }
    return out;
}

// --- 6 --------------------------------------------------------------------

Outcome fundamental() {
    Outcome out;
    Rng rng(derive_seed(6, 0));
    for (U p : {5u, 31u}) {
        const Field F = Field::prime(p);
        for (int it = 0; it < 100 && out.ok; ++it) {
            const std::size_t n = 2 + rng.below(3);
            const auto f = random_poly(F, n, 8, 4 + rng.below(10), rng.next());
            Monomial t(n);
            for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<std::uint32_t>(rng.below(std::min<U>(p, 4)));
            if (t.is_constant()) t[rng.below(n)] = 1;
            const auto sum = fundamental_sum(fundamental_constants(t, factor_term(f, t).quotient), F, n);
            const DiffGrid grid(F, DiffPlan::from_term(F, t), n);
            for (int b = 0; b < 5; ++b) {
                std::vector<Elem> u(n);
                for (std::size_t i = 0; i < n; ++i) u[i] = t[i] ? F.zero() : random_element(F, rng);
                if (grid.evaluate(wrap(f), u) != sum.evaluate(u)) {
                    out.fail("GF(" + std::to_string(p) + ") instance " + std::to_string(it));
                }
            }
        }
    }
    return out;
}

// --- 7 --------------------------------------------------------------------

Outcome degree_laws() {
    Outcome out;
    // (a) exact drop over GF(p)
    for (U p : {2u, 3u, 5u, 7u}) {
        const Field F = Field::prime(p);
        for (std::uint32_t d = 1; d < p; ++d) {
            for (std::uint32_t m = 1; m <= d; ++m) {
                const auto g = delta_plan(power(F, d), DiffPlan::from_term(F, Monomial{m}));
                U falling = 1;
                for (U k = d - m + 1; k <= d; ++k) falling = falling * k % p;
                if (g.is_zero() || g.total_degree() != d - m || g.coefficient(Monomial{d - m}) != Elem{falling}) {
                    out.fail("(a) p=" + std::to_string(p) + " d=" + std::to_string(d) + " m=" + std::to_string(m));
                }
            }
        }
    }
    // (b) bound and (c) collapse over GF(8), GF(9)
    for (const char* spec : {"8", "9"}) {
        const Field F = Field::parse(spec);
        const U p = F.characteristic();
        for (std::uint32_t d = 0; d < F.order(); ++d) {
            for (U k = 1; k <= F.degree() * (p - 1); ++k) {
                const auto g = delta_plan(power(F, d), DiffPlan({{0, step_sequence_pm(F, k)}}));
                const auto bound = degree_after_diff(d, k, p);
                const std::string where = std::string(" GF(") + spec + ") d=" + std::to_string(d) + " k=" + std::to_string(k);
                if (!g.is_zero() && (bound.identically_zero || g.total_degree() > bound.degree)) out.fail("(b)" + where);
                if (k > digit_sum(d, p) && !g.is_zero()) out.fail("(c)" + where);
            }
        }
        // (c) the count is tight: some function survives exactly m(p-1) steps
        const U top = F.degree() * (p - 1);
        const auto w = noncollapse_witness(F, top);
        if (delta_plan(w, DiffPlan({{0, step_sequence_pm(F, top)}})).is_zero()) out.fail(std::string("(c) witness GF(") + spec + ")");
    }
    return out;
}

// --- 8 --------------------------------------------------------------------

Outcome collapse() {
    Outcome out;
    Rng rng(derive_seed(8, 0));
    for (int it = 0; it < 100 && out.ok; ++it) {
        const Field F = Field::parse(it % 2 ? "9" : "4");
        const U p = F.characteristic();
        const std::size_t n = 1 + rng.below(2);
        std::uint64_t size = 1;
        for (std::size_t i = 0; i < n; ++i) size *= F.order();
        std::vector<Elem> table(size);
        for (auto& v : table) v = random_element(F, rng);
        auto box = [&](std::span<const Elem> x) {
            U idx = 0;
            for (auto v : x) idx = idx * F.order() + v.code;
            return table[idx];
        };
        const std::size_t var = rng.below(n);
        std::vector<Elem> e(n, F.zero());
        e[var] = F.one();
        const std::vector<std::vector<Elem>> dirs(p, e);
        for (U idx = 0; idx < size; ++idx) {
            std::vector<Elem> base(n);
            U v = idx;
            for (auto& b : base) {
                b = Elem{v % F.order()};
                v /= F.order();
            }
            if (inclusion_exclusion(box, F, dirs, base) != F.zero()) out.fail("box " + std::to_string(it));
        }
    }
    return out;
}

// --- 9 --------------------------------------------------------------------

std::vector<std::vector<U>> all_r(U p, std::size_t m) {
    std::vector<std::vector<U>> out{{}};
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<std::vector<U>> next;
        for (const auto& r : out) {
            for (U v = 0; v < p; ++v) {
                auto s = r;
                s.push_back(v);
                next.push_back(std::move(s));
            }
        }
        out = std::move(next);
    }
    return out;
}

Outcome reduction() {
    Outcome out;
    Rng rng(derive_seed(9, 0));
    for (const char* spec : {"4", "9"}) {
        const Field F = Field::parse(spec);
        const auto rs = all_r(F.characteristic(), F.degree());
        // n = 1: every point, every r-vector, several random functions
        const ProjectionContext one(F, 1);
        for (int it = 0; it < 10; ++it) {
            std::vector<Elem> table(F.order());
            for (auto& v : table) v = random_element(F, rng);
            const BoxFn box = [table](std::span<const Elem> x) { return table[x[0].code]; };
            for (const auto& r : rs) {
                const auto rep = verify_reduction(one, box, r);
                if (!rep.exhaustive || !rep.ok()) out.fail(std::string("n=1 GF(") + spec + ")");
            }
        }
        // n = 2: 1000 sampled points per r-vector and variable
        const ProjectionContext two(F, 2);
        for (int it = 0; it < 4; ++it) {
            const auto f = random_poly(F, 2, 2 * F.order(), 10, rng.next());
            const BoxFn box = wrap(f);
            for (const auto& r : rs) {
                ReductionOptions opt;
                opt.var = it % 2;
                opt.exhaustive_limit = 0;
                opt.samples = 1000;
                opt.seed = rng.next();
                const auto rep = verify_reduction(two, box, r, opt);
                if (rep.exhaustive || rep.points_checked != 1000 || !rep.ok()) out.fail(std::string("n=2 GF(") + spec + ")");
            }
        }
    }
    return out;
}

// --- 10 -------------------------------------------------------------------

Outcome attack() {
    Outcome out;
    int exact = 0, wrong = 0, short_rank = 0;
    for (int i = 0; i < kAttackInstances; ++i) {
        std::optional<PlantedTarget> t;
        // infeasible draws are replaced by the next derived seed
        for (U draw = 0; !t; ++draw) {
            Rng rng(derive_seed(derive_seed(10, static_cast<U>(i)), draw));
            const U p = rng.below(2) ? 31 : 5;
            const std::size_t n_pub = 1 + rng.below(4);
            const std::size_t n_sec = 1 + rng.below(6);
            PlantedProfile prof;
            prof.degree = 2 + rng.below(7);
            prof.noise = rng.below(13);
            try {
                t = make_planted(p, n_pub, n_sec, prof, rng.next());
            } catch (const InvalidArgument&) {
            }
        }
        const PolyBlackBox bb(t->f, t->n_pub);
        PreprocessOptions opt;
        opt.budget = kAttackBudget;
        opt.seed = derive_seed(10, 1000 + static_cast<U>(i));
        const auto pre = preprocess(bb, opt);
        const auto on = online(bb, t->key, pre.records);
        if (on.key && *on.key != t->key) ++wrong;
        else if (on.key && pre.rank >= t->n_sec) ++exact;
        else ++short_rank;
    }
    out.detail = std::to_string(exact) + "/" + std::to_string(kAttackInstances) + " exact, " + std::to_string(short_rank) +
                 " short, " + std::to_string(wrong) + " wrong";
    out.ok = exact >= kAttackRequired && wrong == 0;
    return out;
}

// --- 11 -------------------------------------------------------------------

mpz_class exact_multinomial(const std::vector<U>& parts) {
    U d = 0;
    for (U v : parts) d += v;
    mpz_class num;
    mpz_fac_ui(num.get_mpz_t(), d);
    for (U v : parts) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), v);
        num /= f;
    }
    return num;
}

U valuation(mpz_class v, U p) {
    U k = 0;
    while (v % p == 0) {
        v /= p;
        ++k;
    }
    return k;
}

bool agrees(const std::vector<U>& parts, U p) {
    U d = 0;
    for (U v : parts) d += v;
    const mpz_class exact = exact_multinomial(parts);
    const mpz_class r = exact % p;
    return multinomial_mod(d, parts, p) == r.get_ui() && carry_count(parts, p) == valuation(exact, p);
}

Outcome combinatorics() {
    Outcome out;
    for (U p : {2u, 3u, 5u, 31u}) {
        for (U d = 0; d <= 25; ++d) {
            for (U a = 0; a <= d; ++a) {
                for (U b = 0; a + b <= d; ++b) {
                    if (!agrees({a, b, d - a - b}, p)) out.fail("p=" + std::to_string(p) + " d=" + std::to_string(d));
                }
            }
        }
    }
    Rng rng(derive_seed(11, 0));
    for (int it = 0; it < 4000; ++it) {
        const U p = std::vector<U>{2, 3, 5, 31}[it % 4];
        const U d = rng.below(201);
        std::vector<U> parts(2 + rng.below(4), 0);
        for (U k = 0; k < d; ++k) ++parts[rng.below(parts.size())];
        if (!agrees(parts, p)) out.fail("random p=" + std::to_string(p) + " d=" + std::to_string(d));
    }
    return out;
}

struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "gf31-example-expansions", kLimitExample, gf31_example},
        {2, "counterexample", kLimitExample, counterexample},
        {3, "factorial-law", kLimitExample, factorial_law},
        {4, "gf9-example", kLimitExample, gf9_example},
        {5, "duality-500", kLimitProperty, duality},
        {6, "fundamental-constants", kLimitProperty, fundamental},
        {7, "degree-laws", kLimitProperty, degree_laws},
        {8, "collapse-100", kLimitCollapse, collapse},
        {9, "reduction", kLimitReduction, reduction},
        {10, "end-to-end-attack", kLimitAttack, attack},
        {11, "combinatorics-oracle", kLimitOracle, combinatorics},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.limit) o.fail("over time limit" + (o.detail.empty() ? "" : "; " + o.detail));
        if (!o.ok) ++failed;
        std::printf("%s %2d %-26s %8.3fs (limit %.0fs)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, c.limit,
                    o.detail.empty() ? "" : "  ", o.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
