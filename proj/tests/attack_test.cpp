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

#include <gtest/gtest.h>

#include <sstream>

#include "fdcube/attack.hpp"
#include "fdcube/targets.hpp"

namespace fdcube {
namespace {

// f_t(0, x) computed symbolically, as a polynomial in the secrets only.
MultiPoly symbolic_superpoly(const MultiPoly& f, std::size_t n_pub, const Monomial& t) {
    const Field& F = f.field();
    Monomial full(f.variables());
    for (std::size_t i = 0; i < n_pub; ++i) full[i] = t[i];
    MultiPoly g = delta_plan(f, DiffPlan::from_term(F, full));
    for (std::size_t i = 0; i < n_pub; ++i) g = g.substitute(i, F.zero());
    MultiPoly out(F, f.variables() - n_pub);
    for (const auto& [m, c] : g.terms()) {
        Monomial s(f.variables() - n_pub);
        for (std::size_t i = n_pub; i < f.variables(); ++i) s[i - n_pub] = m[i];
        out.add_term(std::move(s), c);
    }
    return out;
}

const char* kExample = "x1^5*x2 + x1^4*x3*x4 + x4^6";

TEST(Linearity, ExampleVerdicts) {
    const Field F = Field::prime(31);
    const PolyBlackBox bb(parse_poly(kExample, F), 1);
    EXPECT_EQ(linearity_test(bb, Monomial{5}, 12, 1).verdict, Verdict::likely_linear);
    // f_{x1^4}(0, x) has a 24*x3*x4 term
    const auto s4 = symbolic_superpoly(bb.polynomial(), 1, Monomial{4});
    EXPECT_EQ(s4.coefficient(Monomial{0, 1, 1}), Elem{24});
    EXPECT_EQ(s4.total_degree(), 2u);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        EXPECT_EQ(linearity_test(bb, Monomial{4}, 20, seed).verdict, Verdict::nonlinear);
    }
    const PolyBlackBox cst(parse_poly("x1^2 + x2 + x1*x3^2", F, 3), 1);
    // f_{x1^2} = 2: no secret dependence left
    EXPECT_EQ(linearity_test(cst, Monomial{2}, 12, 3).verdict, Verdict::constant);
    EXPECT_THROW(linearity_test(bb, Monomial{5}, 0, 1), InvalidArgument);
}

TEST(Extract, ExampleAndPlanted) {
    const Field F = Field::prime(31);
    const PolyBlackBox bb(parse_poly(kExample, F), 1);
    const auto rec = extract_linear(bb, Monomial{5});
    EXPECT_EQ(rec.c0, F.zero());
    EXPECT_EQ(rec.c, (std::vector<Elem>{Elem{27}, Elem{0}, Elem{0}}));
    EXPECT_EQ(rec.evaluations, 4u * 6u);
    EXPECT_TRUE(rec.usable(F));

    // t dividing nothing: f_t = 0
    const PolyBlackBox none(parse_poly("x1*x2 + x3", F, 3), 1);
    const auto zero = extract_linear(none, Monomial{3});
    EXPECT_EQ(zero.c0, F.zero());
    EXPECT_EQ(zero.c, std::vector<Elem>(2, F.zero()));
    EXPECT_FALSE(zero.usable(F));

    // v1 * (3 x1 + 5) + noise over GF(7), public v1, v2
    const Field F7 = Field::prime(7);
    const auto f = parse_poly("3*x1*x3 + 5*x1 + x3^3 + x2*x3^2", F7, 3);
    EXPECT_EQ(symbolic_superpoly(f, 2, Monomial{1, 0}), parse_poly("3*x1 + 5", F7, 1));
    const PolyBlackBox planted(f, 2);
    const auto r = extract_linear(planted, Monomial{1, 0});
    EXPECT_EQ(r.c0, Elem{5});
    EXPECT_EQ(r.c, std::vector<Elem>{Elem{3}});
}

TEST(Attack, EvaluationCounterMatchesGridSize) {
    const Field F = Field::prime(5);
    const PolyBlackBox bb(random_poly(F, 5, 6, 10, 3), 3);
    for (const auto& t : {Monomial{1, 0, 0}, Monomial{2, 3, 0}, Monomial{4, 4, 4}, Monomial{1, 1, 1}}) {
        bb.reset_evaluations();
        const CubeSum g(bb, t);
        std::uint64_t calls = 0;
        g(std::vector<Elem>(2, F.zero()), calls);
        std::uint64_t expect = 1;
        for (auto e : t.exps) expect *= e + 1;
        EXPECT_EQ(bb.evaluations(), expect);
        EXPECT_EQ(calls, expect);
        EXPECT_EQ(g.grid_size(), expect);
    }
}

TEST(Candidates, CostAwareOrder) {
    CandidateTerms gen(3, 5, 4);
    std::vector<Monomial> all;
    while (auto t = gen.next()) all.push_back(*t);
    std::set<std::vector<std::uint32_t>> distinct;
    for (const auto& t : all) distinct.insert(t.exps);
    EXPECT_EQ(distinct.size(), all.size());
    // every term with exponents <= 4 and total 1..4 appears exactly once
    std::size_t count = 0;
    for (std::uint32_t a = 0; a <= 4; ++a) {
        for (std::uint32_t b = 0; b <= 4; ++b) {
            for (std::uint32_t c = 0; c <= 4; ++c) count += (a + b + c >= 1 && a + b + c <= 4);
        }
    }
    EXPECT_EQ(all.size(), count);
    EXPECT_EQ(all[0], (Monomial{1, 0, 0}));
    EXPECT_EQ(all[1], (Monomial{0, 1, 0}));
    EXPECT_EQ(all[2], (Monomial{0, 0, 1}));
    EXPECT_EQ(all[3], (Monomial{2, 0, 0}));
    auto vars = [](const Monomial& t) {
        return std::count_if(t.exps.begin(), t.exps.end(), [](auto e) { return e > 0; });
    };
    for (std::size_t i = 1; i < all.size(); ++i) {
        const auto M0 = all[i - 1].total_degree(), M1 = all[i].total_degree();
        ASSERT_LE(M0, M1);
        if (M0 == M1) {
            ASSERT_LE(vars(all[i - 1]), vars(all[i]));
        }
    }
}

TEST(Preprocess, TrivialCases) {
    const Field F = Field::prime(5);
    const PolyBlackBox nosec(parse_poly("x1^2 + x2", F), 2);
    const auto r0 = preprocess(nosec, {});
    EXPECT_TRUE(r0.records.empty());
    EXPECT_EQ(r0.status, PreprocessStatus::full_rank);

    const PolyBlackBox bb(parse_poly("x1*x3 + x2", F, 3), 2);
    PreprocessOptions tiny;
    tiny.budget = 1;
    const auto r1 = preprocess(bb, tiny);
    EXPECT_TRUE(r1.records.empty());
    EXPECT_EQ(r1.status, PreprocessStatus::budget_exhausted);
    EXPECT_EQ(r1.evaluations, 0u);
    tiny.budget = 0;
    EXPECT_THROW(preprocess(bb, tiny), InvalidArgument);
}

TEST(Preprocess, FindsPlantedMaxtermAndRespectsBudget) {
    const Field F = Field::prime(5);
    // degree 3; v1 and v1^2 see 2 x1 + x2 (dependent), v2^2 sees 2 x2,
    // v2 alone sees the nonlinear x1 x2
    const auto f = parse_poly("2*x1^2*x3 + x1^2*x4 + x2*x3*x4 + x2^2*x4 + x3^2 + 4*x1", F, 4);
    const PolyBlackBox bb(f, 2);
    PreprocessOptions opt;
    opt.budget = 100000;
    opt.seed = 9;
    const auto res = preprocess(bb, opt);
    EXPECT_LE(res.evaluations, opt.budget);
    EXPECT_GE(res.rank, 1u);
    EXPECT_EQ(res.records.size(), res.rank);
    for (const auto& rec : res.records) {
        const auto sym = symbolic_superpoly(f, 2, rec.term);
        EXPECT_LE(sym.total_degree(), 1u);
        EXPECT_EQ(rec.c0, sym.coefficient(Monomial{0, 0}));
        EXPECT_EQ(rec.c[0], sym.coefficient(Monomial{1, 0}));
        EXPECT_EQ(rec.c[1], sym.coefficient(Monomial{0, 1}));
    }
    EXPECT_EQ(res.status, PreprocessStatus::full_rank);
}

TEST(Preprocess, DeterministicAcrossSeedsAndJobs) {
    const auto target = make_planted(31, 3, 4, {5, 0, 10}, 77);
    const PolyBlackBox bb(target.f, target.n_pub);
    PreprocessOptions opt;
    opt.seed = 5;
    const auto a = preprocess(bb, opt);
    const auto b = preprocess(bb, opt);
    EXPECT_EQ(a.records, b.records);
    EXPECT_EQ(a.evaluations, b.evaluations);
    EXPECT_EQ(a.terms_tried, b.terms_tried);
    opt.jobs = 4;
    const auto c = preprocess(bb, opt);
    EXPECT_EQ(a.records, c.records);
    EXPECT_EQ(c.status, a.status);
}

TEST(Properties, SoundnessOfTheLinearPath) {
    // every candidate whose symbolic superpoly is affine must pass the test
    // and be extracted exactly
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const std::uint64_t p = seed % 2 ? 5 : 31;
        const auto target = make_planted(p, 2, 3, {4, 0, 6}, seed);
        const PolyBlackBox bb(target.f, 2);
        CandidateTerms gen(2, p, 3);
        std::uint64_t idx = 0;
        while (auto t = gen.next()) {
            const auto sym = symbolic_superpoly(target.f, 2, *t);
            if (sym.total_degree() > 1) continue;
            const auto lt = linearity_test(bb, *t, default_linearity_trials(p), derive_seed(seed, idx++));
            ASSERT_NE(lt.verdict, Verdict::nonlinear);
            const auto rec = extract_linear(bb, *t);
            ASSERT_EQ(rec.c0, sym.coefficient(Monomial(3)));
            for (std::size_t i = 0; i < 3; ++i) {
                Monomial e(3);
                e[i] = 1;
                ASSERT_EQ(rec.c[i], sym.coefficient(e));
            }
        }
    }
}

TEST(Properties, CompletenessAtDegreeMargin) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::uint64_t p = seed % 2 ? 5 : 31;
        const std::uint64_t d = 3 + seed % 4;
        const auto target = make_planted(p, 3, 3, {d, 0, 8}, seed);
        for (const auto& t : detail::monomials_of_degree(3, d - 1, p - 1)) {
            ASSERT_LE(symbolic_superpoly(target.f, 3, t).total_degree(), 1u) << "seed " << seed;
        }
    }
}

TEST(Online, RecoversPlantedKey) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const std::uint64_t p = seed % 2 ? 5 : 31;
        const auto target = make_planted(p, 3, 4, {4, 0, 8}, 1000 + seed);
        const PolyBlackBox bb(target.f, target.n_pub);
        PreprocessOptions opt;
        opt.seed = seed;
        const auto pre = preprocess(bb, opt);
        ASSERT_EQ(pre.status, PreprocessStatus::full_rank);
        const auto on = online(bb, target.key, pre.records);
        ASSERT_TRUE(on.key.has_value());
        EXPECT_EQ(*on.key, target.key);
        EXPECT_EQ(on.unresolved(), 0u);
    }
}

TEST(Online, EmptyAndCorrupted) {
    const auto target = make_planted(31, 3, 3, {4, 0, 6}, 5);
    const PolyBlackBox bb(target.f, target.n_pub);
    const auto none = online(bb, target.key, {});
    EXPECT_EQ(none.rank(), 0u);
    EXPECT_EQ(none.unresolved(), 3u);
    EXPECT_FALSE(none.key.has_value());

    const auto pre = preprocess(bb, {});
    ASSERT_EQ(pre.records.size(), 3u);
    auto records = pre.records;
    std::size_t i = 0;
    while (target.key[i] == Elem{0}) ++i;
    MaxtermRecord bad = records[0];
    bad.c[i] = bb.field().add(bad.c[i], Elem{1});
    records.push_back(bad);
    const auto on = online(bb, target.key, records);
    EXPECT_EQ(on.solution.kind, Solution::Kind::inconsistent);
    EXPECT_EQ(on.inconsistent_record, std::optional<std::size_t>{3});
    EXPECT_FALSE(on.key.has_value());
}

TEST(Records, RoundTrip) {
    const auto target = make_planted(31, 2, 3, {4, 0, 6}, 8);
    const PolyBlackBox bb(target.f, target.n_pub);
    const auto pre = preprocess(bb, {});
    std::stringstream ss;
    write_records(ss, bb.field(), 1, 2, 3, pre.records);
    const auto back = read_records(ss);
    ASSERT_TRUE(back.field.has_value());
    EXPECT_EQ(*back.field, bb.field());
    EXPECT_EQ(back.seed, 1u);
    EXPECT_EQ(back.n_pub, 2u);
    EXPECT_EQ(back.n_sec, 3u);
    EXPECT_EQ(back.records, pre.records);
    std::stringstream bad("field=31 term=x1 c0=1 c=1,2 bogus=3\n");
    EXPECT_THROW(read_records(bad), ParseError);
}

}  // namespace
}  // namespace fdcube
