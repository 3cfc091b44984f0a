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

#include <vector>

#include "fdcube/field.hpp"
#include "fdcube/rng.hpp"

namespace fdcube {
namespace {

std::vector<Field> builtin_fields() {
    return {Field::prime(2),  Field::prime(3),  Field::prime(5),  Field::prime(31),
            Field::parse("4"), Field::parse("8"), Field::parse("16"), Field::parse("3^2"),
            Field::parse("27"), Field::parse("25"), Field::parse("49")};
}

Elem draw(const Field& F, Rng& rng) { return Elem{rng.below(F.order())}; }

TEST(Field, PrimeAddition) {
    const Field F = Field::prime(31);
    EXPECT_EQ(F.add(Elem{29}, Elem{5}), Elem{3});
    EXPECT_EQ(F.add(Elem{7}, F.neg(Elem{7})), F.zero());
}

TEST(Field, Gf9Arithmetic) {
    const Field F = Field::parse("3^2/1,2,2");
    const Elem a = F.generator();
    EXPECT_EQ(F.format(F.add(a, F.add(a, F.one()))), "2*a+1");
    EXPECT_EQ(F.mul(a, a), F.add(a, F.one()));
    EXPECT_EQ(F, Field::with_default_modulus(3, 2));
}

TEST(Field, InverseMatchesBruteForce) {
    const Field F = Field::prime(31);
    EXPECT_EQ(F.inv(Elem{5}), Elem{25});
    for (std::uint64_t a = 1; a < 31; ++a) {
        std::uint64_t found = 0;
        for (std::uint64_t b = 1; b < 31; ++b) {
            if (a * b % 31 == 1) found = b;
        }
        EXPECT_EQ(F.inv(Elem{a}).code, found);
    }
    EXPECT_THROW(F.inv(F.zero()), DomainError);
}

TEST(Field, Basis) {
    const Field gf9 = Field::parse("9");
    EXPECT_EQ(gf9.basis(), (std::vector<Elem>{gf9.one(), gf9.generator()}));
    EXPECT_EQ(Field::prime(3).basis(), std::vector<Elem>{Elem{1}});
    const Field gf8 = Field::parse("8");
    const Elem a = gf8.generator();
    EXPECT_EQ(gf8.basis(), (std::vector<Elem>{gf8.one(), a, gf8.mul(a, a)}));
}

TEST(Field, Axioms) {
    Rng rng(11);
    for (const Field& F : builtin_fields()) {
        for (int i = 0; i < 300; ++i) {
            const Elem a = draw(F, rng), b = draw(F, rng), c = draw(F, rng);
            ASSERT_EQ(F.add(F.add(a, b), c), F.add(a, F.add(b, c)));
            ASSERT_EQ(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)));
            ASSERT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
            ASSERT_EQ(F.mul(a, b), F.mul(b, a));
            ASSERT_EQ(F.add(a, F.neg(a)), F.zero());
            if (!F.is_zero(a)) {
                ASSERT_EQ(F.mul(a, F.inv(a)), F.one());
                ASSERT_EQ(F.pow(a, F.order() - 1), F.one());
            }
            ASSERT_EQ(F.pow(a, F.order()), a);
            const auto p = F.characteristic();
            ASSERT_EQ(F.pow(F.add(a, b), p), F.add(F.pow(a, p), F.pow(b, p)));
        }
    }
}

TEST(Field, UntabulatedFieldsAndWordSizedPrimes) {
    const Field F = Field::with_default_modulus(2, 4);
    for (std::uint64_t a = 0; a < 16; ++a) {
        Elem acc = F.one();
        for (int k = 0; k < 3; ++k) acc = F.mul(acc, Elem{a});
        EXPECT_EQ(F.pow(Elem{a}, 3), acc);
    }
    const Field big = Field::parse("17^2/1,0,3");  // 289 elements: no tables
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const Elem a = draw(big, rng);
        if (big.is_zero(a)) continue;
        ASSERT_EQ(big.mul(a, big.inv(a)), big.one());
        ASSERT_EQ(big.pow(a, big.order() - 1), big.one());
    }
    const Field mersenne = Field::prime(2147483647);
    EXPECT_EQ(mersenne.mul(Elem{2147483646}, Elem{2147483646}), Elem{1});
}

TEST(Field, RejectsBadSpecs) {
    EXPECT_THROW(Field::prime(1), InvalidArgument);
    EXPECT_THROW(Field::prime(33), InvalidArgument);
}

TEST(Field, CustomIrreducibleModulusAccepted) {
    const Field F = Field::parse("3^2/1,0,1");  // x^2+1, -1 is a non-residue mod 3
    EXPECT_EQ(F.mul(F.generator(), F.generator()), F.from_int(-1));
}

TEST(Field, ParseAndFormat) {
    EXPECT_EQ(Field::parse("31").spec_text(), "31");
    EXPECT_EQ(Field::parse("9").spec_text(), "3^2/1,2,2");
    EXPECT_EQ(Field::parse("3^2").spec_text(), "3^2/1,2,2");
    EXPECT_THROW(Field::parse("3^2/1,0,2"), InvalidArgument);  // x^2+2 = (x+1)(x+2) mod 3
    EXPECT_THROW(Field::parse("10"), InvalidArgument);
    EXPECT_THROW(Field::parse("x"), ParseError);
    const Field F = Field::parse("9");
    for (std::uint64_t c = 0; c < 9; ++c) EXPECT_EQ(F.parse_element(F.format(Elem{c})), Elem{c});
    EXPECT_EQ(F.parse_element("(a^2)"), F.add(F.generator(), F.one()));
    EXPECT_THROW(Field::prime(7).parse_element("a"), ParseError);
}

TEST(Field, Coordinates) {
    const Field F = Field::parse("27");
    for (std::uint64_t c = 0; c < 27; ++c) {
        const auto v = F.coords(Elem{c});
        EXPECT_EQ(F.from_coords(v), Elem{c});
    }
    EXPECT_THROW(F.check(Elem{27}), InvalidArgument);
    EXPECT_EQ(F.from_int(-1), Elem{2});
}

}  // namespace
}  // namespace fdcube
