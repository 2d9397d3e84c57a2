/*
   Copyright 2026 the classcover authors

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "classcover/bernoulli.hpp"
#include "oracles.hpp"

using namespace classcover;

TEST_CASE("exact Bernoulli numbers") {
    auto table = bernoulli_exact(20);
    CHECK(table.at(0) == Rat(1));
    CHECK(table.at(1) == make_rat(-1, 2));
    CHECK(table.at(2) == make_rat(1, 6));
    CHECK(table.at(7) == Rat(0));
    CHECK(table.at(12) == make_rat(-691, 2730));
    CHECK(table.at(20) == make_rat(-174611, 330));
    for (size_t k = 3; k <= 19; k += 2) CHECK(table.at(k) == Rat(0));
}

TEST_CASE("von Staudt-Clausen denominators") {
    auto table = bernoulli_exact(40);
    for (unsigned long k = 2; k <= 40; k += 2) {
        CHECK(table.at(k).get_den() == von_staudt_clausen_denominator(k));
    }
    CHECK(von_staudt_clausen_denominator(12) == 2730);  // 2*3*5*7*13
}

TEST_CASE("exact values reduce to the power-sum oracle mod p") {
    // independent oracle: B_k = S_k(p)/p mod p, with S_k(p) = sum a^k mod p^2
    auto table = bernoulli_exact(60);
    SplitMix64 rng(2026);
    int done = 0;
    while (done < 50) {
        const std::vector<long> ps{7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
        const Int p(ps[static_cast<size_t>(rng.below(ps.size()).get_ui())]);
        const unsigned long k = 1 + rng.below(std::min<Int>(Int(59), p - 3)).get_ui();
        const Int p2 = p * p;
        Int s = 0;
        for (Int a = 1; a < p; ++a) s = (s + powmod(a, Int(k), p2)) % p2;
        require(s % p == 0, "power sum must be divisible by p for k <= p-3");
        const Int oracle = mod_floor(s / p, p);
        const Rat& exact = table.at(k);
        const Int reduced = mod_floor(exact.get_num() * invmod(exact.get_den(), p), p);
        CHECK(reduced == oracle);
        ++done;
    }
}

TEST_CASE("modular Bernoulli matches exact values") {
    auto table = bernoulli_exact(50);
    for (long pl : {5, 7, 11, 13, 37, 53}) {
        const Int p(pl);
        auto b = bernoulli_mod_p(p);
        for (unsigned long k = 0; k + 3 <= static_cast<unsigned long>(pl) && k <= 50; ++k) {
            const Rat& exact = table.at(k);
            CHECK(b[k] == mod_floor(exact.get_num() * invmod(exact.get_den(), p), p));
        }
    }
}

TEST_CASE("irregular pairs") {
    CHECK(irregular_pairs(Int(3)).empty());
    CHECK(irregular_pairs(Int(5)).empty());
    CHECK(irregular_pairs(Int(7)).empty());
    CHECK(irregular_pairs(Int(11)).empty());
    CHECK(irregular_pairs(Int(13)).empty());
    {
        auto pairs = irregular_pairs(Int(37));
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0] == std::pair<Int, unsigned long>{Int(37), 32});
    }
    {
        auto pairs = irregular_pairs(Int(59));
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0] == std::pair<Int, unsigned long>{Int(59), 44});
    }
    {
        auto pairs = irregular_pairs(Int(691));
        bool found12 = false;
        for (auto& [p, k] : pairs) found12 |= (k == 12);
        CHECK(found12);  // 691 | numerator(B_12)
    }
    CHECK_THROWS_AS(irregular_pairs(Int(6)), domain_error);
    CHECK_THROWS_AS(irregular_pairs(Int(2)), domain_error);
}

TEST_CASE("minus class numbers") {
    CHECK(minus_class_number(Int(3)) == 1);
    CHECK(minus_class_number(Int(5)) == 1);
    CHECK(minus_class_number(Int(7)) == 1);
    CHECK(minus_class_number(Int(19)) == 1);
    CHECK(minus_class_number(Int(23)) == 3);
    CHECK(minus_class_number(Int(29)) == 8);
    CHECK(minus_class_number(Int(37)) == 37);
    CHECK(minus_class_number(Int(41)) == 121);
    CHECK_THROWS_AS(minus_class_number(Int(71)), domain_error);  // beyond the default bound
    CHECK_THROWS_AS(minus_class_number(Int(4)), domain_error);
}

TEST_CASE("Herbrand-Ribet consistency: irregular iff p | h^-") {
    for (unsigned long p = 3; p <= 67; ++p) {
        if (!is_prime(Int(p))) continue;
        const bool irregular = !irregular_pairs(Int(p)).empty();
        const Int hm = minus_class_number(Int(p));
        CHECK(irregular == (hm % p == 0));
    }
}

TEST_CASE("herbrand_ribet_report") {
    {
        auto rep = herbrand_ribet_report(Int(5));
        CHECK(rep.regular);
        CHECK(!rep.vacuous_range);
        CHECK(rep.statement.find("5 regular") != std::string::npos);
        CHECK(rep.statement.find("does not divide h(Q(zeta_5))") != std::string::npos);
        CHECK(rep.statement.find("5 | [L:Q(zeta_5)]") != std::string::npos);
        REQUIRE(rep.h_minus.has_value());
        CHECK(*rep.h_minus == 1);
    }
    {
        auto rep = herbrand_ribet_report(Int(37));
        CHECK(!rep.regular);
        REQUIRE(rep.pairs.size() == 1);
        CHECK(rep.pairs[0].second == 32);
        REQUIRE(rep.h_minus.has_value());
        CHECK(*rep.h_minus == 37);
        CHECK(rep.statement.find("irregular") != std::string::npos);
    }
    {
        auto rep = herbrand_ribet_report(Int(3));
        CHECK(rep.regular);
        CHECK(rep.vacuous_range);
        CHECK(rep.statement.find("empty") != std::string::npos);
    }
}
