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

#include "classcover/poly.hpp"
#include "classcover/mod_poly.hpp"
#include "classcover/poly_factor.hpp"
#include "oracles.hpp"

using namespace classcover;

namespace {

Poly P(const std::string& desc) { return parse_poly_desc(desc); }

}  // namespace

TEST_CASE("poly basics and parsing") {
    Poly f = P("1,0,-31");  // x^2 - 31
    CHECK(f.degree() == 2);
    CHECK(f.coeff(0) == -31);
    CHECK(f.to_string() == "x^2-31");
    CHECK(P("1,0,0,0,0,-31").to_string() == "x^5-31");
    CHECK(P("1/2,0,1/3").coeff(2) == Rat(1, 2));
    CHECK_THROWS_AS(P("1,,2"), domain_error);
    CHECK_THROWS_AS(P("x"), domain_error);
    const Poly g = P("2,1");
    auto [q, r] = f.divrem(g);
    CHECK((q * g + r) == f);
}

TEST_CASE("poly_discriminant examples") {
    CHECK(poly_discriminant(P("1,0,1")) == Rat(-4));         // x^2 + 1
    CHECK(poly_discriminant(P("1,0,0,0,0,-2")) == Rat(50000));  // x^5 - 2
    CHECK(poly_discriminant(P("1,-2,1")) == Rat(0));         // (x-1)^2
    CHECK_THROWS_AS(poly_discriminant(P("5")), domain_error);
    // formula disc(x^n - a) = (-1)^(n(n-1)/2) n^n a^(n-1) against the resultant route
    for (long a : {2L, 3L, 212L, -7L}) {
        Poly f = Poly::monomial(5) - Poly(Rat(Int(a)));
        Rat expect = Rat(pow_int(Int(5), 5) * pow_int(Int(a), 4));
        CHECK(poly_discriminant(f) == expect);
    }
}

TEST_CASE("discriminant vanishes exactly on non-squarefree input") {
    SplitMix64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Rat> c;
        const int deg = 2 + trial % 4;
        for (int i = 0; i <= deg; ++i) c.emplace_back(Int(rng.below(11)) - 5);
        Poly f(std::move(c));
        if (f.degree() < 1) continue;
        const bool sf = is_squarefree(f);
        CHECK((poly_discriminant(f) != 0) == sf);
    }
}

TEST_CASE("sturm signature") {
    CHECK(sturm_signature(P("1,0,1")) == std::pair<int, int>{0, 1});
    CHECK(sturm_signature(P("1,0,-10")) == std::pair<int, int>{2, 0});
    CHECK(sturm_signature(P("1,0,0,0,0,-2")) == std::pair<int, int>{1, 2});
    CHECK_THROWS_AS(sturm_signature(P("1,-2,1")), domain_error);
    // sign of disc = (-1)^r2 for squarefree f, r1 + 2 r2 = deg f
    SplitMix64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Rat> c;
        const int deg = 2 + trial % 4;
        for (int i = 0; i < deg; ++i) c.emplace_back(Int(rng.below(15)) - 7);
        c.emplace_back(1);
        Poly f(std::move(c));
        if (!is_squarefree(f)) continue;
        auto [r1, r2] = sturm_signature(f);
        CHECK(r1 + 2 * r2 == f.degree());
        const Rat d = poly_discriminant(f);
        CHECK((d > 0) == (r2 % 2 == 0));
    }
}

TEST_CASE("factor_poly_mod_p examples") {
    const Poly f = P("1,0,1");  // x^2 + 1
    auto f5 = factor_poly_mod_p(f, 5);
    REQUIRE(f5.size() == 2);
    CHECK(f5[0].first.lift().to_string() == "x+2");
    CHECK(f5[1].first.lift().to_string() == "x+3");
    // oracle: exhaustive roots mod 5
    auto roots = oracles::roots_mod_p(f, 5);
    CHECK(roots == std::vector<Int>{2, 3});

    auto f3 = factor_poly_mod_p(f, 3);
    REQUIRE(f3.size() == 1);
    CHECK(f3[0].first.degree() == 2);
    CHECK(f3[0].second == 1);
    CHECK(oracles::roots_mod_p(f, 3).empty());

    auto f2 = factor_poly_mod_p(f, 2);
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].first.lift().to_string() == "x+1");
    CHECK(f2[0].second == 2);

    CHECK_THROWS_AS(factor_poly_mod_p(f, 6), domain_error);
}

TEST_CASE("factor_poly_mod_p degree sum and product reconstruction") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        const Int p = trial % 2 == 0 ? Int(7) : Int(101);  // Berlekamp and CZ paths
        std::vector<Rat> c;
        const int deg = 2 + trial % 5;
        for (int i = 0; i < deg; ++i) c.emplace_back(Int(rng.below(20)));
        c.emplace_back(1);
        Poly f(std::move(c));
        auto fac = factor_poly_mod_p(f, p);
        int degsum = 0;
        ModPoly prod = ModPoly::constant(p, 1);
        for (const auto& [g, e] : fac) {
            degsum += g.degree() * static_cast<int>(e);
            for (unsigned long k = 0; k < e; ++k) prod = prod * g;
        }
        const ModPoly fp = ModPoly::from_poly(f, p);
        CHECK(degsum == fp.degree());
        CHECK(prod.monic() == fp.monic());
    }
}

TEST_CASE("rational factorization: binomial patterns") {
    auto f1 = factor_binomial(5, Int(1));  // y^5 - 1
    REQUIRE(f1.size() == 2);
    CHECK(f1[0].to_string() == "x-1");
    CHECK(f1[1].to_string() == "x^4+x^3+x^2+x+1");

    auto f2 = factor_binomial(5, Int(212));
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].degree() == 5);

    auto f3 = factor_binomial(4, Int(-4));  // Sophie Germain split
    REQUIRE(f3.size() == 2);
    CHECK((f3[0] * f3[1]).to_string() == "x^4+4");

    auto f4 = factor_binomial(4, Int(16));
    REQUIRE(f4.size() == 3);
    CHECK(f4[0].to_string() == "x-2");
    CHECK(f4[1].to_string() == "x+2");
    CHECK(f4[2].to_string() == "x^2+4");

    auto f5 = factor_binomial(2, Int(-21));
    REQUIRE(f5.size() == 1);
    CHECK(f5[0].to_string() == "x^2+21");

    CHECK(binomial_is_irreducible(5, Int(212)));
    CHECK(!binomial_is_irreducible(5, Int(1)));
    CHECK(!binomial_is_irreducible(4, Int(-4)));
    CHECK(binomial_is_irreducible(2, Int(-1)));
}

TEST_CASE("rational factorization: generic products recombine") {
    const std::vector<Poly> parts{P("1,1,1"), P("1,0,-2"), P("1,3"), P("1,0,0,2")};
    SplitMix64 rng(31);
    for (int trial = 0; trial < 12; ++trial) {
        Poly prod(Rat(1));
        std::vector<int> picks;
        for (int i = 0; i < 3; ++i) {
            int k = static_cast<int>(rng.below(parts.size()).get_si());
            picks.push_back(k);
            prod = prod * parts[k];
        }
        auto fac = factor_monic_integer(prod);
        Poly re(Rat(1));
        unsigned long total = 0;
        for (const auto& [g, e] : fac) {
            CHECK(is_irreducible_over_q(g));
            for (unsigned long k = 0; k < e; ++k) re = re * g;
            total += e * g.degree();
        }
        CHECK(re == prod);
        CHECK(total == static_cast<unsigned long>(prod.degree()));
    }
}

TEST_CASE("irreducibility checks") {
    CHECK(is_irreducible_over_q(P("1,0,0,0,0,-212")));
    CHECK(is_irreducible_over_q(P("1,0,-1,-1")));       // x^3 - x - 1
    CHECK(!is_irreducible_over_q(P("1,0,-1")));
    CHECK(!is_irreducible_over_q(P("1,2,1")));
}
