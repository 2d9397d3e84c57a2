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

// Bernoulli numbers, irregular pairs, and the minus part of cyclotomic class
// numbers, all in exact arithmetic. Irregularity is decided by the Bernoulli
// recurrence mod p (every B_k with k <= p-3 is p-integral); h^-(p) comes from
// the classical product of generalized Bernoulli numbers over odd characters,
// evaluated as one integer resultant.

#ifndef CLASSCOVER_BERNOULLI_HPP
#define CLASSCOVER_BERNOULLI_HPP

#include <optional>
#include <string>
#include <vector>

#include "classcover/int_arith.hpp"
#include "classcover/poly.hpp"

namespace classcover {

/// Exact Bernoulli numbers B_0..B_maxK, B_1 = -1/2 convention.
struct BernoulliTable {
    std::vector<Rat> values;

    const Rat& at(size_t k) const {
        require(k < values.size(), "Bernoulli index out of range");
        return values[k];
    }
    size_t max_index() const { return values.empty() ? 0 : values.size() - 1; }
};

inline BernoulliTable bernoulli_exact(unsigned long max_k) {
    BernoulliTable table;
    table.values.reserve(max_k + 1);
    std::vector<Rat> binom{Rat(1)};  // row of Pascal's triangle for C(m+1, j)
    for (unsigned long m = 0; m <= max_k; ++m) {
        // extend Pascal row to length m+2: C(m+1, j)
        std::vector<Rat> next(m + 2, Rat(1));
        for (unsigned long j = 1; j <= m; ++j) next[j] = binom[j - 1] + binom[j];
        binom = std::move(next);
        if (m == 0) {
            table.values.emplace_back(1);
            continue;
        }
        Rat acc(0);
        for (unsigned long j = 0; j < m; ++j) acc += binom[j] * table.values[j];
        table.values.push_back(-acc / binom[m]);  // C(m+1, m) = m+1
    }
    return table;
}

/// Product of primes p with (p-1) | k, for even k >= 2 (von Staudt-Clausen).
inline Int von_staudt_clausen_denominator(unsigned long k) {
    require(k >= 2 && k % 2 == 0, "von Staudt-Clausen needs even k >= 2");
    Int den = 1;
    for (unsigned long p = 2; p <= k + 1; ++p) {
        if (!is_prime(Int(p))) continue;
        if (k % (p - 1) == 0) den *= p;
    }
    return den;
}

/// B_0..B_(p-3) mod p via the recurrence in F_p. Every index in this range is
/// p-integral, and the divisions by m+1 <= p-2 are invertible.
inline std::vector<Int> bernoulli_mod_p(const Int& p) {
    require(is_prime(p) && p >= 3, "bernoulli_mod_p needs an odd prime");
    const unsigned long top = p.get_ui() >= 3 ? p.get_ui() - 3 : 0;
    std::vector<Int> b(top + 1, Int(0));
    b[0] = 1;
    std::vector<Int> binom{Int(1)};
    for (unsigned long m = 0; m <= top; ++m) {
        std::vector<Int> next(m + 2, Int(1));
        for (unsigned long j = 1; j <= m; ++j) next[j] = mod_floor(binom[j - 1] + binom[j], p);
        binom = std::move(next);
        if (m == 0) continue;
        Int acc = 0;
        for (unsigned long j = 0; j < m; ++j) acc += binom[j] * b[j];
        b[m] = mod_floor(-acc * invmod(Int(m + 1), p), p);
    }
    return b;
}

/// Pairs (p, k) with p dividing the numerator of B_k, k even in [2, p-3].
/// Empty exactly when p is regular.
inline std::vector<std::pair<Int, unsigned long>> irregular_pairs(const Int& p) {
    if (!is_prime(p) || p == 2) throw domain_error("irregular_pairs: odd prime required");
    std::vector<std::pair<Int, unsigned long>> pairs;
    if (p == 3) return pairs;  // vacuous range 2 <= k <= 0
    const auto b = bernoulli_mod_p(p);
    for (unsigned long k = 2; k + 3 <= p.get_ui(); k += 2)
        if (b[k] == 0) pairs.emplace_back(p, k);
    return pairs;
}

namespace detail {

inline unsigned long smallest_primitive_root(const Int& p) {
    const auto fac = factor_integer(p - 1);
    require(fac.complete(), "primitive root search needs p-1 factored");
    for (unsigned long g = 2; g < p; ++g) {
        bool primitive = true;
        for (const auto& [q, e] : fac.factors)
            if (powmod(Int(g), (p - 1) / q, p) == 1) { primitive = false; break; }
        if (primitive) return g;
    }
    throw contract_violation("no primitive root found");
}

}  // namespace detail

/// Exact minus class number h^-(p) of the p-th cyclotomic field, via
///   h^- = 2p * prod over odd characters chi of (-B_{1,chi}/2),
/// with the product of character sums evaluated as the resultant
/// Res(y^((p-1)/2) + 1, T(y)), T(y) = sum_t rep(g^t) y^t.
inline Int minus_class_number(const Int& p, unsigned long bound = 67) {
    if (!is_prime(p) || p == 2) throw domain_error("minus_class_number: odd prime required");
    if (p > bound)
        throw domain_error("minus_class_number: p = " + p.get_str() + " exceeds the bound " +
                           std::to_string(bound));
    if (p == 3) return 1;
    const unsigned long g = detail::smallest_primitive_root(p);
    const unsigned long r = (p.get_ui() - 1) / 2;
    // T(y) with integer coefficients rep(g^t) in [1, p-1]
    std::vector<Rat> tc(p.get_ui() - 1, Rat(0));
    Int pw = 1;
    for (unsigned long t = 0; t + 1 < p.get_ui(); ++t) {
        tc[t] = Rat(pw);
        pw = mod_floor(pw * g, p);
    }
    Poly big_t((std::vector<Rat>(tc)));
    Poly modulus = Poly::monomial(r) + Poly(Rat(1));  // y^r + 1
    const Poly reduced = big_t.divrem(modulus).second;
    const Rat prod = resultant(modulus, reduced);
    // h^- = 2p * (-1/(2p))^r * prod
    Rat h = Rat(2 * p) * prod;
    const Rat base = Rat(-1) / Rat(2 * p);
    for (unsigned long i = 0; i < r; ++i) h *= base;
    require(h.get_den() == 1, "h^- must be a rational integer");
    require(h > 0, "h^- must be positive");
    return h.get_num();
}

struct HerbrandRibetReport {
    Int p;
    bool regular = true;
    bool vacuous_range = false;  // p = 3: the window 2 <= k <= p-3 is empty
    std::vector<std::pair<Int, unsigned long>> pairs;
    std::optional<Int> h_minus;  // filled when p is within the h^- bound
    std::string statement;
    std::string scan_note;
};

/// Chains the regularity deduction: a regular p cannot divide h(Q(zeta_p)),
/// so any field L with p | h(L) must satisfy p | [L : Q(zeta_p)]; an
/// irregular p divides h^-(p), listing the witnessing Bernoulli indices.
inline HerbrandRibetReport herbrand_ribet_report(const Int& p,
                                                 const std::string& scan_evidence = "",
                                                 unsigned long h_minus_bound = 67) {
    HerbrandRibetReport rep;
    rep.p = p;
    rep.pairs = irregular_pairs(p);
    rep.regular = rep.pairs.empty();
    rep.vacuous_range = p == 3;
    rep.scan_note = scan_evidence;
    if (p <= h_minus_bound) rep.h_minus = minus_class_number(p, h_minus_bound);
    const std::string ps = p.get_str();
    if (rep.regular) {
        rep.statement = ps + " regular";
        if (rep.vacuous_range) rep.statement += " (the index range 2 <= k <= " + ps + "-3 is empty)";
        rep.statement += "; " + ps + " does not divide h(Q(zeta_" + ps + ")); any " + ps +
                         "-divisible L forces " + ps + " | [L:Q(zeta_" + ps + ")]";
    } else {
        rep.statement = ps + " irregular; pairs:";
        for (const auto& [q, k] : rep.pairs)
            rep.statement += " (" + ps + "," + std::to_string(k) + ")";
        rep.statement += "; " + ps + " divides h^-(" + ps + ")";
        if (rep.h_minus) {
            require(*rep.h_minus % p == 0,
                    "irregular prime must divide its minus class number");
            rep.statement += " = " + rep.h_minus->get_str();
        }
    }
    return rep;
}

}  // namespace classcover

#endif
