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

#ifndef CLASSCOVER_POLY_FACTOR_HPP
#define CLASSCOVER_POLY_FACTOR_HPP

#include <algorithm>
#include <vector>

#include "classcover/mod_poly.hpp"
#include "classcover/poly.hpp"

namespace classcover {

namespace detail {

inline Poly poly_mod_pk(const Poly& f, const Int& pk, bool centered) {
    std::vector<Int> c = f.int_coeffs();
    for (Int& x : c) {
        x = mod_floor(x, pk);
        if (centered && 2 * x > pk) x -= pk;
    }
    return Poly::from_int_coeffs(c);
}

/// One linear Hensel step: f = g*h (mod p^k) -> (mod p^(k+1)).
/// tau is the Bezout cofactor with sigma*g + tau*h = 1 (mod p); g monic.
inline void hensel_step(const Poly& f, Poly& g, Poly& h, const ModPoly& tau, const Int& p,
                        const Int& pk) {
    Poly diff = f - g * h;
    std::vector<Int> e_coeffs = diff.int_coeffs();
    for (Int& x : e_coeffs) {
        require(x % pk == 0, "hensel_step: precision mismatch");
        x = mod_floor(x / pk, p);
    }
    const ModPoly e(p, e_coeffs);
    const ModPoly gm = ModPoly::from_poly(poly_mod_pk(g, p, false), p);
    const ModPoly hm = ModPoly::from_poly(poly_mod_pk(h, p, false), p);
    const ModPoly u = (e * tau).mod(gm);
    auto [v, rem] = (e - u * hm).divrem(gm);
    require(rem.is_zero(), "hensel_step: correction not divisible");
    g = g + u.lift_centered() * Rat(pk);
    h = h + v.lift_centered() * Rat(pk);
}

/// Lift a coprime modular factorization of monic f to modulus p^levels.
/// Factor tree: split the list in two, lift f = G*H, recurse.
inline void hensel_lift_list(const Poly& f, std::vector<Poly>& factors, const Int& p,
                             unsigned long levels) {
    if (factors.size() <= 1) {
        if (!factors.empty()) factors[0] = f;
        return;
    }
    const size_t half = factors.size() / 2;
    ModPoly gm = ModPoly::constant(p, 1), hm = ModPoly::constant(p, 1);
    for (size_t i = 0; i < factors.size(); ++i) {
        const ModPoly fi = ModPoly::from_poly(factors[i], p);
        (i < half ? gm : hm) = (i < half ? gm : hm) * fi;
    }
    // Bezout cofactor of hm over F_p
    ModPoly r0 = gm, r1 = hm;
    ModPoly t0 = ModPoly::constant(p, 0), t1 = ModPoly::constant(p, 1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divrem(r1);
        r0 = std::move(r1); r1 = std::move(r);
        ModPoly t2 = t0 - (q * t1); t0 = std::move(t1); t1 = std::move(t2);
    }
    require(r0.degree() == 0, "hensel_lift_list: factors not coprime mod p");
    const ModPoly tau = t0 * invmod(r0.coeff(0), p);

    Poly g = gm.lift_centered(), h = hm.lift_centered();
    Int pk = p;
    for (unsigned long level = 1; level < levels; ++level) {
        hensel_step(f, g, h, tau, p, pk);
        pk *= p;
        g = poly_mod_pk(g, pk, true);
        h = poly_mod_pk(h, pk, true);
    }
    std::vector<Poly> left(factors.begin(), factors.begin() + half);
    std::vector<Poly> right(factors.begin() + half, factors.end());
    hensel_lift_list(g, left, p, levels);
    hensel_lift_list(h, right, p, levels);
    factors.clear();
    factors.insert(factors.end(), left.begin(), left.end());
    factors.insert(factors.end(), right.begin(), right.end());
}

inline Int coeff_bound(const Poly& f) {
    // Mignotte-style: any monic factor g of monic f has |g_i| <= 2^n * ||f||_2
    Int norm2 = 0;
    for (const Int& c : f.int_coeffs()) norm2 += c * c;
    const Int l2 = isqrt(norm2) + 1;
    return (l2 + 1) << static_cast<unsigned long>(f.degree() + 1);
}

}  // namespace detail

/// Irreducible factors of a monic squarefree integer polynomial, via
/// factor-mod-p, Hensel lifting and subset recombination. Deterministic.
inline std::vector<Poly> factor_monic_squarefree(const Poly& f) {
    require(f.is_monic_integer(), "factor_monic_squarefree: monic integer input required");
    require(is_squarefree(f), "factor_monic_squarefree: squarefree input required");
    if (f.degree() == 1) return {f};

    // choose a prime keeping f squarefree mod p, preferring few modular factors
    std::vector<std::pair<ModPoly, unsigned long>> best_modular;
    Int best_p = 0;
    int tried = 0;
    for (unsigned long p : detail::small_primes_table()) {
        const Int P(p);
        const ModPoly fp = ModPoly::from_poly(f, P);
        if (fp.degree() != f.degree()) continue;
        if (mod_gcd(fp, fp.derivative()).degree() != 0) continue;
        auto fac = factor_poly_mod_p(f, P);
        if (best_p == 0 || fac.size() < best_modular.size()) {
            best_modular = fac;
            best_p = P;
        }
        if (++tried >= 3 || best_modular.size() == 1) break;
    }
    require(best_p != 0, "factor_monic_squarefree: no usable prime found");
    if (best_modular.size() == 1) return {f};

    const Int p = best_p;
    const Int bound = detail::coeff_bound(f);
    unsigned long levels = 1;
    Int pk = p;
    while (pk <= 2 * bound) {
        pk *= p;
        ++levels;
    }
    std::vector<Poly> lifted;
    for (const auto& [g, mult] : best_modular) {
        require(mult == 1, "factor_monic_squarefree: unexpected multiplicity");
        lifted.push_back(g.lift_centered());
    }
    detail::hensel_lift_list(f, lifted, p, levels);

    // subset recombination
    std::vector<Poly> result;
    Poly rest = f;
    std::vector<size_t> alive(lifted.size());
    for (size_t i = 0; i < alive.size(); ++i) alive[i] = i;
    bool progress = true;
    while (progress && !alive.empty()) {
        progress = false;
        // a proper split has a side with at most half the modular factors
        for (size_t card = 1; card <= alive.size() / 2 && !progress; ++card) {
            std::vector<size_t> sel(card);
            for (size_t i = 0; i < card; ++i) sel[i] = i;
            while (true) {
                Poly cand(Rat(1));
                for (size_t i : sel) cand = cand * lifted[alive[i]];
                cand = detail::poly_mod_pk(cand, pk, true);
                auto [q, r] = rest.divrem(cand);
                if (r.is_zero() && q.is_integer() && cand.is_integer()) {
                    result.push_back(cand);
                    rest = q;
                    std::vector<size_t> next_alive;
                    for (size_t i = 0, s = 0; i < alive.size(); ++i) {
                        if (s < sel.size() && sel[s] == i) { ++s; continue; }
                        next_alive.push_back(alive[i]);
                    }
                    alive = std::move(next_alive);
                    progress = true;
                    break;
                }
                // next combination
                int pos = static_cast<int>(card) - 1;
                while (pos >= 0 && sel[pos] == alive.size() - card + pos) --pos;
                if (pos < 0) break;
                ++sel[pos];
                for (size_t i = pos + 1; i < card; ++i) sel[i] = sel[i - 1] + 1;
            }
        }
        if (!progress && alive.size() > 0) {
            // remaining product is irreducible over Q
            result.push_back(rest);
            alive.clear();
        }
    }
    std::sort(result.begin(), result.end(), [](const Poly& a, const Poly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (size_t i = a.degree() + 1; i-- > 0;)
            if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
        return false;
    });
    return result;
}

/// Irreducible monic factors with multiplicities for any monic integer input.
inline std::vector<std::pair<Poly, unsigned long>> factor_monic_integer(const Poly& f) {
    require(f.is_monic_integer(), "factor_monic_integer: monic integer input required");
    std::vector<std::pair<Poly, unsigned long>> out;
    // squarefree decomposition over Q (characteristic zero: Yun)
    Poly a = f;
    Poly g = poly_gcd(a, a.derivative());
    if (g.degree() == 0) {
        for (Poly& h : factor_monic_squarefree(f)) out.emplace_back(h, 1);
        return out;
    }
    Poly w = a.divrem(g).first;
    unsigned long i = 1;
    while (w.degree() > 0) {
        Poly y = poly_gcd(w, g);
        Poly fac = w.divrem(y).first;
        if (fac.degree() > 0)
            for (Poly& h : factor_monic_squarefree(fac.monic())) out.emplace_back(h, i);
        w = std::move(y);
        g = g.divrem(w).first;
        ++i;
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.first.degree() != y.first.degree()) return x.first.degree() < y.first.degree();
        for (size_t k = x.first.degree() + 1; k-- > 0;)
            if (x.first.coeff(k) != y.first.coeff(k)) return x.first.coeff(k) < y.first.coeff(k);
        return x.second < y.second;
    });
    return out;
}

inline bool is_irreducible_over_q(const Poly& f) {
    require(f.is_monic_integer() && f.degree() >= 1, "is_irreducible_over_q: monic integer input");
    if (f.degree() == 1) return true;
    if (!is_squarefree(f)) return false;
    return factor_monic_squarefree(f).size() == 1;
}

/// Classical irreducibility criterion for x^m - c over Q:
/// irreducible iff c is not a p-th power for any prime p | m,
/// and, when 4 | m, c is not of the form -4 d^4.
inline bool binomial_is_irreducible(unsigned long m, const Int& c) {
    require(m >= 1 && c != 0, "binomial_is_irreducible: bad input");
    if (m == 1) return true;
    Int root;
    for (unsigned long p = 2; p <= m; ++p) {
        if (m % p != 0 || !is_prime(Int(p))) continue;
        if (exact_root(c, p, root)) return false;
    }
    if (m % 4 == 0 && c < 0 && (-c) % 4 == 0 && exact_root((-c) / 4, 4, root)) return false;
    return true;
}

/// Irreducible factors of x^m - c, splitting perfect-power and -4d^4 patterns
/// first and handing non-binomial cofactors to the generic machinery.
inline std::vector<Poly> factor_binomial(unsigned long m, const Int& c) {
    require(c != 0, "factor_binomial: zero constant");
    std::vector<Poly> out;
    auto emit = [&](const Poly& g) {
        for (Poly& h : factor_monic_squarefree(g)) out.push_back(h);
    };
    std::vector<std::pair<unsigned long, Int>> work{{m, c}};
    while (!work.empty()) {
        auto [mm, cc] = work.back();
        work.pop_back();
        Poly binom = Poly::monomial(mm) - Poly(Rat(cc));
        if (mm == 1 || binomial_is_irreducible(mm, cc)) {
            out.push_back(binom);
            continue;
        }
        bool split = false;
        Int d;
        for (unsigned long p = 2; p <= mm && !split; ++p) {
            if (mm % p != 0 || !is_prime(Int(p))) continue;
            if (!exact_root(cc, p, d)) continue;
            // x^mm - d^p = (x^(mm/p) - d) * sum_i d^i x^((mm/p)(p-1-i))
            work.emplace_back(mm / p, d);
            std::vector<Rat> psi((mm / p) * (p - 1) + 1, Rat(0));
            Int dpow = 1;
            for (unsigned long i = 0; i < p; ++i) {
                psi[(mm / p) * (p - 1 - i)] = Rat(dpow);
                dpow *= d;
            }
            emit(Poly(std::move(psi)));
            split = true;
        }
        if (split) continue;
        if (mm % 4 == 0 && cc < 0 && (-cc) % 4 == 0 && exact_root((-cc) / 4, 4, d)) {
            // x^mm + 4d^4 = (x^(mm/2) + 2d x^(mm/4) + 2d^2)(x^(mm/2) - 2d x^(mm/4) + 2d^2)
            for (int sign : {1, -1}) {
                Poly g = Poly::monomial(mm / 2) + Poly::monomial(mm / 4, Rat(Int(2 * sign) * d)) +
                         Poly(Rat(2 * d * d));
                emit(g);
            }
            continue;
        }
        emit(binom);  // criterion said reducible but no pattern: generic path decides
    }
    std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (size_t i = a.degree() + 1; i-- > 0;)
            if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
        return false;
    });
    return out;
}

}  // namespace classcover

#endif
