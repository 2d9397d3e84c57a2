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

#ifndef CLASSCOVER_MOD_POLY_HPP
#define CLASSCOVER_MOD_POLY_HPP

#include <algorithm>
#include <vector>

#include "classcover/poly.hpp"

namespace classcover {

/// Polynomial over F_p, coefficients stored ascending in [0, p).
class ModPoly {
  public:
    ModPoly() = default;
    ModPoly(Int p, std::vector<Int> ascending) : p_(std::move(p)), c_(std::move(ascending)) {
        reduce();
    }

    static ModPoly from_poly(const Poly& f, const Int& p) {
        require(f.is_integer(), "ModPoly reduction needs integer coefficients");
        std::vector<Int> c;
        for (const Int& x : f.int_coeffs()) c.push_back(mod_floor(x, p));
        return ModPoly(p, std::move(c));
    }

    static ModPoly x(const Int& p) { return ModPoly(p, {Int(0), Int(1)}); }
    static ModPoly constant(const Int& p, const Int& v) { return ModPoly(p, {v}); }

    const Int& p() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Int coeff(size_t i) const { return i < c_.size() ? c_[i] : Int(0); }
    const std::vector<Int>& coeffs() const { return c_; }

    bool operator==(const ModPoly& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator<(const ModPoly& o) const {  // canonical order: degree, then lex on coeffs
        if (degree() != o.degree()) return degree() < o.degree();
        for (size_t i = c_.size(); i-- > 0;)
            if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
        return false;
    }

    ModPoly operator+(const ModPoly& o) const {
        std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
        for (size_t i = 0; i < r.size(); ++i) r[i] = mod_floor(coeff(i) + o.coeff(i), p_);
        return ModPoly(p_, std::move(r));
    }

    ModPoly operator-(const ModPoly& o) const {
        std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
        for (size_t i = 0; i < r.size(); ++i) r[i] = mod_floor(coeff(i) - o.coeff(i), p_);
        return ModPoly(p_, std::move(r));
    }

    ModPoly operator*(const ModPoly& o) const {
        if (is_zero() || o.is_zero()) return ModPoly(p_, {});
        std::vector<Int> r(c_.size() + o.c_.size() - 1, Int(0));
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        }
        for (Int& x : r) x = mod_floor(x, p_);
        return ModPoly(p_, std::move(r));
    }

    ModPoly operator*(const Int& s) const {
        std::vector<Int> r = c_;
        for (Int& x : r) x = mod_floor(x * s, p_);
        return ModPoly(p_, std::move(r));
    }

    std::pair<ModPoly, ModPoly> divrem(const ModPoly& d) const {
        require(!d.is_zero(), "ModPoly division by zero");
        const Int lead_inv = invmod(d.c_.back(), p_);
        std::vector<Int> rem = c_;
        std::vector<Int> quo(std::max<int>(degree() - d.degree() + 1, 0), Int(0));
        for (int i = degree(); i >= d.degree(); --i) {
            if (rem.empty() || static_cast<int>(rem.size()) - 1 < i) continue;
            Int f = mod_floor(rem[i] * lead_inv, p_);
            if (f == 0) {
                rem.pop_back();
                continue;
            }
            quo[i - d.degree()] = f;
            for (int j = 0; j <= d.degree(); ++j)
                rem[i - d.degree() + j] = mod_floor(rem[i - d.degree() + j] - f * d.c_[j], p_);
            while (!rem.empty() && rem.back() == 0) rem.pop_back();
        }
        return {ModPoly(p_, std::move(quo)), ModPoly(p_, std::move(rem))};
    }

    ModPoly mod(const ModPoly& d) const { return divrem(d).second; }

    ModPoly monic() const {
        require(!is_zero(), "monic of zero");
        return *this * invmod(c_.back(), p_);
    }

    ModPoly derivative() const {
        if (c_.size() <= 1) return ModPoly(p_, {});
        std::vector<Int> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = mod_floor(c_[i] * Int(i), p_);
        return ModPoly(p_, std::move(r));
    }

    Int eval(const Int& x) const {
        Int acc = 0;
        for (size_t i = c_.size(); i-- > 0;) acc = mod_floor(acc * x + c_[i], p_);
        return acc;
    }

    /// Lift to an integer polynomial with coefficients in [0, p).
    Poly lift() const {
        std::vector<Int> c = c_;
        return Poly::from_int_coeffs(c);
    }

    /// Lift with coefficients in (-p/2, p/2] (symmetric residues).
    Poly lift_centered() const {
        std::vector<Int> c = c_;
        for (Int& x : c)
            if (2 * x > p_) x -= p_;
        return Poly::from_int_coeffs(c);
    }

  private:
    void reduce() {
        for (Int& x : c_) x = mod_floor(x, p_);
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    Int p_ = 2;
    std::vector<Int> c_;
};

inline ModPoly mod_gcd(ModPoly a, ModPoly b) {
    while (!b.is_zero()) {
        ModPoly r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

/// base^e mod f, binary powering with arbitrary-precision exponent.
inline ModPoly mod_powmod(const ModPoly& base, const Int& e, const ModPoly& f) {
    require(e >= 0, "mod_powmod: negative exponent");
    ModPoly result = ModPoly::constant(base.p(), 1);
    ModPoly b = base.mod(f);
    const size_t bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        result = (result * result).mod(f);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * b).mod(f);
    }
    return result;
}

namespace detail {

inline ModPoly pth_root_over_prime_field(const ModPoly& f) {
    // f = h(x^p) over F_p; Frobenius fixes F_p so the root keeps coefficients
    const unsigned long p = f.p().get_ui();
    std::vector<Int> r;
    for (int i = 0; i * static_cast<long>(p) <= f.degree(); ++i) r.push_back(f.coeff(i * p));
    return ModPoly(f.p(), std::move(r));
}

inline void squarefree_decomp(const ModPoly& f, unsigned long mult,
                              std::vector<std::pair<ModPoly, unsigned long>>& out) {
    if (f.degree() <= 0) return;
    const ModPoly fp = f.derivative();
    if (fp.is_zero()) {
        require(f.p().fits_ulong_p(), "p-th root step needs small p");
        squarefree_decomp(pth_root_over_prime_field(f), mult * f.p().get_ui(), out);
        return;
    }
    ModPoly g = mod_gcd(f, fp);
    ModPoly w = f.divrem(g).first;
    unsigned long i = 1;
    while (w.degree() > 0) {
        ModPoly y = mod_gcd(w, g);
        ModPoly fac = w.divrem(y).first;
        if (fac.degree() > 0) out.emplace_back(fac.monic(), mult * i);
        w = std::move(y);
        g = g.divrem(w).first;
        ++i;
    }
    if (g.degree() > 0) {
        require(f.p().fits_ulong_p(), "p-th root step needs small p");
        squarefree_decomp(pth_root_over_prime_field(g), mult * f.p().get_ui(), out);
    }
}

/// Berlekamp for small p: deterministic splitting by exhausting c in F_p.
inline std::vector<ModPoly> berlekamp_squarefree(const ModPoly& f) {
    const Int& p = f.p();
    const size_t n = f.degree();
    if (n <= 1) return {f.monic()};
    // Frobenius matrix rows: x^(ip) mod f
    IntMatrix frob(n, n);
    const ModPoly xp = mod_powmod(ModPoly::x(p), p, f);
    ModPoly pw = ModPoly::constant(p, 1);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) frob(i, j) = pw.coeff(j);
        pw = (pw * xp).mod(f);
    }
    IntMatrix m(n, n);  // (frob - I) transposed: right kernel = fixed polynomials
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m(j, i) = mod_floor(frob(i, j) - Int(i == j ? 1 : 0), p);
    const auto kernel = kernel_mod_p(m, p);
    const size_t r = kernel.size();  // number of irreducible factors
    std::vector<ModPoly> factors{f.monic()};
    if (r <= 1) return factors;
    for (const auto& vec : kernel) {
        if (factors.size() == r) break;
        ModPoly v(p, vec);
        if (v.degree() <= 0) continue;  // the constant subalgebra element
        std::vector<ModPoly> next;
        for (const ModPoly& w : factors) {
            ModPoly rest = w;
            for (Int c = 0; c < p && rest.degree() > 0; ++c) {
                ModPoly g = mod_gcd(rest, v - ModPoly::constant(p, c));
                if (g.degree() > 0 && g.degree() < rest.degree()) {
                    next.push_back(g);
                    rest = rest.divrem(g).first;
                }
            }
            if (rest.degree() > 0) next.push_back(rest.monic());
        }
        factors = std::move(next);
    }
    return factors;
}

inline void cz_equal_degree(const ModPoly& g, int d, SplitMix64& rng, std::vector<ModPoly>& out) {
    if (g.degree() == d) {
        out.push_back(g.monic());
        return;
    }
    const Int& p = g.p();
    require(p % 2 == 1, "Cantor-Zassenhaus requires odd p");
    Int e = (pow_int(p, d) - 1) / 2;
    while (true) {
        std::vector<Int> c(g.degree());
        for (auto& x : c) x = rng.below(p);
        ModPoly u(p, std::move(c));
        if (u.degree() < 1) continue;
        ModPoly s = mod_powmod(u, e, g) - ModPoly::constant(p, 1);
        ModPoly h = mod_gcd(s, g);
        if (h.degree() > 0 && h.degree() < g.degree()) {
            cz_equal_degree(h, d, rng, out);
            cz_equal_degree(g.divrem(h).first, d, rng, out);
            return;
        }
    }
}

inline std::vector<ModPoly> cz_squarefree(const ModPoly& f) {
    const Int& p = f.p();
    std::vector<std::pair<ModPoly, int>> by_degree;  // distinct-degree split
    ModPoly rest = f.monic();
    ModPoly h = ModPoly::x(p);
    int k = 1;
    while (rest.degree() >= 2 * k) {
        h = mod_powmod(h, p, rest);
        ModPoly g = mod_gcd(h - ModPoly::x(p), rest);
        if (g.degree() > 0) {
            by_degree.emplace_back(g, k);
            rest = rest.divrem(g).first;
            h = h.mod(rest);
        }
        ++k;
    }
    if (rest.degree() > 0) by_degree.emplace_back(rest, rest.degree());
    std::vector<ModPoly> out;
    SplitMix64 rng(0x62657268616d70ULL);
    for (const auto& [g, d] : by_degree) cz_equal_degree(g, d, rng, out);
    return out;
}

}  // namespace detail

/// Full factorization of f over F_p: monic irreducible factors with
/// multiplicities, sorted canonically (degree, then coefficient order).
/// Berlekamp below p = 100, distinct-degree + Cantor-Zassenhaus above.
inline std::vector<std::pair<ModPoly, unsigned long>> factor_poly_mod_p(const Poly& f, const Int& p) {
    if (!is_prime(p)) throw domain_error("factor_poly_mod_p: modulus " + p.get_str() + " is not prime");
    ModPoly fp = ModPoly::from_poly(f, p);
    if (fp.is_zero()) throw domain_error("factor_poly_mod_p: polynomial vanishes mod p");
    std::vector<std::pair<ModPoly, unsigned long>> squarefree_parts;
    detail::squarefree_decomp(fp.monic(), 1, squarefree_parts);
    std::vector<std::pair<ModPoly, unsigned long>> out;
    for (const auto& [part, mult] : squarefree_parts) {
        std::vector<ModPoly> irreducibles =
            p < 100 ? detail::berlekamp_squarefree(part) : detail::cz_squarefree(part);
        for (ModPoly& g : irreducibles) out.emplace_back(g.monic(), mult);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (!(a.first == b.first)) return a.first < b.first;
        return a.second < b.second;
    });
    return out;
}

}  // namespace classcover

#endif
