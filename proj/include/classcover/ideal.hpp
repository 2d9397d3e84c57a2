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

#ifndef CLASSCOVER_IDEAL_HPP
#define CLASSCOVER_IDEAL_HPP

#include <memory>
#include <string>
#include <vector>

#include "classcover/number_field.hpp"

namespace classcover {

/// Fractional ideal in canonical form: (1/den) times the lattice spanned by
/// the rows of num, which are coordinates over the field's integral basis.
/// num is in HNF and gcd(content(num), den) = 1.
struct FracIdealHNF {
    std::shared_ptr<const NumberField> field;
    IntMatrix num;
    Int den = 1;

    bool operator==(const FracIdealHNF& o) const {
        return field->defining_poly == o.field->defining_poly && den == o.den && num == o.num;
    }
    bool is_integral() const { return den == 1; }

    std::string to_string() const {
        std::string s = "[";
        for (size_t i = 0; i < num.rows(); ++i) {
            s += i ? ";" : "";
            for (size_t j = 0; j < num.cols(); ++j) s += (j ? "," : "") + num(i, j).get_str();
        }
        s += "]/" + den.get_str();
        return s;
    }
};

namespace detail {

inline FracIdealHNF ideal_from_rows(std::shared_ptr<const NumberField> field, IntMatrix rows,
                                    Int den) {
    require(den > 0, "ideal denominator must be positive");
    IntMatrix h = hnf(std::move(rows));
    require(h.rows() == field->degree, "ideal lattice must have full rank");
    Int g = den;
    for (size_t i = 0; i < h.rows() && g != 1; ++i)
        for (size_t j = 0; j < h.cols() && g != 1; ++j) g = gcd(g, h(i, j));
    if (g > 1) {
        for (size_t i = 0; i < h.rows(); ++i)
            for (size_t j = 0; j < h.cols(); ++j) h(i, j) /= g;
        den /= g;
    }
    return FracIdealHNF{std::move(field), std::move(h), std::move(den)};
}

}  // namespace detail

inline FracIdealHNF unit_ideal(std::shared_ptr<const NumberField> field) {
    const size_t n = field->degree;
    return FracIdealHNF{std::move(field), IntMatrix::identity(n), Int(1)};
}

/// The O-module generated by field elements (power-basis coordinates).
inline FracIdealHNF ideal_from_generators(std::shared_ptr<const NumberField> field,
                                          const std::vector<std::vector<Rat>>& gens) {
    const size_t n = field->degree;
    bool nonzero = false;
    for (const auto& g : gens)
        for (const Rat& c : g)
            if (c != 0) nonzero = true;
    if (!nonzero) throw domain_error("ideal_from_generators: all generators are zero");
    // rows: integral coordinates of g * w_i, over a common denominator
    std::vector<std::vector<Rat>> rows;
    for (const auto& g : gens) {
        for (size_t i = 0; i < n; ++i) {
            const auto prod = field->elem_mul(g, field->basis_elem(i));
            rows.push_back(field->power_to_integral(prod));
        }
    }
    Int den = 1;
    for (const auto& r : rows)
        for (const Rat& c : r) den = lcm(den, c.get_den());
    IntMatrix m(rows.size(), n);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < n; ++j) {
            Rat v = rows[i][j] * Rat(den);
            require(v.get_den() == 1, "ideal rows: denominator clearing failed");
            m(i, j) = v.get_num();
        }
    return detail::ideal_from_rows(field, std::move(m), den);
}

inline FracIdealHNF ideal_from_rational(std::shared_ptr<const NumberField> field, const Rat& q) {
    if (q == 0) throw domain_error("zero ideal");
    std::vector<Rat> g(field->degree, Rat(0));
    g[0] = q;
    return ideal_from_generators(field, {g});
}

/// Prime ideal (p, h(theta)) from a splitting factor.
inline FracIdealHNF prime_ideal(std::shared_ptr<const NumberField> field, const Int& p,
                                const Poly& two_gen_poly) {
    std::vector<Rat> gen_p(field->degree, Rat(0));
    gen_p[0] = Rat(p);
    return ideal_from_generators(field, {gen_p, field->elem_from_poly(two_gen_poly)});
}

inline FracIdealHNF ideal_mul(const FracIdealHNF& a, const FracIdealHNF& b) {
    require(a.field->defining_poly == b.field->defining_poly, "ideal_mul: field mismatch");
    const size_t n = a.field->degree;
    IntMatrix rows(n * n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            // product of basis row i of a and basis row j of b, integral coords
            for (size_t u = 0; u < n; ++u) {
                if (a.num(i, u) == 0) continue;
                for (size_t v = 0; v < n; ++v) {
                    if (b.num(j, v) == 0) continue;
                    const Int coef = a.num(i, u) * b.num(j, v);
                    for (size_t k = 0; k < n; ++k)
                        rows(i * n + j, k) += coef * a.field->mult_table[u](v, k);
                }
            }
        }
    return detail::ideal_from_rows(a.field, std::move(rows), a.den * b.den);
}

inline FracIdealHNF ideal_pow(const FracIdealHNF& a, unsigned long e) {
    FracIdealHNF acc = unit_ideal(a.field);
    FracIdealHNF base = a;
    while (e > 0) {
        if (e & 1) acc = ideal_mul(acc, base);
        e >>= 1;
        if (e > 0) base = ideal_mul(base, base);
    }
    return acc;
}

/// |det(num)| / den^degree.
inline Rat ideal_norm(const FracIdealHNF& a) {
    const Int d = classcover::abs(bareiss_det(a.num));
    return make_rat(d, pow_int(a.den, static_cast<unsigned long>(a.field->degree)));
}

/// Membership test for an element given in power-basis coordinates.
inline bool ideal_contains(const FracIdealHNF& a, const std::vector<Rat>& power_coords) {
    auto coords = a.field->power_to_integral(power_coords);
    for (Rat& c : coords) c *= Rat(a.den);
    try {
        for (const Rat& c : solve_against_hnf(a.num, std::move(coords)))
            if (c.get_den() != 1) return false;
    } catch (const contract_violation&) {
        return false;
    }
    return true;
}

enum class Principality { principal, nonprincipal, unknown };

inline std::string to_string(Principality p) {
    switch (p) {
        case Principality::principal: return "principal";
        case Principality::nonprincipal: return "nonprincipal";
        case Principality::unknown: return "unknown";
    }
    return "?";
}

/// Outcome of a principality test. A principal verdict carries a generator
/// (power-basis coordinates); a nonprincipal verdict carries the proof tag;
/// unknown records the exhausted search radius.
struct PrincipalityResult {
    Principality verdict = Principality::unknown;
    std::vector<Rat> witness;  // generator, power coords
    std::string proof_tag;
    unsigned long radius_used = 0;
};

/// Effort knob for the degree >= 3 bounded search.
struct PrincipalityEffort {
    unsigned long radius = 3;
};

namespace detail {
// quadratic-field principality lives in bqf.hpp
PrincipalityResult quadratic_is_principal(const FracIdealHNF& a);
}  // namespace detail

/// Exact principality for degree <= 2 (reduction theory); bounded box search
/// with an explicit radius for degree >= 3, where "unknown" is an honest
/// outcome, never coerced.
inline PrincipalityResult is_principal(const FracIdealHNF& a, const PrincipalityEffort& effort = {}) {
    const size_t n = a.field->degree;
    // principality is invariant under rational scaling; work with the
    // numerator lattice as an integral ideal and scale the witness back
    FracIdealHNF lattice{a.field, a.num, Int(1)};
    PrincipalityResult res;
    if (n == 1) {
        res.verdict = Principality::principal;
        res.witness = {make_rat(lattice.num(0, 0), a.den)};
        res.proof_tag = "rational ideal";
        return res;
    }
    if (n == 2) {
        res = detail::quadratic_is_principal(lattice);
    } else {
        const Int target = classcover::abs(bareiss_det(lattice.num));
        const unsigned long r = effort.radius;
        res.radius_used = r;
        std::vector<long> c(n, -static_cast<long>(r));
        c[0] = -static_cast<long>(r) - 1;  // first increment lands on the corner
        std::vector<Int> coords(n);
        // odometer over [-r, r]^n, first nonzero coordinate positive
        while (true) {
            size_t pos = 0;
            while (pos < n && c[pos] == static_cast<long>(r)) {
                c[pos] = -static_cast<long>(r);
                ++pos;
            }
            if (pos == n) break;
            ++c[pos];
            size_t first_nonzero = n;
            for (size_t i = n; i-- > 0;)
                if (c[i] != 0) first_nonzero = i;
            if (first_nonzero == n || c[first_nonzero] < 0) continue;
            for (size_t j = 0; j < n; ++j) {
                coords[j] = 0;
                for (size_t i = 0; i < n; ++i)
                    if (c[i] != 0) coords[j] += Int(c[i]) * lattice.num(i, j);
            }
            if (classcover::abs(a.field->elem_norm_integral(coords)) == target) {
                res.verdict = Principality::principal;
                std::vector<Rat> ic(n);
                for (size_t j = 0; j < n; ++j) ic[j] = Rat(coords[j]);
                res.witness = a.field->integral_to_power(ic);
                break;
            }
        }
        if (res.verdict != Principality::principal) {
            res.verdict = Principality::unknown;
            res.proof_tag = "norm-box search exhausted";
            return res;
        }
    }
    if (res.verdict == Principality::principal && a.den != 1) {
        for (Rat& w : res.witness) w /= Rat(a.den);
    }
    return res;
}

/// The "anti-uniformizer" beta of a prime ideal P over p: beta * P <= p O,
/// beta not in p O. Used for exact valuations.
inline std::vector<Int> valuation_helper(const NumberField& K, const FracIdealHNF& P, const Int& p) {
    const size_t n = K.degree;
    // conditions: x * pi_j = 0 mod p for each basis row pi_j of P
    IntMatrix sys(n * n, n);
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < n; ++i) {
            // coords of w_i * pi_j
            std::vector<Int> prod(n, Int(0));
            for (size_t u = 0; u < n; ++u) {
                if (P.num(j, u) == 0) continue;
                for (size_t k = 0; k < n; ++k) prod[k] += P.num(j, u) * K.mult_table[i](u, k);
            }
            for (size_t k = 0; k < n; ++k) sys(j * n + k, i) = mod_floor(prod[k], p);
        }
    const auto kernel = kernel_mod_p(sys, p);
    require(!kernel.empty(), "valuation helper: no multiplier found (is P prime over p?)");
    return kernel.front();
}

/// Exact valuation v_P(x) for a nonzero integral element (integral coords).
inline unsigned long element_valuation(const NumberField& K, const std::vector<Int>& elem,
                                       const std::vector<Int>& beta, const Int& p) {
    const size_t n = K.degree;
    std::vector<Int> y = elem;
    unsigned long v = 0;
    while (true) {
        std::vector<Int> z(n, Int(0));
        for (size_t i = 0; i < n; ++i) {
            if (y[i] == 0) continue;
            for (size_t j = 0; j < n; ++j) {
                if (beta[j] == 0) continue;
                for (size_t k = 0; k < n; ++k) z[k] += y[i] * beta[j] * K.mult_table[i](j, k);
            }
        }
        bool divisible = true;
        for (const Int& c : z)
            if (c % p != 0) { divisible = false; break; }
        if (!divisible) return v;
        for (Int& c : z) c /= p;
        y = std::move(z);
        ++v;
        require(v < 4096, "element_valuation runaway");
    }
}

}  // namespace classcover

// supplies detail::quadratic_is_principal (declared above)
#include "classcover/bqf.hpp"

#endif
