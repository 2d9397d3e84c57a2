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

// Binary quadratic forms over quadratic orders: reduction with basis
// tracking (for principality witnesses), rho-cycles of indefinite forms, and
// the oriented correspondence between primitive ideals and proper form
// classes. The group law on classes is ideal multiplication round-tripped
// through this correspondence.

#ifndef CLASSCOVER_BQF_HPP
#define CLASSCOVER_BQF_HPP

#include <algorithm>
#include <set>
#include <vector>

#include "classcover/ideal.hpp"

namespace classcover {

struct QuadForm {
    Int a, b, c;

    Int disc() const { return b * b - 4 * a * c; }
    bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const QuadForm& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
    std::string to_string() const {
        return "(" + a.get_str() + "," + b.get_str() + "," + c.get_str() + ")";
    }
};

inline bool is_reduced_imaginary(const QuadForm& f) {
    if (f.a <= 0) return false;
    if (!(-f.a < f.b && f.b <= f.a && f.a <= f.c)) return false;
    if (f.a == f.c && f.b < 0) return false;
    return true;
}

/// Reduced indefinite form: |sqrt(D) - 2|a|| < b < sqrt(D), as exact integer
/// conditions with s = floor(sqrt(D)), D nonsquare.
inline bool is_reduced_real(const QuadForm& f, const Int& s) {
    if (f.b < 1 || f.b > s) return false;
    const Int ta = 2 * classcover::abs(f.a);
    return (ta - f.b <= s) && (s + 1 <= f.b + ta);
}

namespace bqf_detail {

/// Basis-tracked form: Q(x, y) = N(x*alpha + y*beta) / norm_scale.
struct TrackedForm {
    QuadForm f;
    std::vector<Rat> alpha, beta;  // power-basis coordinates in the ambient field
    const NumberField* K = nullptr;

    void translate(const Int& m) {  // (x, y) -> (x + m y, y)
        if (m == 0) return;
        f.c = f.a * m * m + f.b * m + f.c;
        f.b = f.b + 2 * f.a * m;
        for (size_t i = 0; i < beta.size(); ++i) beta[i] += Rat(m) * alpha[i];
    }
    void swap_step() {  // (x, y) -> (-y, x): (a,b,c) -> (c,-b,a)
        std::swap(f.a, f.c);
        f.b = -f.b;
        std::swap(alpha, beta);
        for (Rat& x : beta) x = -x;
    }
};

inline void reduce_imaginary(TrackedForm& t) {
    int guard = 0;
    while (!is_reduced_imaginary(t.f)) {
        require(++guard < 10000, "imaginary reduction runaway");
        // normalize b into (-a, a]
        const Int two_a = 2 * t.f.a;
        Int m;
        mpz_fdiv_q(m.get_mpz_t(), Int(t.f.a - t.f.b).get_mpz_t(), two_a.get_mpz_t());
        t.translate(m);
        if (t.f.a > t.f.c) {
            t.swap_step();
            continue;
        }
        if (t.f.a == t.f.c && t.f.b < 0) t.swap_step();
        if (t.f.b == -t.f.a) t.translate(1);
    }
}

/// One rho step for indefinite forms: swap, then normalize b into the window
/// (s - 2|a|, s] (or (-|a|, |a|] while |a| > s).
inline void rho_real(TrackedForm& t, const Int& s) {
    t.swap_step();
    const Int abs_a = classcover::abs(t.f.a);
    const Int hi = abs_a > s ? abs_a : s;
    // unique b' == b (mod 2|a|) with b' in (hi - 2|a|, hi]
    const Int two_abs = 2 * abs_a;
    const Int bp = hi - mod_floor(hi - t.f.b, two_abs);
    const Int num = bp - t.f.b;
    require(num % (2 * t.f.a) == 0, "rho: translation not integral");
    t.translate(num / (2 * t.f.a));
}

inline void reduce_real(TrackedForm& t, const Int& s) {
    int guard = 0;
    while (!is_reduced_real(t.f, s)) {
        require(++guard < 100000, "real reduction runaway");
        rho_real(t, s);
    }
}

inline QuadForm rho_untracked(const QuadForm& f, const Int& s) {
    TrackedForm t{f, {}, {}, nullptr};
    t.alpha.resize(0);
    t.beta.resize(0);
    rho_real(t, s);
    return t.f;
}

}  // namespace bqf_detail

inline QuadForm principal_form(const Int& D) {
    if (D < 0) {
        if (mod_floor(D, 4) == 0) return QuadForm{1, 0, -D / 4};
        return QuadForm{1, 1, (1 - D) / 4};
    }
    const Int s = isqrt(D);
    Int b0 = s;
    if (mod_floor(b0 - D, 2) != 0) b0 -= 1;
    return QuadForm{1, b0, (b0 * b0 - D) / 4};
}

/// All reduced forms of discriminant D (primitive only).
inline std::vector<QuadForm> enumerate_reduced_forms(const Int& D) {
    std::vector<QuadForm> out;
    if (D < 0) {
        const Int amax = isqrt(-D / 3);
        for (Int a = 1; a <= amax; ++a) {
            for (Int b = -a + 1; b <= a; ++b) {
                if (mod_floor(b - D, 2) != 0) continue;
                const Int num = b * b - D;
                if (num % (4 * a) != 0) continue;
                const Int c = num / (4 * a);
                if (c < a) continue;
                if (a == c && b < 0) continue;
                if (gcd(gcd(a, classcover::abs(b)), c) != 1) continue;
                out.push_back(QuadForm{a, b, c});
            }
        }
    } else {
        const Int s = isqrt(D);
        require(s * s != D, "discriminant must not be a square");
        for (Int b = 1; b <= s; ++b) {
            if (mod_floor(b - D, 2) != 0) continue;
            const Int num = b * b - D;  // = 4ac < 0
            for (Int abs_a = (s + 1 - b) / 2; 2 * abs_a <= s + b; ++abs_a) {
                if (abs_a < 1) continue;
                if (2 * abs_a - b > s || s + 1 > b + 2 * abs_a) continue;
                if (num % (4 * abs_a) != 0) continue;
                for (int sign : {1, -1}) {
                    const Int a = sign * abs_a;
                    const Int c = num / (4 * a);
                    if (gcd(gcd(classcover::abs(a), b), classcover::abs(c)) != 1) continue;
                    out.push_back(QuadForm{a, b, c});
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// The rho-cycle through a reduced indefinite form.
inline std::vector<QuadForm> form_cycle(const QuadForm& start, const Int& s) {
    require(is_reduced_real(start, s), "form_cycle needs a reduced form");
    std::vector<QuadForm> cycle{start};
    QuadForm cur = bqf_detail::rho_untracked(start, s);
    while (!(cur == start)) {
        cycle.push_back(cur);
        require(cycle.size() < 100000, "cycle runaway");
        cur = bqf_detail::rho_untracked(cur, s);
    }
    return cycle;
}

/// Canonical representative of the proper (narrow) class of a form:
/// the reduced form itself for D < 0, the minimum of the rho-cycle for D > 0.
inline QuadForm canonical_narrow_rep(const QuadForm& f) {
    const Int D = f.disc();
    bqf_detail::TrackedForm t{f, {}, {}, nullptr};
    if (D < 0) {
        bqf_detail::reduce_imaginary(t);
        return t.f;
    }
    const Int s = isqrt(D);
    bqf_detail::reduce_real(t, s);
    const auto cycle = form_cycle(t.f, s);
    return *std::min_element(cycle.begin(), cycle.end());
}

namespace bqf_detail {

/// Quadratic-field plumbing: sqrt(D) and omega = (D + sqrt(D))/2 expressed in
/// power-basis coordinates, with the sign convention sqrt(D) = (2 theta + u)/index.
struct QuadCoords {
    Int D, u, index, t_shift;  // theta = index*omega - t_shift

    static QuadCoords of(const NumberField& K) {
        require(K.degree == 2, "quadratic field required");
        QuadCoords q;
        q.D = K.field_disc;
        q.u = K.defining_poly.coeff(1).get_num();
        q.index = K.index;
        const Int t2 = q.index * q.D + q.u;
        require(t2 % 2 == 0, "omega shift parity");
        q.t_shift = t2 / 2;
        return q;
    }

    std::vector<Rat> sqrtD_power() const {
        return {make_rat(u, index), make_rat(2, index)};
    }
    std::vector<Rat> omega_power() const {
        // (D + sqrt(D))/2
        auto s = sqrtD_power();
        return {(Rat(D) + s[0]) / 2, s[1] / 2};
    }
    /// power coords (p0 + p1 theta) -> coords over {1, omega}
    std::pair<Rat, Rat> power_to_omega(const std::vector<Rat>& p) const {
        return {p[0] - p[1] * Rat(t_shift), p[1] * Rat(index)};
    }
};

struct IdealFormData {
    QuadForm form;        // oriented form of the primitive part
    Int content;          // ideal = content * primitive
    std::vector<Rat> alpha, beta;  // tracked basis of the primitive part, power coords
    Int prim_norm;        // = form.a
};

/// Oriented form of an integral quadratic ideal (denominator 1 lattice).
inline IdealFormData form_from_ideal(const FracIdealHNF& ideal) {
    const NumberField& K = *ideal.field;
    const QuadCoords q = QuadCoords::of(K);
    require(ideal.den == 1, "form_from_ideal expects an integral lattice");
    // rows in {1, omega} coordinates
    Int x[2], y[2];
    for (size_t i = 0; i < 2; ++i) {
        std::vector<Rat> ic{Rat(ideal.num(i, 0)), Rat(ideal.num(i, 1))};
        const auto pw = K.integral_to_power(ic);
        const auto [c1, cw] = q.power_to_omega(pw);
        require(c1.get_den() == 1 && cw.get_den() == 1, "ideal not inside Z + Z omega");
        x[i] = c1.get_num();
        y[i] = cw.get_num();
    }
    // lower-triangular presentation c * [a, b + omega]
    Int s, t;
    const Int c = ext_gcd(y[0], y[1], s, t);
    require(c > 0, "ideal has rank-1 omega projection");
    Int bx = s * x[0] + t * x[1];
    // vectors with zero omega component
    const Int e0 = x[0] - (y[0] / c) * bx;
    const Int e1 = x[1] - (y[1] / c) * bx;
    Int a = gcd(classcover::abs(e0), classcover::abs(e1));
    require(a > 0, "ideal has rank-1 rational projection");
    IdealFormData data;
    // an O-module [a, bx + c omega] has c | a and c | bx; c is its content
    require(a % c == 0 && bx % c == 0, "lattice is not an O-module");
    data.content = c;
    a /= c;
    bx /= c;
    Int b = mod_floor(bx, a);
    // oriented basis (alpha, beta) = (a, -(b + omega))
    const auto omega = q.omega_power();
    data.alpha = {Rat(a), Rat(0)};
    data.beta = {-(Rat(b) + omega[0]), -omega[1]};
    const Int D = q.D;
    const Int nb = b * b + b * D + (D * D - D) / 4;  // N(b + omega)
    require(nb % a == 0, "norm form not integral");
    data.form = QuadForm{a, -(2 * b + D), nb / a};
    require(data.form.disc() == D, "form discriminant mismatch");
    data.prim_norm = a;
    return data;
}

}  // namespace bqf_detail

/// Ideal [A, (-B + sqrt(D))/2] of a primitive form (A, B, C), inverse of the
/// oriented form_from_ideal map on classes.
inline FracIdealHNF ideal_from_form(std::shared_ptr<const NumberField> field, const QuadForm& f) {
    const auto q = bqf_detail::QuadCoords::of(*field);
    require(f.disc() == q.D, "form discriminant does not match the field");
    require(f.a > 0, "ideal_from_form needs a positive leading coefficient");
    std::vector<Rat> gen1(2, Rat(0));
    gen1[0] = Rat(f.a);
    auto sq = q.sqrtD_power();
    std::vector<Rat> gen2{(Rat(-f.b) + sq[0]) / 2, sq[1] / 2};
    auto ideal = ideal_from_generators(std::move(field), {gen1, gen2});
    require(ideal_norm(ideal) == Rat(f.a), "form ideal norm mismatch");
    return ideal;
}

namespace detail {

/// Exact principality for quadratic fields by reduction theory. D < 0:
/// compare the reduced form with the principal form. D > 0: walk the
/// rho-cycle looking for leading coefficient +-1 (wide sense). The tracked
/// basis yields the generator.
inline PrincipalityResult quadratic_is_principal(const FracIdealHNF& lattice) {
    const NumberField& K = *lattice.field;
    const Int D = K.field_disc;
    auto data = bqf_detail::form_from_ideal(lattice);
    bqf_detail::TrackedForm t{data.form, data.alpha, data.beta, &K};
    PrincipalityResult res;
    if (D < 0) {
        bqf_detail::reduce_imaginary(t);
        if (t.f == principal_form(D)) {
            res.verdict = Principality::principal;
            res.witness = t.alpha;
            for (Rat& w : res.witness) w *= Rat(data.content);
            res.proof_tag = "reduced to the principal form";
        } else {
            res.verdict = Principality::nonprincipal;
            res.proof_tag = "reduced form " + t.f.to_string() + " is not the principal form";
        }
        return res;
    }
    const Int s = isqrt(D);
    bqf_detail::reduce_real(t, s);
    const QuadForm first = t.f;
    while (true) {
        if (classcover::abs(t.f.a) == 1) {
            res.verdict = Principality::principal;
            res.witness = t.alpha;
            for (Rat& w : res.witness) w *= Rat(data.content);
            res.proof_tag = "cycle reaches leading coefficient " + t.f.a.get_str();
            return res;
        }
        bqf_detail::rho_real(t, s);
        if (t.f == first) break;
    }
    res.verdict = Principality::nonprincipal;
    res.proof_tag = "reduced cycle omits leading coefficient +-1";
    return res;
}

}  // namespace detail

}  // namespace classcover

#endif
