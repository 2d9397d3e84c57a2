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

#ifndef CLASSCOVER_NUMBER_FIELD_HPP
#define CLASSCOVER_NUMBER_FIELD_HPP

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "classcover/mat.hpp"
#include "classcover/mod_poly.hpp"
#include "classcover/poly.hpp"
#include "classcover/poly_factor.hpp"

namespace classcover {

/// Result of the Dedekind criterion at p for the equation order Z[theta].
struct DedekindResult {
    bool maximal = false;
    Poly enlargement;  // lift of f / gcd-part; Z[theta] + (enlargement(theta)/p) Z[theta] is p-larger
};

/// Dedekind's criterion: decides whether Z[theta], theta a root of monic
/// integer irreducible f, is maximal at p. When it is not, the returned
/// polynomial U gives the p-enlargement Z[theta] + (U(theta)/p) Z[theta].
inline DedekindResult dedekind_p_maximality(const Poly& f, const Int& p) {
    require(f.is_monic_integer() && f.degree() >= 1, "dedekind: monic integer f required");
    const auto factors = factor_poly_mod_p(f, p);
    ModPoly g_bar = ModPoly::constant(p, 1), h_bar = ModPoly::constant(p, 1);
    for (const auto& [gi, ei] : factors) {
        g_bar = g_bar * gi;
        for (unsigned long k = 1; k < ei; ++k) h_bar = h_bar * gi;
    }
    const Poly g = g_bar.lift(), h = h_bar.lift();
    Poly diff = g * h - f;
    std::vector<Int> fc = diff.int_coeffs();
    for (Int& c : fc) {
        require(c % p == 0, "dedekind: g*h != f mod p");
        c /= p;
    }
    const ModPoly F(p, fc);
    const ModPoly z = mod_gcd(mod_gcd(F, g_bar), h_bar);
    DedekindResult res;
    res.maximal = z.degree() == 0;
    if (!res.maximal) {
        const ModPoly f_bar = ModPoly::from_poly(f, p);
        res.enlargement = f_bar.divrem(z).first.lift();
    }
    return res;
}

struct PrimeIdealFactor {
    Poly two_gen_poly;            // monic lift h: the prime is (p, h(theta))
    unsigned long residue_degree = 1;
    unsigned long ramification = 1;
};

struct PrimeIdealData {
    Int p;
    std::vector<PrimeIdealFactor> factors;
};

/// A number field Q[x]/(f) with its maximal order.
///
/// The integral basis w_0..w_{n-1} is stored as an HNF matrix over the power
/// basis with one common denominator: w_i = (1/den) sum_j W(i,j) theta^j.
/// Invariants kept by construction and re-checked in construct():
///   index^2 * field_disc == poly_disc, field_disc == trace-form determinant,
///   r1 + 2 r2 == degree.
class NumberField {
  public:
    Poly defining_poly;
    size_t degree = 0;
    IntMatrix basis_num;  // n x n, HNF
    Int basis_den = 1;
    Int poly_disc;
    Int field_disc;
    Int index = 1;
    int r1 = 0, r2 = 0;

    /// Integral structure constants: mult_table[i](j, k) = coordinate k of
    /// w_i * w_j over the integral basis. Integer because the order is a ring.
    std::vector<IntMatrix> mult_table;

    std::string key() const { return defining_poly.to_string(); }

    bool operator==(const NumberField& o) const { return defining_poly == o.defining_poly; }

    // ----- element helpers (power-basis coordinates, rational) -----

    std::vector<Rat> elem_from_poly(const Poly& g) const {
        const Poly r = g.divrem(defining_poly).second;
        std::vector<Rat> v(degree, Rat(0));
        for (size_t i = 0; i < std::min<size_t>(degree, r.coeffs().size()); ++i) v[i] = r.coeff(i);
        return v;
    }

    std::vector<Rat> elem_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) const {
        Poly pa((std::vector<Rat>(a))), pb((std::vector<Rat>(b)));
        return elem_from_poly(pa * pb);
    }

    /// Norm of an element given in power-basis coordinates, via the resultant.
    Rat elem_norm(const std::vector<Rat>& a) const {
        Poly g = Poly(std::vector<Rat>(a));
        if (g.is_zero()) return Rat(0);
        return resultant(defining_poly, g);
    }

    /// Power coordinates of the i-th integral basis vector.
    std::vector<Rat> basis_elem(size_t i) const {
        std::vector<Rat> v(degree);
        for (size_t j = 0; j < degree; ++j) v[j] = make_rat(basis_num(i, j), basis_den);
        return v;
    }

    /// Integral coordinates -> power coordinates.
    std::vector<Rat> integral_to_power(const std::vector<Rat>& a) const {
        std::vector<Rat> v(degree, Rat(0));
        for (size_t i = 0; i < degree; ++i)
            for (size_t j = 0; j < degree; ++j) v[j] += a[i] * make_rat(basis_num(i, j), basis_den);
        return v;
    }

    /// Power coordinates -> integral coordinates (exact; basis is a Q-basis).
    std::vector<Rat> power_to_integral(const std::vector<Rat>& v) const {
        std::vector<Rat> scaled(v);
        for (Rat& x : scaled) x *= Rat(basis_den);
        return solve_against_hnf(basis_num, std::move(scaled));
    }

    bool is_integral_elem(const std::vector<Rat>& power_coords) const {
        for (const Rat& c : power_to_integral(power_coords))
            if (c.get_den() != 1) return false;
        return true;
    }

    /// Matrix of multiplication by the element with integral coordinates a.
    IntMatrix mult_matrix(const std::vector<Int>& a) const {
        IntMatrix m(degree, degree);
        for (size_t i = 0; i < degree; ++i) {
            if (a[i] == 0) continue;
            for (size_t j = 0; j < degree; ++j)
                for (size_t k = 0; k < degree; ++k) m(j, k) += a[i] * mult_table[i](j, k);
        }
        return m;
    }

    Int elem_norm_integral(const std::vector<Int>& a) const { return bareiss_det(mult_matrix(a)); }
};

namespace detail {

/// Power sums Tr(theta^k), k = 0..2n-2, by Newton's identities.
inline std::vector<Rat> power_traces(const Poly& f) {
    const int n = f.degree();
    std::vector<Rat> s(2 * n - 1 > 0 ? 2 * n - 1 : 1, Rat(0));
    s[0] = Rat(Int(n));
    for (int k = 1; k < static_cast<int>(s.size()); ++k) {
        Rat acc(0);
        // Newton: p_k + sum_{i=1}^{min(k-1,n)} c_{n-i} p_{k-i} (+ k c_{n-k} when k <= n) = 0
        for (int i = 1; i <= std::min(k - 1, n); ++i) acc += f.coeff(n - i) * s[k - i];
        if (k <= n) acc += Rat(Int(k)) * f.coeff(n - k);
        s[k] = -acc;
    }
    return s;
}

struct OrderRep {
    IntMatrix w;  // n x n HNF over power basis
    Int den = 1;

    void normalize() {
        w = hnf(w);
        Int g = den;
        for (size_t i = 0; i < w.rows(); ++i)
            for (size_t j = 0; j < w.cols(); ++j) g = gcd(g, w(i, j));
        if (g > 1) {
            for (size_t i = 0; i < w.rows(); ++i)
                for (size_t j = 0; j < w.cols(); ++j) w(i, j) /= g;
            den /= g;
        }
    }
};

/// Structure constants of an order given over the power basis of f.
inline std::vector<IntMatrix> order_mult_table(const Poly& f, const IntMatrix& w, const Int& den) {
    const size_t n = f.degree();
    auto to_order_coords = [&](const Poly& g) {
        std::vector<Rat> rest(n, Rat(0));
        const Poly r = g.divrem(f).second;
        for (size_t i = 0; i < std::min(n, r.coeffs().size()); ++i) rest[i] = r.coeff(i) * Rat(den);
        return solve_against_hnf(w, std::move(rest));
    };
    std::vector<Poly> basis_polys;
    for (size_t i = 0; i < n; ++i) {
        std::vector<Rat> c(n);
        for (size_t j = 0; j < n; ++j) c[j] = make_rat(w(i, j), den);
        basis_polys.emplace_back(std::move(c));
    }
    std::vector<IntMatrix> table(n, IntMatrix(n, n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const auto coords = to_order_coords(basis_polys[i] * basis_polys[j]);
            for (size_t k = 0; k < n; ++k) {
                require(coords[k].get_den() == 1, "order not multiplicatively closed");
                table[i](j, k) = coords[k].get_num();
            }
        }
    return table;
}

/// One Pohst-Zassenhaus step: the multiplier ring of the p-radical.
/// Returns true if the order grew.
inline bool p_enlarge_once(const Poly& f, OrderRep& order, const Int& p) {
    const size_t n = f.degree();
    const auto table = order_mult_table(f, order.w, order.den);
    // Frobenius power q = p^k >= n as an F_p-linear map on O/pO
    unsigned long k = 1;
    Int q = p;
    while (q < Int(n)) { q *= p; ++k; }
    auto mul_mod_p = [&](const std::vector<Int>& a, const std::vector<Int>& b) {
        std::vector<Int> out(n, Int(0));
        for (size_t i = 0; i < n; ++i) {
            if (a[i] == 0) continue;
            for (size_t j = 0; j < n; ++j) {
                if (b[j] == 0) continue;
                for (size_t kk = 0; kk < n; ++kk) out[kk] += a[i] * b[j] * table[i](j, kk);
            }
        }
        for (Int& x : out) x = mod_floor(x, p);
        return out;
    };
    auto pow_mod_p = [&](std::vector<Int> base, Int e) {
        std::vector<Int> acc(n, Int(0));
        bool acc_set = false;
        while (e > 0) {
            if (mpz_tstbit(e.get_mpz_t(), 0)) {
                acc = acc_set ? mul_mod_p(acc, base) : base;
                acc_set = true;
            }
            e >>= 1;
            if (e > 0) base = mul_mod_p(base, base);
        }
        return acc;
    };
    IntMatrix frob(n, n);
    for (size_t i = 0; i < n; ++i) {
        std::vector<Int> e(n, Int(0));
        e[i] = 1;
        const auto img = pow_mod_p(e, q);
        for (size_t j = 0; j < n; ++j) frob(i, j) = img[j];
    }
    IntMatrix frob_t(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) frob_t(j, i) = frob(i, j);
    const auto rad_kernel = kernel_mod_p(frob_t, p);

    // radical lattice in order coordinates
    IntMatrix rad(n + rad_kernel.size(), n);
    for (size_t i = 0; i < n; ++i) rad(i, i) = p;
    for (size_t i = 0; i < rad_kernel.size(); ++i)
        for (size_t j = 0; j < n; ++j) rad(n + i, j) = rad_kernel[i][j];
    const IntMatrix rad_h = hnf(rad);
    require(rad_h.rows() == n, "radical lattice rank");

    // x in O with x * I_p <= p * I_p  (then x/p multiplies I_p into itself)
    // coordinates of w_i * rho_j expressed in the radical basis, taken mod p
    std::vector<IntMatrix> cond;  // one (n x n) block per radical basis vector
    for (size_t j = 0; j < n; ++j) {
        IntMatrix block(n, n);
        for (size_t i = 0; i < n; ++i) {
            // w_i * rho_j in order coordinates
            std::vector<Int> prod(n, Int(0));
            for (size_t u = 0; u < n; ++u) {
                if (rad_h(j, u) == 0) continue;
                for (size_t kk = 0; kk < n; ++kk) prod[kk] += rad_h(j, u) * table[i](u, kk);
            }
            // express prod over the radical basis (exact)
            std::vector<Rat> rest(n);
            for (size_t kk = 0; kk < n; ++kk) rest[kk] = Rat(prod[kk]);
            const auto coords = solve_against_hnf(rad_h, std::move(rest));
            for (size_t kk = 0; kk < n; ++kk) {
                require(coords[kk].get_den() == 1, "radical is not an ideal of the order");
                block(i, kk) = mod_floor(coords[kk].get_num(), p);
            }
        }
        cond.push_back(std::move(block));
    }
    IntMatrix sys(n * n, n);  // rows: conditions, cols: coordinates of x
    for (size_t j = 0; j < n; ++j)
        for (size_t kk = 0; kk < n; ++kk)
            for (size_t i = 0; i < n; ++i) sys(j * n + kk, i) = cond[j](i, kk);
    const auto mult_kernel = kernel_mod_p(sys, p);
    if (mult_kernel.empty()) return false;

    // O' = O + (1/p) * span(kernel lifts), expressed over the power basis
    IntMatrix stacked(n + mult_kernel.size(), n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) stacked(i, j) = p * order.w(i, j);
    for (size_t i = 0; i < mult_kernel.size(); ++i)
        for (size_t j = 0; j < n; ++j) {
            Int acc = 0;
            for (size_t u = 0; u < n; ++u) acc += mult_kernel[i][u] * order.w(u, j);
            stacked(n + i, j) = acc;
        }
    OrderRep enlarged{hnf(stacked), order.den * p};
    enlarged.normalize();
    if (enlarged.w == order.w && enlarged.den == order.den) return false;
    order = std::move(enlarged);
    return true;
}

}  // namespace detail

/// Compute the maximal order of Q[x]/(f) by the Round-2 loop: Dedekind's
/// criterion screens each prime whose square divides disc(f); failing primes
/// go through radical-idealizer enlargement until p-maximal.
///
/// disc_prime_hint, when given, must cover every prime dividing disc(f); the
/// pipeline passes the primes of m and of g(t) so no fresh factorization runs.
inline std::shared_ptr<const NumberField> maximal_order(
    const Poly& f, const FactorEffort& effort = {},
    const std::vector<Int>* disc_prime_hint = nullptr) {
    if (!f.is_monic_integer() || f.degree() < 1)
        throw domain_error("maximal_order: monic integer polynomial required");
    if (!is_irreducible_over_q(f))
        throw domain_error("maximal_order: " + f.to_string() + " is reducible over Q");
    auto field = std::make_shared<NumberField>();
    NumberField& K = *field;
    K.defining_poly = f;
    K.degree = f.degree();
    const size_t n = K.degree;
    K.poly_disc = poly_discriminant(f).get_num();

    // primes p with p^2 | disc(f)
    std::vector<Int> candidate_primes;
    {
        Int rest = classcover::abs(K.poly_disc);
        if (disc_prime_hint) {
            for (const Int& p : *disc_prime_hint) {
                unsigned long e = 0;
                while (rest % p == 0) { rest /= p; ++e; }
                if (e >= 2) candidate_primes.push_back(p);
            }
        }
        if (rest > 1) {
            const IntFactorization fac = factor_integer(rest, effort);
            if (!fac.complete())
                throw unsupported_field_error(
                    "maximal_order: discriminant factorization exhausted (cofactor " +
                    fac.cofactor.get_str() + ")");
            for (const auto& [p, e] : fac.factors)
                if (e >= 2) candidate_primes.push_back(p);
        }
        std::sort(candidate_primes.begin(), candidate_primes.end());
        candidate_primes.erase(std::unique(candidate_primes.begin(), candidate_primes.end()),
                               candidate_primes.end());
    }

    detail::OrderRep order{IntMatrix::identity(n), Int(1)};
    for (const Int& p : candidate_primes) {
        if (dedekind_p_maximality(f, p).maximal) continue;
        while (detail::p_enlarge_once(f, order, p)) {}
    }
    order.normalize();
    K.basis_num = order.w;
    K.basis_den = order.den;

    // index from the basis change determinant
    Int det = bareiss_det(K.basis_num);
    require(det != 0, "maximal order basis singular");
    det = classcover::abs(det);
    const Int dn = pow_int(K.basis_den, static_cast<unsigned long>(n));
    require(dn % det == 0, "index not integral");
    K.index = dn / det;

    K.mult_table = detail::order_mult_table(f, K.basis_num, K.basis_den);

    // field discriminant along an independent route: trace form determinant
    {
        const auto traces = detail::power_traces(f);
        IntMatrix gram(n, n);
        Int scale = 1;  // clear denominators: entries are Tr(w_i w_j), rational
        std::vector<std::vector<Rat>> gram_q(n, std::vector<Rat>(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                // power coords of w_i * w_j
                std::vector<Rat> prod(2 * n - 1, Rat(0));
                for (size_t a = 0; a < n; ++a)
                    for (size_t b = 0; b < n; ++b)
                        prod[a + b] += make_rat(K.basis_num(i, a), K.basis_den) *
                                       make_rat(K.basis_num(j, b), K.basis_den);
                // reduce theta^k for k >= n via traces directly: Tr is linear,
                // and traces[] already covers exponents up to 2n-2
                Rat tr(0);
                for (size_t k = 0; k < prod.size(); ++k) tr += prod[k] * traces[k];
                gram_q[i][j] = tr;
                scale = lcm(scale, tr.get_den());
            }
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                Rat v = gram_q[i][j] * Rat(scale);
                require(v.get_den() == 1, "gram scaling");
                gram(i, j) = v.get_num();
            }
        const Int gdet = bareiss_det(gram);
        Rat disc = Rat(gdet) / Rat(pow_int(scale, static_cast<unsigned long>(n)));
        require(disc.get_den() == 1, "trace-form determinant not integral");
        K.field_disc = disc.get_num();
    }
    require(K.index * K.index * K.field_disc == K.poly_disc,
            "index^2 * field_disc != poly_disc");

    const auto [r1, r2] = sturm_signature(f);
    K.r1 = r1;
    K.r2 = r2;
    require((K.field_disc > 0) == (r2 % 2 == 0), "disc sign vs signature");
    return field;
}

/// Exact rational upper bound for the Minkowski constant
/// (n!/n^n) (4/pi)^r2 sqrt(|disc|), outward-rounded.
inline Rat minkowski_bound(const NumberField& K) {
    const unsigned long n = K.degree;
    Rat fact(1);
    for (unsigned long i = 2; i <= n; ++i) fact *= Rat(Int(i));
    Rat nn(1);
    for (unsigned long i = 0; i < n; ++i) nn *= Rat(Int(n));
    Rat bound = fact / nn;
    // 4/pi < 4 / 3.14159265358979 (lower bound for pi keeps the quotient an upper bound)
    const Rat four_over_pi_up = make_rat(Int("400000000000000"), Int("314159265358979"));
    for (int i = 0; i < K.r2; ++i) bound *= four_over_pi_up;
    // rational sqrt upper bound by Newton iterations from above
    const Int a = classcover::abs(K.field_disc);
    const Int s = isqrt(a);
    Rat x;
    if (s * s == a) {
        x = Rat(s);
    } else {
        x = Rat(s + 1);
        for (int it = 0; it < 6; ++it) x = (x + Rat(a) / x) / Rat(2);
    }
    bound *= x;
    // snap upward onto a fixed grid to keep the exact bound readable
    const Int grid(1000000);
    Int scaled;
    mpz_cdiv_q(scaled.get_mpz_t(), Int(bound.get_num() * grid).get_mpz_t(),
               bound.get_den().get_mpz_t());
    return make_rat(scaled, grid);
}

/// Kummer-Dedekind splitting of p, valid only when p does not divide the
/// index [O_K : Z[theta]] (every pipeline-critical prime satisfies this).
inline PrimeIdealData prime_splitting(const NumberField& K, const Int& p) {
    if (!is_prime(p)) throw domain_error("prime_splitting: p must be prime");
    if (K.index % p == 0)
        throw unsupported_field_error("prime_splitting: p = " + p.get_str() +
                                      " divides the index " + K.index.get_str() +
                                      " of " + K.key() + "; Kummer-Dedekind does not apply");
    PrimeIdealData data;
    data.p = p;
    unsigned long check = 0;
    for (const auto& [g, e] : factor_poly_mod_p(K.defining_poly, p)) {
        PrimeIdealFactor pf;
        pf.two_gen_poly = g.lift();
        pf.residue_degree = static_cast<unsigned long>(g.degree());
        pf.ramification = e;
        check += pf.residue_degree * pf.ramification;
        data.factors.push_back(std::move(pf));
    }
    require(check == K.degree, "splitting degrees do not sum to the field degree");
    return data;
}

}  // namespace classcover

#endif
