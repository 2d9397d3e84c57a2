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

#ifndef CLASSCOVER_CURVE_HPP
#define CLASSCOVER_CURVE_HPP

#include <string>
#include <vector>

#include "classcover/int_arith.hpp"
#include "classcover/poly.hpp"
#include "classcover/poly_factor.hpp"

namespace classcover {

/// A superelliptic curve y^m = f(x) with f squarefree over Q.
struct SuperellipticCurve {
    unsigned long m = 2;
    Poly f;

    std::string key() const {
        return "y^" + std::to_string(m) + "=" + f.to_string("x");
    }
};

/// Accepts y^m = f(x) iff m >= 2, deg f >= 1 and f squarefree (the curve is
/// smooth away from infinity exactly in that case).
inline SuperellipticCurve validate_curve(unsigned long m, const Poly& f) {
    if (m < 2) throw domain_error("curve: cover degree m must be at least 2");
    if (f.degree() < 1) throw domain_error("curve: deg f must be at least 1");
    if (!is_squarefree(f))
        throw domain_error(
            "curve: f has a repeated root (disc(f) = 0), so y^" + std::to_string(m) + " = " +
            f.to_string() + " is not smooth; pick a squarefree f");
    return SuperellipticCurve{m, f};
}

/// Geometric genus of the smooth model:
/// g = ((m-1)(n-1) + 1 - gcd(m, n)) / 2.
inline unsigned long genus(const SuperellipticCurve& curve) {
    const long m = static_cast<long>(curve.m);
    const long n = curve.f.degree();
    const long d = gcd(Int(m), Int(n)).get_si();
    const long two_g = (m - 1) * (n - 1) + 1 - d;
    require(two_g % 2 == 0 && two_g >= 0, "genus formula parity");
    return static_cast<unsigned long>(two_g / 2);
}

/// Integer-coefficient model z^m = g(x) obtained by the substitution z = N*y
/// where N is the lcm of the coefficient denominators of f:
/// g = N^(m-1) * (N*f).
struct IntegralModel {
    unsigned long m = 2;
    Poly g;          // integer coefficients
    Int scale = 1;   // the N with z = N*y

    Int value_at(const Int& t) const { return g.eval(Rat(t)).get_num(); }
};

inline IntegralModel normalize_integral_model(const SuperellipticCurve& curve) {
    const Int n = curve.f.denominator_lcm();
    Poly g = curve.f * Rat(n);
    Rat pre(1);
    for (unsigned long i = 0; i + 1 < curve.m; ++i) pre *= Rat(n);
    g = g * pre;
    require(g.is_integer(), "integral model must have integer coefficients");
    return IntegralModel{curve.m, g, n};
}

enum class ParameterVerdict { good, degenerate_root, degenerate_power, nonreduced, unfactored };

inline std::string to_string(ParameterVerdict v) {
    switch (v) {
        case ParameterVerdict::good: return "good";
        case ParameterVerdict::degenerate_root: return "degenerate_root";
        case ParameterVerdict::degenerate_power: return "degenerate_power";
        case ParameterVerdict::nonreduced: return "nonreduced";
        case ParameterVerdict::unfactored: return "unfactored";
    }
    return "?";
}

struct ParameterStatus {
    Int t;
    ParameterVerdict verdict = ParameterVerdict::unfactored;
    Int value;                       // g(t)
    IntFactorization factorization;  // populated unless degenerate_root
    std::vector<Int> witnesses;      // primes q with q || g(t), q not dividing m
};

/// Classify a specialization parameter t.
///   degenerate_root   g(t) = 0
///   degenerate_power  y^m - g(t) reducible by the perfect-power / -4d^4 patterns
///   unfactored        factorization budget exhausted before a verdict
///   nonreduced        no prime q with q || g(t), q coprime to m
///   good              otherwise; carries the factorization and witness primes
inline ParameterStatus good_parameter(const IntegralModel& model, const Int& t,
                                      const FactorEffort& effort = {}) {
    ParameterStatus st;
    st.t = t;
    st.value = model.value_at(t);
    if (st.value == 0) {
        st.verdict = ParameterVerdict::degenerate_root;
        return st;
    }
    if (!binomial_is_irreducible(model.m, st.value)) {
        st.verdict = ParameterVerdict::degenerate_power;
        return st;
    }
    st.factorization = factor_integer(st.value, effort);
    if (!st.factorization.complete()) {
        st.verdict = ParameterVerdict::unfactored;
        return st;
    }
    st.witnesses = exact_witness_primes(st.factorization, Int(model.m));
    st.verdict = st.witnesses.empty() ? ParameterVerdict::nonreduced : ParameterVerdict::good;
    return st;
}

/// Shared textual curve format: "m; c_n,...,c_0" with rational coefficients.
inline SuperellipticCurve parse_curve(const std::string& text) {
    const size_t sep = text.find(';');
    if (sep == std::string::npos)
        throw domain_error("curve text must look like 'm; c_n,...,c_0'");
    unsigned long m = 0;
    try {
        size_t used = 0;
        const long parsed = std::stol(text.substr(0, sep), &used);
        if (parsed < 0) throw std::invalid_argument("negative");
        m = static_cast<unsigned long>(parsed);
    } catch (const std::exception&) {
        throw domain_error("curve text: bad cover degree '" + text.substr(0, sep) + "'");
    }
    const Poly f = parse_poly_desc(text.substr(sep + 1));
    return validate_curve(m, f);
}

}  // namespace classcover

#endif
