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

#ifndef CLASSCOVER_POLY_HPP
#define CLASSCOVER_POLY_HPP

#include <sstream>
#include <string>
#include <vector>

#include "classcover/mat.hpp"
#include "classcover/types.hpp"

namespace classcover {

/// Univariate polynomial with rational coefficients, stored ascending.
/// The zero polynomial has an empty coefficient vector and degree -1.
class Poly {
  public:
    Poly() = default;
    explicit Poly(const Rat& c) {
        if (c != 0) coeffs_.push_back(c);
    }
    explicit Poly(std::vector<Rat> ascending) : coeffs_(std::move(ascending)) { trim(); }

    static Poly from_int_coeffs(const std::vector<Int>& ascending) {
        std::vector<Rat> c;
        c.reserve(ascending.size());
        for (const Int& x : ascending) c.emplace_back(x);
        return Poly(std::move(c));
    }

    /// x^k
    static Poly monomial(size_t k, const Rat& c = Rat(1)) {
        std::vector<Rat> v(k + 1, Rat(0));
        v[k] = c;
        return Poly(std::move(v));
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    const Rat& leading() const {
        require(!is_zero(), "leading coefficient of zero polynomial");
        return coeffs_.back();
    }

    Rat coeff(size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rat(0); }
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const {
        Poly r = *this;
        for (Rat& c : r.coeffs_) c = -c;
        return r;
    }

    Poly operator+(const Poly& o) const {
        std::vector<Rat> r(std::max(coeffs_.size(), o.coeffs_.size()), Rat(0));
        for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
        return Poly(std::move(r));
    }

    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        std::vector<Rat> r(coeffs_.size() + o.coeffs_.size() - 1, Rat(0));
        for (size_t i = 0; i < coeffs_.size(); ++i)
            for (size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
        return Poly(std::move(r));
    }

    Poly operator*(const Rat& s) const {
        Poly r = *this;
        for (Rat& c : r.coeffs_) c *= s;
        r.trim();
        return r;
    }

    /// Quotient and remainder over Q; divisor must be nonzero.
    std::pair<Poly, Poly> divrem(const Poly& d) const {
        require(!d.is_zero(), "division by zero polynomial");
        Poly rem = *this;
        std::vector<Rat> q(std::max<int>(degree() - d.degree() + 1, 0), Rat(0));
        while (!rem.is_zero() && rem.degree() >= d.degree()) {
            const Rat f = rem.leading() / d.leading();
            const size_t shift = rem.degree() - d.degree();
            q[shift] = f;
            rem = rem - d.shifted(shift) * f;
        }
        return {Poly(std::move(q)), rem};
    }

    Poly shifted(size_t k) const {  // multiply by x^k
        if (is_zero()) return Poly();
        std::vector<Rat> r(coeffs_.size() + k, Rat(0));
        for (size_t i = 0; i < coeffs_.size(); ++i) r[i + k] = coeffs_[i];
        return Poly(std::move(r));
    }

    Poly derivative() const {
        if (coeffs_.size() <= 1) return Poly();
        std::vector<Rat> r(coeffs_.size() - 1);
        for (size_t i = 1; i < coeffs_.size(); ++i) r[i - 1] = coeffs_[i] * Rat(Int(i));
        return Poly(std::move(r));
    }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
        return acc;
    }

    /// Substitute x -> c*x (used for model scaling checks).
    Poly scale_arg(const Rat& c) const {
        Poly r = *this;
        Rat f(1);
        for (size_t i = 0; i < r.coeffs_.size(); ++i) {
            r.coeffs_[i] *= f;
            f *= c;
        }
        r.trim();
        return r;
    }

    Poly monic() const {
        require(!is_zero(), "monic of zero polynomial");
        return *this * (Rat(1) / leading());
    }

    bool is_integer() const {
        for (const Rat& c : coeffs_)
            if (c.get_den() != 1) return false;
        return true;
    }

    bool is_monic_integer() const { return !is_zero() && is_integer() && leading() == 1; }

    /// lcm of coefficient denominators.
    Int denominator_lcm() const {
        Int l = 1;
        for (const Rat& c : coeffs_) l = lcm(l, c.get_den());
        return l;
    }

    std::vector<Int> int_coeffs() const {
        require(is_integer(), "int_coeffs on non-integer polynomial");
        std::vector<Int> r;
        r.reserve(coeffs_.size());
        for (const Rat& c : coeffs_) r.push_back(c.get_num());
        return r;
    }

    /// gcd of integer coefficients (positive), requires integer polynomial.
    Int content() const {
        Int g = 0;
        for (const Int& c : int_coeffs()) g = gcd(g, c);
        return g;
    }

    std::string to_string(const std::string& var = "x") const;

  private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Rat> coeffs_;
};

inline std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = coeffs_.size(); i-- > 0;) {
        const Rat& c = coeffs_[i];
        if (c == 0) continue;
        const bool neg = c < 0;
        Rat a = neg ? Rat(-c) : c;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? "-" : "+");
        }
        if (i == 0 || a != 1) os << a.get_str();
        if (i > 0) {
            if (a != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

/// gcd over Q, monic by convention (or zero).
inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a.divrem(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.monic();
}

/// Resultant Res(f, g) computed as the Sylvester determinant with exact
/// arithmetic. Accepts rational coefficients; clears denominators first and
/// rescales: Res(af, bg) = a^deg(g) b^deg(f) Res(f, g).
inline Rat resultant(const Poly& f, const Poly& g) {
    require(!f.is_zero() && !g.is_zero(), "resultant of zero polynomial");
    const int m = f.degree(), n = g.degree();
    if (m == 0) {
        Rat r(1);
        for (int i = 0; i < n; ++i) r *= f.coeff(0);
        return r;
    }
    if (n == 0) {
        Rat r(1);
        for (int i = 0; i < m; ++i) r *= g.coeff(0);
        return r;
    }
    const Int df = f.denominator_lcm(), dg = g.denominator_lcm();
    const Poly F = f * Rat(df), G = g * Rat(dg);
    IntMatrix s(m + n, m + n);
    const auto fc = F.int_coeffs(), gc = G.int_coeffs();
    for (int row = 0; row < n; ++row)
        for (int i = 0; i <= m; ++i) s(row, row + (m - i)) = fc[i];
    for (int row = 0; row < m; ++row)
        for (int i = 0; i <= n; ++i) s(n + row, row + (n - i)) = gc[i];
    const Int det = bareiss_det(s);
    Rat scale = Rat(1);
    for (int i = 0; i < n; ++i) scale *= Rat(Int(1), df);
    for (int i = 0; i < m; ++i) scale *= Rat(Int(1), dg);
    return Rat(det) * scale;
}

/// disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f).
inline Rat poly_discriminant(const Poly& f) {
    if (f.degree() < 1) throw domain_error("discriminant needs degree >= 1");
    if (f.degree() == 1) return Rat(1);
    const Poly fp = f.derivative();
    if (fp.is_zero()) return Rat(0);
    Rat r = resultant(f, fp) / f.leading();
    const int n = f.degree();
    if ((Int(n) * (n - 1) / 2) % 2 == 1) r = -r;
    return r;
}

inline bool is_squarefree(const Poly& f) {
    if (f.degree() < 1) return !f.is_zero();
    return poly_gcd(f, f.derivative()).degree() == 0;
}

namespace detail {

inline int sign_at_infinity(const Poly& p, bool positive_end) {
    if (p.is_zero()) return 0;
    int s = sgn(p.leading().get_num());
    if (!positive_end && p.degree() % 2 == 1) s = -s;
    return s;
}

}  // namespace detail

/// (r1, r2): number of real roots and conjugate pairs of a squarefree
/// polynomial, by Sturm chains evaluated at -inf/+inf.
inline std::pair<int, int> sturm_signature(const Poly& f) {
    if (f.degree() < 1) throw domain_error("sturm_signature needs degree >= 1");
    if (!is_squarefree(f)) throw domain_error("sturm_signature: polynomial not squarefree");
    std::vector<Poly> chain{f, f.derivative()};
    while (!chain.back().is_zero()) {
        const Poly& a = chain[chain.size() - 2];
        const Poly& b = chain.back();
        Poly r = a.divrem(b).second;
        chain.push_back(-r);
    }
    chain.pop_back();
    auto variations = [&](bool positive_end) {
        int count = 0, prev = 0;
        for (const Poly& p : chain) {
            const int s = detail::sign_at_infinity(p, positive_end);
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++count;
            prev = s;
        }
        return count;
    };
    const int r1 = variations(false) - variations(true);
    const int r2 = (f.degree() - r1) / 2;
    require(r1 >= 0 && r1 + 2 * r2 == f.degree(), "sturm signature inconsistent");
    return {r1, r2};
}

/// Comma-separated descending-degree coefficient list (inverse of
/// parse_poly_desc).
inline std::string poly_desc_string(const Poly& f) {
    require(!f.is_zero(), "poly_desc_string of zero polynomial");
    std::string s;
    for (int i = f.degree(); i >= 0; --i) {
        s += f.coeff(i).get_str();
        if (i > 0) s += ",";
    }
    return s;
}

/// Parse a comma-separated descending-degree rational coefficient list,
/// e.g. "1,0,-1/2" -> x^2 - 1/2.
inline Poly parse_poly_desc(const std::string& text) {
    std::vector<Rat> desc;
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, ',')) {
        // strip blanks
        size_t a = tok.find_first_not_of(" \t");
        size_t b = tok.find_last_not_of(" \t");
        if (a == std::string::npos) throw domain_error("empty coefficient in polynomial list");
        tok = tok.substr(a, b - a + 1);
        try {
            Rat r(tok);
            r.canonicalize();
            desc.push_back(r);
        } catch (const std::invalid_argument&) {
            throw domain_error("bad rational coefficient '" + tok + "'");
        }
    }
    if (desc.empty()) throw domain_error("empty polynomial");
    std::vector<Rat> asc(desc.rbegin(), desc.rend());
    return Poly(std::move(asc));
}

}  // namespace classcover

#endif
