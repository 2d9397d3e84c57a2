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

#ifndef CLASSCOVER_FIBER_HPP
#define CLASSCOVER_FIBER_HPP

#include <optional>
#include <vector>

#include "classcover/curve.hpp"

namespace classcover {

/// The fiber algebra Q[y]/(y^m - g(t)) decomposed into number-field
/// components (irreducible monic integer polynomials, each multiplicity one).
struct SpecializedFiber {
    Int t;
    Int value;                    // g(t)
    unsigned long m = 2;
    std::string provenance;       // the integral model this fiber came from
    std::vector<Poly> components; // sorted by (degree, coefficients)

    const Poly* degree_m_component() const {
        for (const Poly& c : components)
            if (c.degree() == static_cast<int>(m)) return &c;
        return nullptr;
    }
};

/// Factor y^m - g(t) over Q. A complete factorization of g(t) with an exactly
/// dividing prime q coprime to m certifies irreducibility outright (Eisenstein
/// at q); otherwise the binomial pattern splitter and the generic engine run.
inline SpecializedFiber specialize(const IntegralModel& model, const Int& t,
                                   const IntFactorization* known_factorization = nullptr) {
    SpecializedFiber fiber;
    fiber.t = t;
    fiber.m = model.m;
    fiber.provenance = "z^" + std::to_string(model.m) + "=" + model.g.to_string();
    fiber.value = model.value_at(t);
    if (fiber.value == 0)
        throw domain_error("specialize: degenerate fiber, g(" + t.get_str() + ") = 0");
    if (known_factorization && known_factorization->complete() &&
        !exact_witness_primes(*known_factorization, Int(model.m)).empty()) {
        fiber.components.push_back(Poly::monomial(model.m) - Poly(Rat(fiber.value)));
        return fiber;
    }
    fiber.components = factor_binomial(model.m, fiber.value);
    return fiber;
}

}  // namespace classcover

#endif
