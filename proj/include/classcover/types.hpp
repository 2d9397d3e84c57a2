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

#ifndef CLASSCOVER_TYPES_HPP
#define CLASSCOVER_TYPES_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace classcover {

using Int = mpz_class;
using Rat = mpq_class;

/// Canonicalized rational. The two-argument mpq_class constructor does not
/// reduce the fraction; this always must be used instead.
inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Bad mathematical input (rejected by an operation's precondition).
class domain_error : public std::invalid_argument {
  public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A field the engine cannot handle (e.g. factor-base prime divides the index).
class unsupported_field_error : public std::runtime_error {
  public:
    explicit unsupported_field_error(const std::string& what) : std::runtime_error(what) {}
};

/// Violation of an internal invariant. Signals a bug, not a math outcome.
class contract_violation : public std::logic_error {
  public:
    explicit contract_violation(const std::string& what) : std::logic_error(what) {}
};

class config_error : public std::runtime_error {
  public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

class io_error : public std::runtime_error {
  public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw contract_violation(what);
}

/// Deterministic 64-bit PRNG (splitmix64). Every randomized subroutine in the
/// library draws from one of these, seeded explicitly, so runs are reproducible.
class SplitMix64 {
  public:
    explicit SplitMix64(unsigned long long seed = 0x9e3779b97f4a7c15ULL) : state_(seed) {}

    unsigned long long next() {
        unsigned long long z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, bound) for bound > 0.
    Int below(const Int& bound) {
        require(bound > 0, "SplitMix64::below needs positive bound");
        const size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
        while (true) {
            Int r = 0;
            for (size_t produced = 0; produced < bits; produced += 64) {
                r <<= 64;
                r += Int(static_cast<unsigned long>(next()));
            }
            r >>= (((bits + 63) / 64) * 64 - bits);
            if (r < bound) return r;
        }
    }

  private:
    unsigned long long state_;
};

}  // namespace classcover

#endif
