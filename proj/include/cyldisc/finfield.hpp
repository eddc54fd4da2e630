#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cyldisc::finfield {

// GF(p^m) with an explicit monic irreducible modulus, so that every run of
// every tool enumerates field elements in the same order.
struct FieldSpec {
    std::uint32_t p = 0;              // prime characteristic
    std::uint32_t m = 0;              // extension degree >= 1
    std::vector<std::uint32_t> poly;  // m+1 coefficients, little-endian, poly[m] == 1
    std::uint64_t q = 0;              // p^m
};

// Little-endian coefficient vector of length spec.m, entries in [0, p).
struct FieldElement {
    std::vector<std::uint32_t> coeffs;

    bool operator==(const FieldElement&) const = default;
};

bool is_prime(std::uint64_t n);
// True iff n = p^e for a prime p and e >= 1; optionally reports p and e.
bool is_prime_power(std::uint64_t n, std::uint64_t* base = nullptr, std::uint32_t* exp = nullptr);

// Validates p prime, poly monic of degree m, and poly irreducible over GF(p)
// (trial division by every monic polynomial of degree <= m/2).
// Throws NotPrimeError / NotMonicError / NotIrreducibleError / ValidationError.
FieldSpec make_field(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> poly);

FieldElement zero(const FieldSpec& spec);
FieldElement one(const FieldSpec& spec);

FieldElement add(const FieldSpec& spec, const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldSpec& spec, const FieldElement& a, const FieldElement& b);

// Element <-> index, where the index reads coeffs as a base-p numeral with
// coeffs[0] least significant. Index 0 is the zero element.
std::uint64_t element_index(const FieldSpec& spec, const FieldElement& a);
FieldElement element_at(const FieldSpec& spec, std::uint64_t index);

// All q elements in index order.
std::vector<FieldElement> enumerate_elements(const FieldSpec& spec);

// Human-readable form like "x^2+2x+1" (for witnesses and error messages).
std::string element_to_string(const FieldSpec& spec, const FieldElement& a);

}  // namespace cyldisc::finfield
