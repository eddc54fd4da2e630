#include "cyldisc/finfield.hpp"

#include "cyldisc/errors.hpp"

#include <algorithm>
#include <string>

namespace cyldisc::finfield {

namespace {

using Poly = std::vector<std::uint32_t>;  // little-endian, over GF(p)

int degree(const Poly& f) {
    for (int d = static_cast<int>(f.size()) - 1; d >= 0; --d)
        if (f[d] != 0) return d;
    return -1;
}

// Multiplicative inverse mod prime p via Fermat.
std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    std::uint64_t result = 1, base = a % p;
    std::uint32_t e = p - 2;
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

// Remainder of f mod g over GF(p); g need not be monic.
Poly poly_rem(Poly f, const Poly& g, std::uint32_t p) {
    int dg = degree(g);
    std::uint32_t lead_inv = inv_mod(g[dg], p);
    for (int d = degree(f); d >= dg; d = degree(f)) {
        std::uint64_t factor = static_cast<std::uint64_t>(f[d]) * lead_inv % p;
        if (factor != 0) {
            for (int j = 0; j <= dg; ++j) {
                std::uint64_t sub = factor * g[j] % p;
                std::uint64_t cur = f[d - dg + j];
                f[d - dg + j] = static_cast<std::uint32_t>((cur + p - sub) % p);
            }
        } else {
            f[d] = 0;
        }
    }
    return f;
}

bool is_zero_poly(const Poly& f) { return degree(f) < 0; }

// Exhaustive check against every monic divisor of degree 1..m/2.
bool irreducible(const Poly& poly, std::uint32_t p, std::uint32_t m) {
    if (m == 1) return true;
    for (std::uint32_t d = 1; d <= m / 2; ++d) {
        // candidates: x^d + c_{d-1} x^{d-1} + ... + c_0, all c vectors
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            Poly g(d + 1, 0);
            std::uint64_t rest = code;
            for (std::uint32_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(rest % p);
                rest /= p;
            }
            g[d] = 1;
            if (is_zero_poly(poly_rem(poly, g, p))) return false;
        }
    }
    return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_prime_power(std::uint64_t n, std::uint64_t* base, std::uint32_t* exp) {
    if (n < 2) return false;
    std::uint64_t p = n;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            p = d;
            break;
        }
    }
    std::uint32_t e = 0;
    std::uint64_t rest = n;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    if (rest != 1) return false;
    if (base) *base = p;
    if (exp) *exp = e;
    return true;
}

FieldSpec make_field(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> poly) {
    if (!is_prime(p)) throw NotPrimeError("p=" + std::to_string(p) + " is not prime");
    if (m < 1) throw ValidationError("extension degree m must be >= 1");
    if (poly.size() != static_cast<std::size_t>(m) + 1)
        throw ValidationError("poly must have m+1 coefficients");
    for (std::uint32_t c : poly)
        if (c >= p) throw ValidationError("poly coefficient out of range [0,p)");
    if (poly[m] != 1) throw NotMonicError("poly is not monic of degree m");
    if (!irreducible(poly, p, m))
        throw NotIrreducibleError("poly is reducible over GF(" + std::to_string(p) + ")");

    FieldSpec spec;
    spec.p = p;
    spec.m = m;
    spec.poly = std::move(poly);
    spec.q = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        if (spec.q > (std::uint64_t{1} << 62) / p)
            throw ValidationError("field order p^m overflows");
        spec.q *= p;
    }
    return spec;
}

FieldElement zero(const FieldSpec& spec) { return FieldElement{Poly(spec.m, 0)}; }

FieldElement one(const FieldSpec& spec) {
    FieldElement e = zero(spec);
    e.coeffs[0] = 1;
    return e;
}

namespace {
void check_element(const FieldSpec& spec, const FieldElement& a) {
    if (a.coeffs.size() != spec.m) throw ValidationError("field element has wrong length");
    for (std::uint32_t c : a.coeffs)
        if (c >= spec.p) throw ValidationError("field element coefficient out of range");
}
}  // namespace

FieldElement add(const FieldSpec& spec, const FieldElement& a, const FieldElement& b) {
    check_element(spec, a);
    check_element(spec, b);
    FieldElement r;
    r.coeffs.resize(spec.m);
    for (std::uint32_t i = 0; i < spec.m; ++i)
        r.coeffs[i] = (a.coeffs[i] + b.coeffs[i]) % spec.p;
    return r;
}

FieldElement mul(const FieldSpec& spec, const FieldElement& a, const FieldElement& b) {
    check_element(spec, a);
    check_element(spec, b);
    const std::uint32_t p = spec.p;
    const std::uint32_t m = spec.m;
    std::vector<std::uint32_t> prod(2 * m - 1, 0);
    for (std::uint32_t i = 0; i < m; ++i) {
        if (a.coeffs[i] == 0) continue;
        for (std::uint32_t j = 0; j < m; ++j) {
            prod[i + j] = static_cast<std::uint32_t>(
                (prod[i + j] + static_cast<std::uint64_t>(a.coeffs[i]) * b.coeffs[j]) % p);
        }
    }
    // reduce modulo the monic modulus
    for (int d = static_cast<int>(prod.size()) - 1; d >= static_cast<int>(m); --d) {
        std::uint32_t c = prod[d];
        if (c == 0) continue;
        for (std::uint32_t j = 0; j <= m; ++j) {
            std::uint64_t sub = static_cast<std::uint64_t>(c) * spec.poly[j] % p;
            std::uint64_t cur = prod[d - m + j];
            prod[d - m + j] = static_cast<std::uint32_t>((cur + p - sub) % p);
        }
    }
    FieldElement r;
    r.coeffs.assign(prod.begin(), prod.begin() + m);
    return r;
}

std::uint64_t element_index(const FieldSpec& spec, const FieldElement& a) {
    check_element(spec, a);
    std::uint64_t idx = 0, scale = 1;
    for (std::uint32_t i = 0; i < spec.m; ++i) {
        idx += a.coeffs[i] * scale;
        scale *= spec.p;
    }
    return idx;
}

FieldElement element_at(const FieldSpec& spec, std::uint64_t index) {
    if (index >= spec.q) throw ValidationError("element index out of range");
    FieldElement e;
    e.coeffs.resize(spec.m);
    for (std::uint32_t i = 0; i < spec.m; ++i) {
        e.coeffs[i] = static_cast<std::uint32_t>(index % spec.p);
        index /= spec.p;
    }
    return e;
}

std::vector<FieldElement> enumerate_elements(const FieldSpec& spec) {
    std::vector<FieldElement> all;
    all.reserve(spec.q);
    for (std::uint64_t i = 0; i < spec.q; ++i) all.push_back(element_at(spec, i));
    return all;
}

std::string element_to_string(const FieldSpec& spec, const FieldElement& a) {
    std::string s;
    for (int d = static_cast<int>(spec.m) - 1; d >= 0; --d) {
        std::uint32_t c = a.coeffs[d];
        if (c == 0) continue;
        if (!s.empty()) s += "+";
        if (d == 0 || c != 1) s += std::to_string(c);
        if (d >= 1) s += "x";
        if (d >= 2) s += "^" + std::to_string(d);
    }
    return s.empty() ? "0" : s;
}

}  // namespace cyldisc::finfield
