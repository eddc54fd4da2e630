#include "cyldisc/rational.hpp"

#include "cyldisc/errors.hpp"

#include <cctype>

namespace cyldisc {

Rat make_rat(Int num, Int den) {
    if (den == 0) {
        throw ValidationError("zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rat(num, den);
}

Rat parse_rat(std::string_view text, const std::string& path) {
    auto fail = [&](const char* why) -> Rat {
        throw ValidationError(path + ": malformed rational '" + std::string(text) + "' (" + why + ")");
    };
    if (text.empty()) return fail("empty");
    std::size_t slash = text.find('/');
    std::string_view num_part = text.substr(0, slash == std::string_view::npos ? text.size() : slash);
    auto is_int = [](std::string_view s, bool sign_ok) {
        if (s.empty()) return false;
        std::size_t i = 0;
        if (sign_ok && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    if (!is_int(num_part, true)) return fail("bad numerator");
    Int num{std::string(num_part)};
    if (slash == std::string_view::npos) return Rat(num);
    std::string_view den_part = text.substr(slash + 1);
    if (!is_int(den_part, false)) return fail("bad denominator");
    Int den{std::string(den_part)};
    if (den == 0) return fail("zero denominator");
    return Rat(num, den);
}

std::string rat_to_string(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

Rat rat_pow(const Rat& r, unsigned e) {
    if (e == 0) return Rat(1);
    Int n = pow(numerator(r), e);
    Int d = pow(denominator(r), e);
    return Rat(n, d);  // gcd(n,d)=1 is preserved under powers
}

double rat_to_double(const Rat& r) {
    return r.convert_to<double>();
}

}  // namespace cyldisc
