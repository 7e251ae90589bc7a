#include "crnbal/rational.hpp"

#include "crnbal/error.hpp"

namespace crnbal {

Rat rat_pow(const Rat& x, std::int64_t e) {
    if (e == 0) return Rat(1);
    if (x == 0 && e < 0) fail(ErrorCode::InvalidArgument, "zero base with negative exponent");
    const unsigned long long mag = e < 0 ? -static_cast<unsigned long long>(e) : e;
    Int num, den;
    mpz_pow_ui(num.get_mpz_t(), x.get_num().get_mpz_t(), mag);
    mpz_pow_ui(den.get_mpz_t(), x.get_den().get_mpz_t(), mag);
    Rat out = e > 0 ? Rat(num, den) : Rat(den, num);
    out.canonicalize();
    return out;
}

std::string rat_string(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rat parse_rational(const std::string& text) {
    const auto bad = [&]() {
        fail(ErrorCode::SyntaxError, "malformed rational literal '" + text + "'");
    };
    std::string s = text;
    if (s.empty()) bad();
    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = s[0] == '-';
        s = s.substr(1);
        if (s.empty()) bad();
    }
    const auto all_digits = [](const std::string& t) {
        if (t.empty()) return false;
        for (char c : t)
            if (c < '0' || c > '9') return false;
        return true;
    };
    Rat value;
    if (auto slash = s.find('/'); slash != std::string::npos) {
        const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) bad();
        Int d(den);
        if (d == 0) fail(ErrorCode::SyntaxError, "zero denominator in '" + text + "'");
        value = Rat(Int(num), d);
        value.canonicalize();
    } else if (auto dot = s.find('.'); dot != std::string::npos) {
        const std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac)))
            bad();
        Int num(whole.empty() ? "0" : whole);
        Int den(1);
        for (char c : frac) {
            num = num * 10 + (c - '0');
            den *= 10;
        }
        value = Rat(num, den);
        value.canonicalize();
    } else {
        if (!all_digits(s)) bad();
        value = Rat(Int(s));
    }
    return negative ? Rat(-value) : value;
}

Int factorial(std::int64_t n) {
    if (n < 0) fail(ErrorCode::InvalidArgument, "factorial of negative argument");
    Int out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
}

}  // namespace crnbal
