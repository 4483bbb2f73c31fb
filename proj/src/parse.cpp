#include "bispectral/parse.hpp"

#include <cctype>
#include <cstdlib>

namespace bispectral {

namespace {

struct Scanner {
    std::string_view s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) { throw parse_error(what, pos); }

    mpz_class integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected an integer literal");
        if (pos < s.size() && s[pos] == '.') fail("non-rational literal rejected");
        return mpz_class(std::string(s.substr(start, pos - start)));
    }
    unsigned exponent() {
        mpz_class e = integer();
        if (e < 0 || e > 4096) fail("exponent out of range");
        return static_cast<unsigned>(e.get_ui());
    }
    int sign() {
        // A sign sequence, so "a + -2*x" (the canonical operator rendering
        // joins signed terms with " + ") parses.
        int s = 1;
        for (;;) {
            if (accept('+')) continue;
            if (accept('-')) {
                s = -s;
                continue;
            }
            return s;
        }
    }
};

char detect_var(std::string_view s) {
    for (char c : s)
        if (std::isalpha(static_cast<unsigned char>(c)) && c != 'i') return c;
    return 't';
}

// One multiplicative term: integer/i/var atoms joined by optional '*',
// divided by trailing "/<integer>" pieces.
void poly_term(Scanner& sc, char var, GaussianRational& coef, unsigned& power) {
    coef = GaussianRational(1);
    power = 0;
    bool any = false, pending_star = false;
    for (;;) {
        char c = sc.peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            coef *= GaussianRational(mpq_class(sc.integer()));
        } else if (c == 'i') {
            ++sc.pos;
            coef *= GaussianRational::i();
        } else if (c == var && c != '\0') {
            ++sc.pos;
            power += sc.accept('^') ? sc.exponent() : 1;
        } else if (c == '/') {
            ++sc.pos;
            mpz_class den = sc.integer();
            if (den == 0) sc.fail("division by zero");
            coef /= GaussianRational(mpq_class(den));
        } else if (c == '*') {
            if (!any) sc.fail("expected a term");
            ++sc.pos;
            pending_star = true;
            continue;
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            sc.fail(std::string("unexpected letter '") + c + "', variable is '" + var + "'");
        } else {
            break;
        }
        any = true;
        pending_star = false;
    }
    if (!any) sc.fail("expected a term");
    if (pending_star) sc.fail("dangling '*'");
}

}  // namespace

UniPoly parse_poly(std::string_view s, char var) {
    if (var == 0) var = detect_var(s);
    Scanner sc{s};
    UniPoly out;
    if (sc.eof()) sc.fail("empty polynomial");
    while (!sc.eof()) {
        int sgn = sc.sign();
        GaussianRational coef;
        unsigned power = 0;
        poly_term(sc, var, coef, power);
        if (sgn < 0) coef = -coef;
        out += UniPoly::monomial(static_cast<int>(power), coef);
        if (!sc.eof() && sc.peek() != '+' && sc.peek() != '-')
            sc.fail("expected '+' or '-' between terms");
    }
    return out;
}

GaussianRational parse_gaussian(std::string_view s) {
    UniPoly p = parse_poly(s, '\1');  // no variable letter admitted
    return p.coeff(0);
}

WeylElement parse_operator(std::string_view s) {
    Scanner sc{s};
    WeylElement out;
    if (sc.eof()) sc.fail("empty operator");
    while (!sc.eof()) {
        int sgn = sc.sign();
        GaussianRational coef(1);
        unsigned a = 0, b = 0;
        bool seen_x = false, seen_d = false, any = false, pending_star = false;
        for (;;) {
            char c = sc.peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coef *= GaussianRational(mpq_class(sc.integer()));
            } else if (c == 'i') {
                ++sc.pos;
                coef *= GaussianRational::i();
            } else if (c == '(') {
                ++sc.pos;
                std::size_t start = sc.pos;
                std::size_t depth = 1;
                while (sc.pos < sc.s.size() && depth > 0) {
                    if (sc.s[sc.pos] == '(') ++depth;
                    if (sc.s[sc.pos] == ')') --depth;
                    ++sc.pos;
                }
                if (depth > 0) sc.fail("unbalanced parenthesis");
                coef *= parse_gaussian(sc.s.substr(start, sc.pos - 1 - start));
            } else if (c == 'x') {
                if (seen_d) sc.fail("x factor must precede the D factor in a term");
                if (seen_x) sc.fail("repeated x factor");
                ++sc.pos;
                a = sc.accept('^') ? sc.exponent() : 1;
                seen_x = true;
            } else if (c == 'D') {
                if (seen_d) sc.fail("repeated D factor");
                ++sc.pos;
                b = sc.accept('^') ? sc.exponent() : 1;
                seen_d = true;
            } else if (c == '/') {
                ++sc.pos;
                mpz_class den = sc.integer();
                if (den == 0) sc.fail("division by zero");
                coef /= GaussianRational(mpq_class(den));
            } else if (c == '*') {
                if (!any) sc.fail("expected a term");
                ++sc.pos;
                pending_star = true;
                continue;
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                sc.fail(std::string("unexpected letter '") + c + "' in operator (use x and D)");
            } else {
                break;
            }
            any = true;
            pending_star = false;
        }
        if (!any) sc.fail("expected a term");
        if (pending_star) sc.fail("dangling '*'");
        if (sgn < 0) coef = -coef;
        out += WeylElement::monomial(a, b, coef);
        if (!sc.eof() && sc.peek() != '+' && sc.peek() != '-')
            sc.fail("expected '+' or '-' between terms");
    }
    return out;
}

std::complex<double> parse_complex(std::string_view s) {
    std::string str(s);
    // strip whitespace
    std::erase_if(str, [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (str.empty()) throw parse_error("empty complex literal", 0);

    // split point: last top-level +/- not in an exponent and not leading
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < str.size(); ++i) {
        if ((str[i] == '+' || str[i] == '-') && str[i - 1] != 'e' && str[i - 1] != 'E')
            split = i;
    }

    auto parse_part = [&](std::string part, bool imag) -> double {
        if (imag) {
            if (part.empty() || (part.back() != 'i' && part.back() != 'I'))
                throw parse_error("imaginary part must end in 'i'", 0);
            part.pop_back();
            if (part.empty() || part == "+") return 1.0;
            if (part == "-") return -1.0;
        }
        char* end = nullptr;
        double v = std::strtod(part.c_str(), &end);
        if (end == part.c_str() || *end != '\0')
            throw parse_error("bad numeric literal '" + part + "'", 0);
        return v;
    };

    const bool has_i = (str.back() == 'i' || str.back() == 'I');
    if (split == std::string::npos)
        return has_i ? std::complex<double>(0.0, parse_part(str, true))
                     : std::complex<double>(parse_part(str, false), 0.0);
    if (!has_i) throw parse_error("two components but no trailing 'i': '" + str + "'", split);
    return {parse_part(str.substr(0, split), false), parse_part(str.substr(split), true)};
}

}  // namespace bispectral
