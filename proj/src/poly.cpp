#include "atlas/poly.hpp"

#include "atlas/error.hpp"
#include "atlas/lattice_geom.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>

namespace atlas {

namespace {

constexpr double kUnderflowFloor = 1e-300;

Complex ipow(Complex base, int e) {
    if (e < 0) {
        return 1.0 / ipow(base, -e);
    }
    Complex result = 1.0;
    while (e > 0) {
        if (e & 1) {
            result *= base;
        }
        base *= base;
        e >>= 1;
    }
    return result;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

class Parser {
public:
    Parser(std::string_view text, int min_dimension) : text_(text), min_dimension_(min_dimension) {}

    LaurentPolynomial run() {
        std::vector<std::pair<std::map<int, int>, Complex>> raw;
        skip_ws();
        if (at_end()) {
            throw ParseError("empty polynomial", pos_);
        }
        bool first = true;
        while (!at_end()) {
            double sign = 1.0;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1.0 : 1.0;
                ++pos_;
                skip_ws();
            } else if (!first) {
                throw ParseError("expected '+' or '-'", pos_);
            }
            first = false;
            auto term = parse_term();
            term.second *= sign;
            raw.push_back(std::move(term));
            skip_ws();
        }

        int n = std::max(min_dimension_, max_index_ + 1);
        n = std::max(n, 1);
        std::vector<Term> terms;
        terms.reserve(raw.size());
        for (auto& [powers, coef] : raw) {
            LatticePoint e(static_cast<std::size_t>(n), 0);
            for (auto [var, p] : powers) {
                e[static_cast<std::size_t>(var)] = p;
            }
            terms.push_back({std::move(e), coef});
        }
        return LaurentPolynomial(n, std::move(terms));
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) {
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
        ++pos_;
    }

    double parse_real() {
        skip_ws();
        std::size_t start = pos_;
        if (peek() == '+' || peek() == '-') {
            ++pos_;
        }
        while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) {
            ++pos_;
        }
        if (!at_end() && (peek() == 'e' || peek() == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (peek() == '+' || peek() == '-') {
                ++pos_;
            }
            if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                pos_ = save;
            }
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
                ++pos_;
            }
        }
        double value = 0.0;
        auto first = text_.data() + start;
        auto last = text_.data() + pos_;
        if (first != last && *first == '+') {
            ++first;
        }
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last) {
            throw ParseError("malformed number", start);
        }
        return value;
    }

    int parse_int() {
        skip_ws();
        std::size_t start = pos_;
        bool paren = false;
        if (peek() == '(') {
            paren = true;
            ++pos_;
            skip_ws();
        }
        std::size_t num_start = pos_;
        if (peek() == '+' || peek() == '-') {
            ++pos_;
        }
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            ++pos_;
        }
        int value = 0;
        auto first = text_.data() + num_start;
        auto last = text_.data() + pos_;
        if (first != last && *first == '+') {
            ++first;
        }
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last) {
            throw ParseError("expected integer exponent", start);
        }
        if (paren) {
            expect(')');
        }
        return value;
    }

    int parse_variable() {
        std::size_t start = pos_;
        char c = peek();
        ++pos_;
        std::size_t digits_start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            ++pos_;
        }
        int index = -1;
        bool numbered = pos_ > digits_start;
        if (c == 'x' && numbered) {
            int k = 0;
            std::from_chars(text_.data() + digits_start, text_.data() + pos_, k);
            if (k < 1) {
                throw ParseError("variable index must be >= 1", start);
            }
            index = k - 1;
        } else if (!numbered && (c == 'x' || c == 'y' || c == 'z')) {
            index = c - 'x';
        } else {
            throw ParseError("unknown variable", start);
        }
        int style = numbered ? 2 : 1;
        if (style_ != 0 && style_ != style) {
            throw ParseError("cannot mix x,y,z with x1..xn", start);
        }
        style_ = style;
        max_index_ = std::max(max_index_, index);
        return index;
    }

    std::pair<std::map<int, int>, Complex> parse_term() {
        std::map<int, int> powers;
        Complex coef = 1.0;
        bool need_factor = true;
        while (true) {
            skip_ws();
            if (need_factor) {
                parse_factor(powers, coef);
                need_factor = false;
                continue;
            }
            if (peek() == '*') {
                ++pos_;
                need_factor = true;
            } else if (peek() == '/') {
                ++pos_;
                skip_ws();
                std::size_t at = pos_;
                Complex d = parse_coefficient();
                if (d == Complex(0.0)) {
                    throw ParseError("division by zero", at);
                }
                coef /= d;
            } else {
                break;
            }
        }
        return {std::move(powers), coef};
    }

    Complex parse_coefficient() {
        skip_ws();
        if (peek() == '(') {
            ++pos_;
            double re = parse_real();
            expect(',');
            double im = parse_real();
            expect(')');
            return {re, im};
        }
        if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
            return parse_real();
        }
        throw ParseError("expected number", pos_);
    }

    void parse_factor(std::map<int, int>& powers, Complex& coef) {
        skip_ws();
        char c = peek();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            int var = parse_variable();
            int p = 1;
            skip_ws();
            if (peek() == '^') {
                ++pos_;
                p = parse_int();
            }
            powers[var] += p;
            return;
        }
        if (c == '(' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
            coef *= parse_coefficient();
            return;
        }
        if (at_end()) {
            throw ParseError("unexpected end of input", pos_);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    std::string_view text_;
    int min_dimension_;
    std::size_t pos_ = 0;
    int max_index_ = -1;
    int style_ = 0;
};

char variable_name(int i, int n) {
    return n <= 3 ? static_cast<char>('x' + i) : '\0';
}

} // namespace

LaurentPolynomial::LaurentPolynomial(int dimension, std::vector<Term> terms) : dimension_(dimension) {
    if (dimension < 1) {
        throw InputError("polynomial dimension must be positive");
    }
    std::map<LatticePoint, Complex> merged;
    for (auto& t : terms) {
        if (static_cast<int>(t.exponent.size()) != dimension) {
            throw InputError("exponent vector length does not match dimension");
        }
        merged[t.exponent] += t.coefficient;
    }
    for (auto& [e, c] : merged) {
        if (c != Complex(0.0)) {
            terms_.push_back({e, c});
        }
    }
    if (terms_.empty()) {
        throw InputError("polynomial is empty after merging like terms");
    }
}

std::vector<LatticePoint> LaurentPolynomial::support() const {
    std::vector<LatticePoint> s;
    s.reserve(terms_.size());
    for (const auto& t : terms_) {
        s.push_back(t.exponent);
    }
    return s;
}

Complex LaurentPolynomial::coefficient(const LatticePoint& s) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), s,
                               [](const Term& t, const LatticePoint& e) { return t.exponent < e; });
    if (it != terms_.end() && it->exponent == s) {
        return it->coefficient;
    }
    return 0.0;
}

LaurentPolynomial parse_polynomial(std::string_view text, int min_dimension) {
    return Parser(text, min_dimension).run();
}

std::string to_string(const LaurentPolynomial& f) {
    const int n = f.dimension();
    std::string out;
    bool first = true;
    for (const auto& t : f.terms()) {
        Complex c = t.coefficient;
        std::string coef;
        bool negative = false;
        if (c.imag() == 0.0) {
            negative = std::signbit(c.real());
            double mag = std::abs(c.real());
            if (mag != 1.0) {
                coef = format_double(mag);
            }
        } else {
            coef = "(" + format_double(c.real()) + "," + format_double(c.imag()) + ")";
        }
        if (first) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;

        std::string mono;
        for (int i = 0; i < n; ++i) {
            int e = t.exponent[static_cast<std::size_t>(i)];
            if (e == 0) {
                continue;
            }
            if (!mono.empty()) {
                mono += "*";
            }
            char v = variable_name(i, n);
            mono += v ? std::string(1, v) : "x" + std::to_string(i + 1);
            if (e != 1) {
                mono += "^" + std::to_string(e);
            }
        }
        if (mono.empty()) {
            out += coef.empty() ? "1" : coef;
        } else if (coef.empty()) {
            out += mono;
        } else {
            out += coef + "*" + mono;
        }
    }
    return out;
}

Complex evaluate(const LaurentPolynomial& f, std::span<const Complex> x) {
    if (static_cast<int>(x.size()) != f.dimension()) {
        throw InputError("point dimension does not match polynomial");
    }
    Complex sum = 0.0;
    for (const auto& t : f.terms()) {
        Complex m = t.coefficient;
        for (std::size_t i = 0; i < x.size(); ++i) {
            int e = t.exponent[i];
            if (e < 0 && x[i] == Complex(0.0)) {
                throw InputError("zero coordinate with a negative exponent");
            }
            m *= ipow(x[i], e);
        }
        sum += m;
    }
    return sum;
}

LaurentPolynomial hadamard_power(const LaurentPolynomial& f, double r) {
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw InputError("Hadamard power order must be a positive real");
    }
    const bool integral = std::floor(r) == r;
    std::vector<Term> terms;
    terms.reserve(f.size());
    for (const auto& t : f.terms()) {
        Complex a = t.coefficient;
        Complex p;
        if (a.imag() == 0.0 && (a.real() > 0.0 || integral)) {
            p = std::pow(a.real(), r);
        } else {
            p = std::polar(std::pow(std::abs(a), r), r * std::arg(a));
        }
        double mod = std::abs(p);
        if (!std::isfinite(mod)) {
            throw InputError("Hadamard power overflows a double; use the log form");
        }
        if (mod < kUnderflowFloor) {
            throw InputError("Hadamard power underflows below 1e-300");
        }
        terms.push_back({t.exponent, p});
    }
    return LaurentPolynomial(f.dimension(), std::move(terms));
}

LatticePolytope newton_polytope(const LaurentPolynomial& f) {
    return convex_hull(f.support());
}

LaurentPolynomial restrict_to_cell(const LaurentPolynomial& f, const Cell& cell) {
    std::vector<Term> kept;
    for (const auto& t : f.terms()) {
        if (cell.contains(t.exponent)) {
            kept.push_back(t);
        }
    }
    if (kept.empty()) {
        throw InputError("truncation to the cell is empty");
    }
    return LaurentPolynomial(f.dimension(), std::move(kept));
}

LogPolynomial to_log_form(const LaurentPolynomial& f) {
    return hadamard_log_form(f, 1.0);
}

LogPolynomial hadamard_log_form(const LaurentPolynomial& f, double r) {
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw InputError("Hadamard power order must be a positive real");
    }
    LogPolynomial out;
    out.dimension = f.dimension();
    out.terms.reserve(f.size());
    for (const auto& t : f.terms()) {
        out.terms.push_back({t.exponent, r * std::log(std::abs(t.coefficient)), r * std::arg(t.coefficient)});
    }
    return out;
}

} // namespace atlas
