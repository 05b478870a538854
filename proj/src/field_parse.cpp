#include "holint/field_parse.hpp"

#include <cctype>
#include <map>

namespace holint {

namespace {

enum class Tok { ident, integer, plus, minus, star, slash, caret, eq, comma, semi, lparen, rparen, end };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

struct Lexer {
    const std::string& src;
    size_t pos = 0;
    int line = 1, col = 1;
    Token current;

    explicit Lexer(const std::string& s) : src(s) { advance(); }

    [[noreturn]] void fail(const std::string& msg, const Token& at) const {
        throw ParseError(msg, at.line, at.col);
    }
    [[noreturn]] void fail_here(const std::string& msg) const { fail(msg, current); }

    void advance() {
        while (pos < src.size()) {
            char c = src[pos];
            if (c == '#') {
                while (pos < src.size() && src[pos] != '\n') ++pos;
                continue;
            }
            if (c == '\n') {
                ++line;
                col = 1;
                ++pos;
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++col;
                ++pos;
                continue;
            }
            break;
        }
        current = Token{Tok::end, "", line, col};
        if (pos >= src.size()) return;
        char c = src[pos];
        auto one = [&](Tok k) {
            current.kind = k;
            current.text = std::string(1, c);
            ++pos;
            ++col;
        };
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                ++pos;
                ++col;
            }
            current.kind = Tok::integer;
            current.text = src.substr(start, pos - start);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
                ++pos;
                ++col;
            }
            current.kind = Tok::ident;
            current.text = src.substr(start, pos - start);
            return;
        }
        switch (c) {
            case '+': one(Tok::plus); return;
            case '-': one(Tok::minus); return;
            case '*': one(Tok::star); return;
            case '/': one(Tok::slash); return;
            case '^': one(Tok::caret); return;
            case '=': one(Tok::eq); return;
            case ',': one(Tok::comma); return;
            case ';': one(Tok::semi); return;
            case '(': one(Tok::lparen); return;
            case ')': one(Tok::rparen); return;
            default: throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
    }

    bool accept(Tok k) {
        if (current.kind != k) return false;
        advance();
        return true;
    }

    Token expect(Tok k, const std::string& what) {
        if (current.kind != k) fail_here("expected " + what);
        Token t = current;
        advance();
        return t;
    }
};

struct Parser {
    Lexer lex;

    explicit Parser(const std::string& s) : lex(s) {}

    Rational parse_positive_rational() {
        Token num = lex.expect(Tok::integer, "a number");
        mpz_class n(num.text);
        if (lex.accept(Tok::slash)) {
            Token den = lex.expect(Tok::integer, "a denominator");
            mpz_class d(den.text);
            if (sgn(d) == 0) lex.fail("zero denominator", den);
            Rational q(n, d);
            q.canonicalize();
            return q;
        }
        return Rational(n);
    }

    // number ['i'] | 'i', with sign already consumed by the caller.
    GaussianRational parse_gpart() {
        if (lex.current.kind == Tok::ident && lex.current.text == "i") {
            lex.advance();
            return GaussianRational::i();
        }
        Rational q = parse_positive_rational();
        if (lex.current.kind == Tok::ident && lex.current.text == "i") {
            lex.advance();
            return {Rational(0), q};
        }
        return {q};
    }

    // ['-'] gpart [('+'|'-') gpart]: a full Gaussian rational literal.
    GaussianRational parse_gaussian() {
        bool neg = lex.accept(Tok::minus);
        if (!neg) lex.accept(Tok::plus);
        GaussianRational first = parse_gpart();
        if (neg) first = -first;
        if (lex.current.kind == Tok::plus || lex.current.kind == Tok::minus) {
            Token sign = lex.current;
            bool neg2 = lex.current.kind == Tok::minus;
            lex.advance();
            GaussianRational second = parse_gpart();
            if (neg2) second = -second;
            if (first.is_real() == second.is_real())
                lex.fail("expected one real and one imaginary part", sign);
            return first + second;
        }
        return first;
    }

    // Term of a series: '*'-separated scalar and variable factors.
    void parse_term(bool negative, std::map<Index3, GaussianRational>& acc) {
        GaussianRational coef(negative ? -1 : 1);
        Index3 I{};
        bool any = false;
        while (true) {
            Token t = lex.current;
            if (t.kind == Tok::integer) {
                coef *= parse_gpart();
            } else if (t.kind == Tok::lparen) {
                lex.advance();
                coef *= parse_gaussian();
                lex.expect(Tok::rparen, "')'");
            } else if (t.kind == Tok::ident) {
                if (t.text == "i") {
                    lex.advance();
                    coef *= GaussianRational::i();
                } else if (t.text == "x" || t.text == "y" || t.text == "z") {
                    lex.advance();
                    int var = t.text == "x" ? 0 : (t.text == "y" ? 1 : 2);
                    int e = 1;
                    if (lex.accept(Tok::caret)) {
                        Token ex = lex.expect(Tok::integer, "an exponent");
                        e = std::stoi(ex.text);
                        if (e > 512) lex.fail("exponent too large", ex);
                    }
                    I[var] += e;
                } else {
                    lex.fail("unknown symbol '" + t.text + "'", t);
                }
            } else {
                lex.fail_here("expected a term factor");
            }
            any = true;
            if (!lex.accept(Tok::star)) break;
        }
        if (!any) lex.fail_here("empty term");
        auto [it, inserted] = acc.emplace(I, coef);
        if (!inserted) it->second += coef;
    }

    std::map<Index3, GaussianRational> parse_series_terms() {
        std::map<Index3, GaussianRational> acc;
        bool negative = lex.accept(Tok::minus);
        parse_term(negative, acc);
        while (lex.current.kind == Tok::plus || lex.current.kind == Tok::minus) {
            bool neg = lex.current.kind == Tok::minus;
            lex.advance();
            parse_term(neg, acc);
        }
        return acc;
    }
};

std::string gaussian_for_lambda(const GaussianRational& g) { return g.str(); }

} // namespace

VectorFieldGerm parse_field(const std::string& text, std::optional<int> order_override) {
    Parser p(text);
    std::optional<std::array<GaussianRational, 3>> lambda;
    std::optional<int> order;
    std::array<std::optional<std::map<Index3, GaussianRational>>, 3> a_terms;
    std::array<Token, 3> a_pos{};

    while (p.lex.current.kind != Tok::end) {
        Token head = p.lex.expect(Tok::ident, "a statement (lambda, a1, a2, a3, order)");
        p.lex.expect(Tok::eq, "'='");
        if (head.text == "lambda") {
            std::array<GaussianRational, 3> l;
            l[0] = p.parse_gaussian();
            p.lex.expect(Tok::comma, "','");
            l[1] = p.parse_gaussian();
            p.lex.expect(Tok::comma, "','");
            l[2] = p.parse_gaussian();
            for (int j = 0; j < 3; ++j)
                if (l[static_cast<size_t>(j)].is_zero())
                    p.lex.fail("zero eigenvalue lambda" + std::to_string(j + 1), head);
            lambda = l;
        } else if (head.text == "order") {
            Token t = p.lex.expect(Tok::integer, "a truncation order");
            order = std::stoi(t.text);
        } else if (head.text == "a1" || head.text == "a2" || head.text == "a3") {
            int j = head.text[1] - '1';
            a_pos[static_cast<size_t>(j)] = head;
            if (p.lex.current.kind == Tok::integer && p.lex.current.text == "0") {
                // A lone 0 denotes the zero series.
                Token zero = p.lex.current;
                p.lex.advance();
                if (p.lex.current.kind != Tok::semi && p.lex.current.kind != Tok::end)
                    p.lex.fail("unexpected input after '0'", zero);
                a_terms[static_cast<size_t>(j)] = std::map<Index3, GaussianRational>{};
            } else {
                a_terms[static_cast<size_t>(j)] = p.parse_series_terms();
            }
        } else {
            p.lex.fail("unknown statement '" + head.text + "'", head);
        }
        if (!p.lex.accept(Tok::semi) && p.lex.current.kind != Tok::end)
            p.lex.fail_here("expected ';'");
    }

    if (order_override) order = order_override;
    if (!lambda) throw ParseError("missing 'lambda' statement", 1, 1);
    if (!order) throw ParseError("missing 'order' statement", 1, 1);
    if (*order < 2) throw ParseError("order must be at least 2", 1, 1);

    std::array<Series3, 3> a{Series3(*order), Series3(*order), Series3(*order)};
    for (int j = 0; j < 3; ++j) {
        if (!a_terms[static_cast<size_t>(j)]) continue;
        const Token& at = a_pos[static_cast<size_t>(j)];
        for (const auto& [I, c] : *a_terms[static_cast<size_t>(j)]) {
            if (c.is_zero()) continue;
            if (I.order() == 0)
                throw ParseError("constant term in a" + std::to_string(j + 1), at.line, at.col);
            if (I.order() > *order)
                throw ParseError("term of degree " + std::to_string(I.order()) + " in a" +
                                     std::to_string(j + 1) + " exceeds order " + std::to_string(*order),
                                 at.line, at.col);
            a[static_cast<size_t>(j)].add_term(I, c);
        }
    }
    try {
        return VectorFieldGerm(*lambda, std::move(a));
    } catch (const Error& e) {
        throw ParseError(e.what(), 1, 1);
    }
}

std::string print_field(const VectorFieldGerm& X) {
    std::string out = "lambda = ";
    for (int j = 0; j < 3; ++j) {
        if (j) out += ", ";
        out += gaussian_for_lambda(X.lambda()[static_cast<size_t>(j)]);
    }
    out += ";\n";
    for (int j = 0; j < 3; ++j)
        out += "a" + std::to_string(j + 1) + " = " + X.a(j).str() + ";\n";
    out += "order = " + std::to_string(X.order()) + ";\n";
    return out;
}

GaussianRational parse_gaussian_literal(const std::string& text) {
    Parser p(text);
    GaussianRational g = p.parse_gaussian();
    if (p.lex.current.kind != Tok::end) p.lex.fail_here("trailing input after scalar");
    return g;
}

} // namespace holint
