#ifndef MAASSCLASS_FORMEXPR_HPP
#define MAASSCLASS_FORMEXPR_HPP

// Parser and evaluator for user-entered modular form expressions over the
// generators E4, E6, E10, Delta and J, e.g. "E10/Delta" or "E4^3/Delta".
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := rational | generator | factor '^' integer | '(' expr ')'
//
// Sums of unequal weights are rejected at parse time.

#include "qseries.hpp"

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace maassclass {

struct FormSyntaxError : std::runtime_error {
    FormSyntaxError(const std::string& what, size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)),
          position(pos) {}
    size_t position;
};

enum class Generator { E4, E6, E10, Delta, J };

inline int generator_weight(Generator g) {
    switch (g) {
    case Generator::E4: return 4;
    case Generator::E6: return 6;
    case Generator::E10: return 10;
    case Generator::Delta: return 12;
    case Generator::J: return 0;
    }
    return 0;
}

struct FormExpr {
    enum class Kind { Scalar, Gen, Power, Product, Quotient, Sum, Difference };

    Kind kind = Kind::Scalar;
    Rational scalar = Rational(0);
    Generator gen = Generator::E4;
    int64_t exponent = 0;
    std::vector<FormExpr> children;
    int weight = 0;

    static FormExpr make_scalar(Rational v) {
        FormExpr e;
        e.kind = Kind::Scalar;
        e.scalar = std::move(v);
        return e;
    }
    static FormExpr make_gen(Generator g) {
        FormExpr e;
        e.kind = Kind::Gen;
        e.gen = g;
        e.weight = generator_weight(g);
        return e;
    }
    static FormExpr make_power(FormExpr base, int64_t exp) {
        FormExpr e;
        e.kind = Kind::Power;
        e.exponent = exp;
        e.weight = base.weight * static_cast<int>(exp);
        e.children.push_back(std::move(base));
        return e;
    }
    static FormExpr make_binary(Kind k, FormExpr lhs, FormExpr rhs) {
        FormExpr e;
        e.kind = k;
        switch (k) {
        case Kind::Product: e.weight = lhs.weight + rhs.weight; break;
        case Kind::Quotient: e.weight = lhs.weight - rhs.weight; break;
        case Kind::Sum:
        case Kind::Difference:
            if (lhs.weight != rhs.weight)
                throw WeightMismatchError(lhs.weight, rhs.weight);
            e.weight = lhs.weight;
            break;
        default: throw std::logic_error("make_binary on non-binary kind");
        }
        e.children.push_back(std::move(lhs));
        e.children.push_back(std::move(rhs));
        return e;
    }
};

namespace detail {

class FormParser {
public:
    explicit FormParser(std::string_view text) : text_(text) {}

    FormExpr parse() {
        FormExpr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            throw FormSyntaxError("unexpected trailing input", pos_);
        return e;
    }

private:
    FormExpr parse_expr() {
        skip_ws();
        bool negate = false;
        if (peek() == '-') { // leading sign on the first term
            ++pos_;
            negate = true;
        }
        FormExpr acc = parse_term();
        if (negate)
            acc = FormExpr::make_binary(FormExpr::Kind::Product,
                                        FormExpr::make_scalar(Rational(-1)),
                                        std::move(acc));
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') return acc;
            ++pos_;
            FormExpr rhs = parse_term();
            acc = FormExpr::make_binary(c == '+' ? FormExpr::Kind::Sum
                                                 : FormExpr::Kind::Difference,
                                        std::move(acc), std::move(rhs));
        }
    }

    FormExpr parse_term() {
        FormExpr acc = parse_factor();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '*' && c != '/') return acc;
            ++pos_;
            FormExpr rhs = parse_factor();
            acc = FormExpr::make_binary(c == '*' ? FormExpr::Kind::Product
                                                 : FormExpr::Kind::Quotient,
                                        std::move(acc), std::move(rhs));
        }
    }

    FormExpr parse_factor() {
        FormExpr base = parse_primary();
        for (;;) {
            skip_ws();
            if (peek() != '^') return base;
            ++pos_;
            base = FormExpr::make_power(std::move(base), parse_integer());
        }
    }

    FormExpr parse_primary() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            FormExpr e = parse_expr();
            skip_ws();
            if (peek() != ')') throw FormSyntaxError("expected ')'", pos_);
            ++pos_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return FormExpr::make_scalar(Rational(parse_digits()));
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   std::isalnum(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            std::string_view name = text_.substr(start, pos_ - start);
            if (name == "E4") return FormExpr::make_gen(Generator::E4);
            if (name == "E6") return FormExpr::make_gen(Generator::E6);
            if (name == "E10") return FormExpr::make_gen(Generator::E10);
            if (name == "Delta") return FormExpr::make_gen(Generator::Delta);
            if (name == "J") return FormExpr::make_gen(Generator::J);
            throw FormSyntaxError("unknown generator '" + std::string(name) +
                                      "' (expected E4, E6, E10, Delta or J)",
                                  start);
        }
        throw FormSyntaxError(c ? std::string("unexpected character '") + c + "'"
                                : "unexpected end of input",
                              pos_);
    }

    int64_t parse_integer() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            ++pos_;
            neg = true;
        }
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw FormSyntaxError("expected integer exponent", pos_);
        int64_t v = parse_digits();
        return neg ? -v : v;
    }

    int64_t parse_digits() {
        int64_t v = 0;
        size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > (int64_t(1) << 40))
                throw FormSyntaxError("integer literal too large", start);
            ++pos_;
        }
        return v;
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    std::string_view text_;
    size_t pos_ = 0;
};

inline QSeries expand_at(const FormExpr& e, int64_t order) {
    switch (e.kind) {
    case FormExpr::Kind::Scalar: return QSeries::constant(e.scalar, order);
    case FormExpr::Kind::Gen:
        switch (e.gen) {
        case Generator::E4: return eisenstein(4, order);
        case Generator::E6: return eisenstein(6, order);
        case Generator::E10: return eisenstein(10, order);
        case Generator::Delta: return delta(order);
        case Generator::J: return j_function(order);
        }
        throw std::logic_error("unreachable");
    case FormExpr::Kind::Power: return power(expand_at(e.children[0], order), e.exponent);
    case FormExpr::Kind::Product:
        return expand_at(e.children[0], order) * expand_at(e.children[1], order);
    case FormExpr::Kind::Quotient:
        return expand_at(e.children[0], order) * invert(expand_at(e.children[1], order));
    case FormExpr::Kind::Sum:
        return expand_at(e.children[0], order) + expand_at(e.children[1], order);
    case FormExpr::Kind::Difference:
        return expand_at(e.children[0], order) - expand_at(e.children[1], order);
    }
    throw std::logic_error("unreachable");
}

} // namespace detail

inline FormExpr parse_form_expr(std::string_view text) {
    return detail::FormParser(text).parse();
}

// Expands with internal padding: inverting a series of valuation v costs 2v
// orders of knowledge, so generators are expanded slightly deeper until the
// requested order is reached, then the result is truncated exactly to it.
inline QSeries expand(const FormExpr& e, int64_t order) {
    for (int64_t pad = 4;; pad *= 2) {
        QSeries r = detail::expand_at(e, order + pad);
        if (r.trunc_order() >= order) return r.truncate(order);
        if (pad > 64 * (std::abs(order) + 1))
            throw std::domain_error("expression loses too many orders to expand");
    }
}

} // namespace maassclass

#endif
