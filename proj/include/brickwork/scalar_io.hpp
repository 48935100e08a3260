#ifndef BRICKWORK_SCALAR_IO_HPP
#define BRICKWORK_SCALAR_IO_HPP

// Text syntax for scalars, polynomials and rational functions in config
// files: sums of terms like  3*x^2*y, -1/2*x, (x^2-1)/(x-1).  The grammar is
// a small expression language over +, -, *, /, ^ and parentheses; the
// canonical serialization of a bivariate polynomial lists terms sorted by
// (deg_x, deg_y).

#include <cctype>
#include <string>

#include "brickwork/bipoly.hpp"
#include "brickwork/ratfun.hpp"

namespace brickwork {

namespace detail {

// Fraction of bivariate polynomials; the denominator is only resolved when
// the parse finishes.
template <class K>
struct BiFrac {
    BiPoly<K> num;
    BiPoly<K> den;

    static BiFrac value(BiPoly<K> p) { return {std::move(p), BiPoly<K>(K(1))}; }

    BiFrac operator+(const BiFrac& o) const { return {num * o.den + o.num * den, den * o.den}; }
    BiFrac operator-(const BiFrac& o) const { return {num * o.den - o.num * den, den * o.den}; }
    BiFrac operator*(const BiFrac& o) const { return {num * o.num, den * o.den}; }
    BiFrac operator/(const BiFrac& o) const {
        if (o.num.is_zero()) throw parse_error("division by zero in expression");
        return {num * o.den, den * o.num};
    }
    BiFrac pow(long e) const {
        BiFrac r = value(BiPoly<K>(K(1)));
        for (long i = 0; i < e; ++i) r = r * (*this);
        return r;
    }
};

template <class K>
class ExprParser {
  public:
    ExprParser(const std::string& src, const FieldSpec& fs) : s_(src), fs_(fs) {}

    BiFrac<K> parse() {
        BiFrac<K> v = sum();
        skip_ws();
        if (pos_ != s_.size()) throw parse_error("trailing input in expression: " + s_);
        return v;
    }

  private:
    BiFrac<K> sum() {
        skip_ws();
        bool neg = false;
        if (peek() == '+' || peek() == '-') neg = (get() == '-');
        BiFrac<K> acc = product();
        if (neg) acc = BiFrac<K>::value(BiPoly<K>(K(0))) - acc;
        while (true) {
            skip_ws();
            char c = peek();
            if (c == '+' || c == '-') {
                get();
                BiFrac<K> rhs = product();
                acc = (c == '+') ? acc + rhs : acc - rhs;
            } else {
                return acc;
            }
        }
    }

    BiFrac<K> product() {
        skip_ws();
        bool neg = false;
        while (peek() == '+' || peek() == '-') {  // unary signs
            if (get() == '-') neg = !neg;
            skip_ws();
        }
        BiFrac<K> acc = power();
        if (neg) acc = BiFrac<K>::value(BiPoly<K>(K(0))) - acc;
        while (true) {
            skip_ws();
            char c = peek();
            if (c == '*' || c == '/') {
                get();
                BiFrac<K> rhs = power();
                acc = (c == '*') ? acc * rhs : acc / rhs;
            } else {
                return acc;
            }
        }
    }

    BiFrac<K> power() {
        BiFrac<K> base = atom();
        skip_ws();
        if (peek() == '^') {
            get();
            skip_ws();
            long e = integer();
            if (e < 0) throw parse_error("negative exponent");
            return base.pow(e);
        }
        return base;
    }

    BiFrac<K> atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            get();
            BiFrac<K> v = sum();
            skip_ws();
            if (get() != ')') throw parse_error("missing ')' in expression: " + s_);
            return v;
        }
        if (c == 'x') {
            get();
            return BiFrac<K>::value(BiPoly<K>::var_x());
        }
        if (c == 'y') {
            get();
            return BiFrac<K>::value(BiPoly<K>::var_y());
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long n = integer();
            return BiFrac<K>::value(BiPoly<K>(make_scalar<K>(fs_, n)));
        }
        throw parse_error(std::string("unexpected character '") + c + "' in expression: " + s_);
    }

    long integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw parse_error("expected an integer in expression: " + s_);
        return std::stol(s_.substr(start, pos_ - start));
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }

    const std::string& s_;
    const FieldSpec& fs_;
    std::size_t pos_ = 0;
};

// Exact bivariate division num/den, via k(y)[x].
template <class K>
BiPoly<K> bifrac_resolve(const BiFrac<K>& f) {
    if (f.den.deg_x() == 0 && f.den.deg_y() == 0) {
        K c = f.den.eval(K(0), K(0));
        return f.num * c.inv();
    }
    Poly<RatFun<K>> n = f.num.as_x_poly_over_ky();
    Poly<RatFun<K>> d = f.den.as_x_poly_over_ky();
    auto [q, r] = divmod(n, d);
    if (!r.is_zero()) throw parse_error("expression is not a polynomial");
    // clear possible y-denominators introduced by the division
    return BiPoly<K>::from_x_poly_over_ky(q);
}

}  // namespace detail

template <class K>
BiPoly<K> parse_bipoly(const std::string& src, const FieldSpec& fs) {
    return detail::bifrac_resolve(detail::ExprParser<K>(src, fs).parse());
}

template <class K>
Poly<K> parse_poly(const std::string& src, const FieldSpec& fs) {
    BiPoly<K> b = parse_bipoly<K>(src, fs);
    if (b.deg_y() > 0) throw parse_error("unexpected 'y' in univariate polynomial: " + src);
    Poly<K> out;
    for (auto& [k, c] : b.terms()) out += Poly<K>::monomial(c, k.first);
    return out;
}

template <class K>
RatFun<K> parse_ratfun(const std::string& src, const FieldSpec& fs) {
    detail::BiFrac<K> f = detail::ExprParser<K>(src, fs).parse();
    if (f.num.deg_y() > 0 || f.den.deg_y() > 0)
        throw parse_error("unexpected 'y' in rational function: " + src);
    Poly<K> num, den;
    for (auto& [k, c] : f.num.terms()) num += Poly<K>::monomial(c, k.first);
    for (auto& [k, c] : f.den.terms()) den += Poly<K>::monomial(c, k.first);
    return RatFun<K>(num, den);
}

template <class K>
K parse_scalar(const std::string& src, const FieldSpec& fs) {
    BiPoly<K> b = parse_bipoly<K>(src, fs);
    if (b.deg_x() > 0 || b.deg_y() > 0) throw parse_error("expected a scalar: " + src);
    return b.eval(K(0), K(0));
}

}  // namespace brickwork

#endif
