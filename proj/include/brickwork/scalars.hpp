#ifndef BRICKWORK_SCALARS_HPP
#define BRICKWORK_SCALARS_HPP

// Ground fields: Q (exact rationals on top of GMP) and F_p (prime fields
// with a runtime modulus).  Everything downstream is templated over one of
// these two types; no floating point exists anywhere in the library.

#include <cstdint>
#include <string>
#include <type_traits>

#include <gmpxx.h>

#include "brickwork/errors.hpp"

namespace brickwork {

class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit from integer literals
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw zero_denominator_error();
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }
    explicit Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
        if (den == 0) throw zero_denominator_error();
        v_.canonicalize();
    }

    static Rational from_decimal_string(const std::string& s) {
        // integer or "a/b"
        try {
            return Rational(mpq_class(s, 10));
        } catch (const std::invalid_argument&) {
            throw parse_error("bad rational literal: " + s);
        }
    }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
    Rational operator/(const Rational& o) const {
        if (o.is_zero()) throw zero_denominator_error("division by zero in Q");
        return Rational(mpq_class(v_ / o.v_));
    }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    Rational inv() const {
        if (is_zero()) throw zero_denominator_error("inverse of zero in Q");
        return Rational(mpq_class(1 / v_));
    }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }
    bool operator<(const Rational& o) const { return v_ < o.v_; }

    std::string str() const { return v_.get_str(); }

    const mpq_class& raw() const { return v_; }

  private:
    mpq_class v_;
};

// Element of F_p.  The modulus travels with the value; a default-constructed
// element (or one made from an integer literal) has modulus 0 and behaves as
// an integer constant that adopts the modulus of the other operand.  This
// lets field-generic templates write K(0), K(1), K(-2) without a context.
class PrimeField {
  public:
    PrimeField() : v_(0), p_(0) {}
    PrimeField(long n) : v_(n), p_(0) {}  // NOLINT
    PrimeField(long n, std::uint64_t p) : v_(n), p_(p) { reduce(); }

    static bool is_prime(std::uint64_t p) {
        if (p < 2) return false;
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }

    std::uint64_t modulus() const { return p_; }
    // Canonical representative in [0, p); only meaningful once p is set.
    std::uint64_t rep() const { return p_ ? static_cast<std::uint64_t>(v_) : 0; }
    long long raw() const { return v_; }

    bool is_zero() const { return p_ ? v_ == 0 : v_ == 0; }
    bool is_one() const { return p_ ? v_ == 1 : v_ == 1; }

    PrimeField operator-() const { PrimeField r(*this); r.v_ = -r.v_; r.reduce(); return r; }
    // The modulus may take 62 bits, so sums and differences of reduced
    // representatives are formed in unsigned arithmetic.
    PrimeField operator+(const PrimeField& o) const {
        PrimeField a = unify(o), b = o.unify(*this);
        if (a.p_) {
            std::uint64_t t = a.rep() + b.rep();
            if (t >= a.p_) t -= a.p_;
            a.v_ = static_cast<long long>(t);
        } else {
            a.v_ = a.v_ + b.v_;
        }
        return a;
    }
    PrimeField operator-(const PrimeField& o) const {
        PrimeField a = unify(o), b = o.unify(*this);
        if (a.p_) {
            std::uint64_t x = a.rep(), y = b.rep();
            a.v_ = static_cast<long long>(x >= y ? x - y : x + a.p_ - y);
        } else {
            a.v_ = a.v_ - b.v_;
        }
        return a;
    }
    PrimeField operator*(const PrimeField& o) const {
        PrimeField r = unify(o);
        PrimeField s = o.unify(*this);
        if (r.p_) {
            r.v_ = static_cast<long long>(
                (static_cast<unsigned __int128>(r.rep()) * s.rep()) % r.p_);
        } else {
            r.v_ = r.v_ * s.v_;  // both literals; stays small in practice
        }
        return r;
    }
    PrimeField operator/(const PrimeField& o) const { return *this * o.inv(); }
    PrimeField& operator+=(const PrimeField& o) { return *this = *this + o; }
    PrimeField& operator-=(const PrimeField& o) { return *this = *this - o; }
    PrimeField& operator*=(const PrimeField& o) { return *this = *this * o; }
    PrimeField& operator/=(const PrimeField& o) { return *this = *this / o; }

    PrimeField inv() const {
        if (p_ == 0) {
            if (v_ == 1 || v_ == -1) return *this;  // sign literals self-invert
            throw error("cannot invert an F_p literal without a modulus");
        }
        if (v_ == 0) throw zero_denominator_error("inverse of zero in F_p");
        // extended Euclid
        long long a = v_, m = static_cast<long long>(p_);
        long long x0 = 1, x1 = 0, r0 = a, r1 = m;
        while (r1 != 0) {
            long long q = r0 / r1;
            long long t = r0 - q * r1; r0 = r1; r1 = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        PrimeField r(x0, p_);
        return r;
    }

    bool operator==(const PrimeField& o) const {
        PrimeField a = unify(o), b = o.unify(*this);
        return a.v_ == b.v_;
    }
    bool operator!=(const PrimeField& o) const { return !(*this == o); }
    // consistent with equality after modulus unification; usable as map key
    bool operator<(const PrimeField& o) const {
        PrimeField a = unify(o), b = o.unify(*this);
        return a.v_ < b.v_;
    }

    std::string str() const { return p_ ? std::to_string(rep()) : std::to_string(v_); }

  private:
    // Adopt the other operand's modulus when this one is a literal.
    PrimeField unify(const PrimeField& o) const {
        PrimeField r(*this);
        if (r.p_ == 0 && o.p_ != 0) { r.p_ = o.p_; r.reduce(); }
        else if (r.p_ != 0 && o.p_ != 0 && r.p_ != o.p_)
            throw scalar_mismatch_error("mixed F_p moduli");
        return r;
    }
    void reduce() {
        if (p_ == 0) return;
        long long m = static_cast<long long>(p_);
        v_ %= m;
        if (v_ < 0) v_ += m;
    }

    long long v_;
    std::uint64_t p_;
};

// Runtime description of the ground field, used at the boundaries (parsing,
// sampling, CLI dispatch) where a bare template parameter is not enough.
struct FieldSpec {
    enum class Kind { rationals, prime };
    Kind kind = Kind::rationals;
    std::uint64_t p = 0;

    static FieldSpec rationals() { return FieldSpec{}; }
    static FieldSpec prime(std::uint64_t p) {
        if (!PrimeField::is_prime(p)) throw malformed_spec_error("modulus is not prime");
        return FieldSpec{Kind::prime, p};
    }
    // "Q" or "Fp:<p>"
    static FieldSpec parse(const std::string& s) {
        if (s == "Q" || s == "q") return rationals();
        if (s.rfind("Fp:", 0) == 0 || s.rfind("fp:", 0) == 0) {
            try {
                return prime(std::stoull(s.substr(3)));
            } catch (const std::logic_error&) {
                throw malformed_spec_error("bad field spec: " + s);
            }
        }
        throw malformed_spec_error("bad field spec: " + s + " (expected Q or Fp:<p>)");
    }
    std::string str() const {
        return kind == Kind::rationals ? "Q" : "Fp:" + std::to_string(p);
    }
};

template <class K>
K make_scalar(const FieldSpec& fs, long n);
template <>
inline Rational make_scalar<Rational>(const FieldSpec&, long n) { return Rational(n); }
template <>
inline PrimeField make_scalar<PrimeField>(const FieldSpec& fs, long n) {
    return PrimeField(n, fs.p);
}

template <class K>
struct field_traits {
    static constexpr bool char_zero = false;
};
template <>
struct field_traits<Rational> {
    static constexpr bool char_zero = true;
};
template <>
struct field_traits<PrimeField> {
    static constexpr bool char_zero = false;
};

template <class K>
inline constexpr bool is_char_zero_v = field_traits<K>::char_zero;

}  // namespace brickwork

#endif
