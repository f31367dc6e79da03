#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace hochkit {

enum class Field { Q, F2 };

std::string field_name(Field f);
Field parse_field(const std::string& s);

struct FieldMismatch : std::runtime_error {
    FieldMismatch() : std::runtime_error("inconsistent field tags") {}
};

// Exact scalar over Q or Z/2. Z/2 values are kept as 0/1 integers.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v, Field f = Field::Q) : q_(v), field_(f) { normalize(); }
    Scalar(mpq_class v, Field f = Field::Q) : q_(std::move(v)), field_(f) { normalize(); }
    static Scalar ratio(long num, long den, Field f = Field::Q);

    Field field() const { return field_; }
    const mpq_class& value() const { return q_; }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    Scalar operator-() const;

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Re-tag a rational coefficient into field f (numerator parity for Z/2).
    Scalar in(Field f) const;
    std::string str() const;

private:
    void normalize();
    void check(const Scalar& o) const;

    mpq_class q_{0};
    Field field_ = Field::Q;
};

inline Scalar sign_scalar(int parity, Field f) { return Scalar((parity & 1) ? -1 : 1, f); }

}  // namespace hochkit
