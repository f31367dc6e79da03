#include "hochkit/scalar.hpp"

namespace hochkit {

std::string field_name(Field f) { return f == Field::Q ? "q" : "f2"; }

Field parse_field(const std::string& s)
{
    if (s == "q" || s == "Q") return Field::Q;
    if (s == "f2" || s == "F2") return Field::F2;
    throw std::invalid_argument("unknown field: " + s);
}

Scalar Scalar::ratio(long num, long den, Field f)
{
    if (den == 0) throw std::invalid_argument("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q, f);
}

void Scalar::normalize()
{
    if (field_ == Field::Q) return;
    if (q_.get_den() != 1) {
        // invertible denominators only: odd denominators map to their inverse, which is 1 mod 2
        if (q_.get_den() % 2 == 0) throw std::domain_error("denominator not invertible mod 2");
    }
    q_ = mpz_class(q_.get_num() % 2 != 0 ? 1 : 0);
}

void Scalar::check(const Scalar& o) const
{
    if (field_ != o.field_) throw FieldMismatch();
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    check(o);
    q_ += o.q_;
    normalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    check(o);
    q_ -= o.q_;
    normalize();
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    check(o);
    q_ *= o.q_;
    normalize();
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    check(o);
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    normalize();
    return *this;
}

Scalar Scalar::operator-() const
{
    Scalar r(*this);
    r.q_ = -r.q_;
    r.normalize();
    return r;
}

Scalar Scalar::in(Field f) const { return Scalar(q_, f); }

std::string Scalar::str() const { return q_.get_str(); }

}  // namespace hochkit
