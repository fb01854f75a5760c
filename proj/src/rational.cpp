#include "confree/rational.hpp"

#include <ostream>

#include "confree/errors.hpp"

namespace confree {

Rational::Rational(long num, long den) : q_(num, den)
{
    if (den == 0) throw ArgumentError("rational with zero denominator");
    q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q))
{
    if (q_.get_den() == 0) throw ArgumentError("rational with zero denominator");
    q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero()) throw ArgumentError("division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::from_string(const std::string& text)
{
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw ArgumentError("bad rational literal: '" + text + "'");
    if (q.get_den() == 0) throw ArgumentError("rational with zero denominator: '" + text + "'");
    q.canonicalize();
    return Rational(std::move(q));
}

std::string Rational::str() const
{
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational gen_binom(std::int64_t n, std::int64_t k)
{
    if (k < 0) throw ArgumentError("gen_binom: k must be non-negative");
    mpz_class result;
    mpz_class nz(static_cast<long>(n));
    mpz_bin_ui(result.get_mpz_t(), nz.get_mpz_t(), static_cast<unsigned long>(k));
    return Rational(result);
}

Rational factorial(std::int64_t n)
{
    if (n < 0) throw ArgumentError("factorial: negative argument");
    mpz_class result;
    mpz_fac_ui(result.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(result);
}

}  // namespace confree
