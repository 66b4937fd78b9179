#include "rootbound/rational.hpp"

namespace rootbound {

Rational Rational::from_string(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        throw std::invalid_argument("Rational: cannot parse '" + text + "'");
    if (q.get_den() == 0) throw std::domain_error("Rational: zero denominator in '" + text + "'");
    q.canonicalize();
    return Rational(std::move(q), already_canonical{});
}

std::string Rational::str() const { return v_.get_str(); }

Rational Rational::pow(long e) const {
    if (e < 0) {
        if (v_ == 0) throw std::domain_error("Rational: 0 raised to a negative power");
        return (Rational(1) / *this).pow(-e);
    }
    mpq_class r;
    mpz_pow_ui(r.get_num_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(r.get_den_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
    // num/den already coprime, so the powers are too.
    return Rational(std::move(r), already_canonical{});
}

}  // namespace rootbound
