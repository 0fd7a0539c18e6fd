#include "gammahc/ground_ring.hpp"

#include "gammahc/error.hpp"

namespace gammahc {

GroundRing GroundRing::integers_mod(const Integer& m) {
  if (m < 2) {
    throw ParseError("Z/m needs m >= 2, got " + m.get_str());
  }
  return GroundRing(Kind::IntegersMod, m);
}

GroundRing GroundRing::parse(const std::string& text) {
  if (text == "Z") return integers();
  if (text == "Q") return rationals();
  if (text.size() > 2 && text.rfind("Z/", 0) == 0) {
    const std::string digits = text.substr(2);
    for (char c : digits) {
      if (c < '0' || c > '9') throw ParseError("bad modulus in ring '" + text + "'");
    }
    return integers_mod(Integer(digits));
  }
  throw ParseError("unknown ring '" + text + "' (expected Z, Q or Z/m)");
}

bool GroundRing::is_field() const {
  if (kind_ == Kind::Rationals) return true;
  if (kind_ == Kind::Integers) return false;
  return mpz_probab_prime_p(modulus_.get_mpz_t(), 40) != 0;
}

Scalar GroundRing::normalize(const Scalar& x) const {
  switch (kind_) {
    case Kind::Rationals:
      return x;
    case Kind::Integers:
      if (x.get_den() != 1) throw NotInteger("non-integral scalar " + x.get_str() + " over Z");
      return x;
    case Kind::IntegersMod: {
      Integer num = x.get_num();
      const Integer& den = x.get_den();
      if (den != 1) {
        Integer inv;
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus_.get_mpz_t()) == 0) {
          throw NotInteger("denominator of " + x.get_str() + " is not invertible mod " +
                           modulus_.get_str());
        }
        num *= inv;
      }
      Integer r;
      mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), modulus_.get_mpz_t());
      return Scalar(r);
    }
  }
  return x;
}

bool GroundRing::is_unit(const Scalar& x) const { return inverse(x).has_value(); }

std::optional<Scalar> GroundRing::inverse(const Scalar& x) const {
  const Scalar v = normalize(x);
  switch (kind_) {
    case Kind::Rationals:
      if (v == 0) return std::nullopt;
      return Scalar(1) / v;
    case Kind::Integers:
      if (v == 1 || v == -1) return v;
      return std::nullopt;
    case Kind::IntegersMod: {
      Integer inv;
      Integer num = v.get_num();
      if (mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), modulus_.get_mpz_t()) == 0) {
        return std::nullopt;
      }
      return Scalar(inv);
    }
  }
  return std::nullopt;
}

std::string GroundRing::to_string() const {
  switch (kind_) {
    case Kind::Integers:
      return "Z";
    case Kind::Rationals:
      return "Q";
    case Kind::IntegersMod:
      return "Z/" + modulus_.get_str();
  }
  return "?";
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace gammahc
