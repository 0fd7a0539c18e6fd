#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace gammahc {

using Integer = mpz_class;
using Scalar = mpq_class;

/// The coefficient ring k: one of Z, Z/m (m >= 2) or Q. All arithmetic is
/// exact; scalars are carried as rationals and normalized by the ring.
class GroundRing {
 public:
  enum class Kind { Integers, IntegersMod, Rationals };

  static GroundRing integers() { return GroundRing(Kind::Integers, 0); }
  static GroundRing rationals() { return GroundRing(Kind::Rationals, 0); }
  static GroundRing integers_mod(const Integer& m);

  /// Parses "Z", "Q" or "Z/m".
  static GroundRing parse(const std::string& text);

  Kind kind() const { return kind_; }
  const Integer& modulus() const { return modulus_; }

  bool is_integers() const { return kind_ == Kind::Integers; }
  bool is_rationals() const { return kind_ == Kind::Rationals; }
  bool is_modular() const { return kind_ == Kind::IntegersMod; }
  /// Q, or Z/p with p prime.
  bool is_field() const;

  /// Canonical representative: integers stay integers, Z/m reduces into
  /// [0, m), Q canonicalizes. Throws NotInteger for a non-integral value
  /// over Z or a non-invertible denominator over Z/m.
  Scalar normalize(const Scalar& x) const;
  bool is_zero(const Scalar& x) const { return normalize(x) == 0; }
  bool is_unit(const Scalar& x) const;
  std::optional<Scalar> inverse(const Scalar& x) const;

  std::string to_string() const;

  bool operator==(const GroundRing& o) const {
    return kind_ == o.kind_ && modulus_ == o.modulus_;
  }
  bool operator!=(const GroundRing& o) const { return !(*this == o); }

 private:
  GroundRing(Kind kind, const Integer& m) : kind_(kind), modulus_(m) {}

  Kind kind_;
  Integer modulus_;
};

Integer binomial(unsigned long n, unsigned long k);

}  // namespace gammahc
