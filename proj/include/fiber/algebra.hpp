#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "fiber/signature.hpp"

namespace fiber {

/// Tolerance used to accept floating-point idempotents (p*p == p).
inline constexpr double kIdempotentTolerance = 1e-14;

template <class Scalar>
constexpr bool is_exact_v = !std::is_floating_point_v<Scalar>;

/// Element of the signed abelian group algebra over `Scalar`.
/// Coefficients are dense, indexed by subset bitmask: (1, e1, e2, e12, e3, ...).
template <class Scalar>
class Element {
 public:
  explicit Element(Signature sig) : sig_(sig), coeffs_(sig.dimension(), Scalar{0}) {}

  Element(Signature sig, std::vector<Scalar> coeffs) : sig_(sig), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != sig_.dimension()) {
      throw AlgebraError("element of signature \"" + sig_.str() + "\" needs " +
                         std::to_string(sig_.dimension()) + " coefficients, got " +
                         std::to_string(coeffs_.size()));
    }
  }

  static Element identity(Signature sig) { return unit(sig, 0); }

  static Element unit(Signature sig, BasisIndex s, Scalar c = Scalar{1}) {
    if (!sig.contains(s)) throw AlgebraError("basis index out of range for \"" + sig.str() + "\"");
    Element e(sig);
    e.coeffs_[s] = c;
    return e;
  }

  const Signature& signature() const noexcept { return sig_; }
  std::span<const Scalar> coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  const Scalar& operator[](BasisIndex s) const { return coeffs_.at(s); }

  friend Element operator+(const Element& a, const Element& b) {
    require_same(a.sig_, b.sig_);
    Element r = a;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
    return r;
  }

  friend Element operator-(const Element& a, const Element& b) {
    require_same(a.sig_, b.sig_);
    Element r = a;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] -= b.coeffs_[i];
    return r;
  }

  friend Element operator*(const Scalar& k, const Element& a) {
    Element r = a;
    for (auto& c : r.coeffs_) c *= k;
    return r;
  }

  friend bool operator==(const Element& a, const Element& b) {
    return a.sig_ == b.sig_ && a.coeffs_ == b.coeffs_;
  }

 private:
  Signature sig_;
  std::vector<Scalar> coeffs_;
};

/// Bilinear extension of e_S e_T = basis_sign(S, T) e_{S xor T}.
template <class Scalar>
Element<Scalar> multiply(const Element<Scalar>& a, const Element<Scalar>& b) {
  require_same(a.signature(), b.signature());
  const auto& sig = a.signature();
  std::vector<Scalar> out(sig.dimension(), Scalar{0});
  const auto ac = a.coeffs();
  const auto bc = b.coeffs();
  for (BasisIndex s = 0; s < ac.size(); ++s) {
    if (ac[s] == Scalar{0}) continue;
    for (BasisIndex t = 0; t < bc.size(); ++t) {
      if (bc[t] == Scalar{0}) continue;
      const Scalar term = ac[s] * bc[t];
      if (basis_sign(s, t, sig) > 0) {
        out[s ^ t] += term;
      } else {
        out[s ^ t] -= term;
      }
    }
  }
  return Element<Scalar>(sig, std::move(out));
}

template <class Scalar>
Element<Scalar> operator*(const Element<Scalar>& a, const Element<Scalar>& b) {
  return multiply(a, b);
}

/// Largest absolute coefficient difference.
template <class Scalar>
Scalar max_abs_difference(const Element<Scalar>& a, const Element<Scalar>& b) {
  require_same(a.signature(), b.signature());
  Scalar worst{0};
  for (std::size_t i = 0; i < a.size(); ++i) {
    Scalar d = a.coeffs()[i] - b.coeffs()[i];
    if (d < Scalar{0}) d = -d;
    worst = std::max(worst, d);
  }
  return worst;
}

/// An element known to satisfy p*p = p (exactly, or within kIdempotentTolerance).
template <class Scalar>
class Idempotent {
 public:
  /// Verifies idempotency; throws AlgebraError otherwise.
  static Idempotent checked(Element<Scalar> p) {
    const auto sq = multiply(p, p);
    bool ok;
    if constexpr (is_exact_v<Scalar>) {
      ok = sq == p;
    } else {
      ok = max_abs_difference(sq, p) <= kIdempotentTolerance;
    }
    if (!ok) throw AlgebraError("element is not idempotent (p*p != p)");
    return Idempotent(std::move(p));
  }

  const Element<Scalar>& element() const noexcept { return p_; }
  const Signature& signature() const noexcept { return p_.signature(); }

 private:
  explicit Idempotent(Element<Scalar> p) : p_(std::move(p)) {}
  Element<Scalar> p_;
};

/// 1/2 (1 + sign e_S). Requires e_S^2 = +1.
template <class Scalar = double>
Idempotent<Scalar> idempotent_half(BasisIndex s, int sign, const Signature& sig) {
  if (!sig.contains(s)) throw AlgebraError("basis index out of range for \"" + sig.str() + "\"");
  if (sign != 1 && sign != -1) throw AlgebraError("projector sign must be +1 or -1");
  if (basis_sign(s, s, sig) != 1) {
    throw AlgebraError(sig.label(s) + " squares to -1 in signature \"" + sig.str() +
                       "\"; 1/2(1 +- " + sig.label(s) + ") is not idempotent");
  }
  const Scalar half = Scalar{1} / Scalar{2};
  std::vector<Scalar> c(sig.dimension(), Scalar{0});
  c[0] += half;
  c[s] += sign > 0 ? half : -half;
  return Idempotent<Scalar>::checked(Element<Scalar>(sig, std::move(c)));
}

/// x p: projects x onto the left ideal generated by p.
template <class Scalar>
Element<Scalar> right_project(const Element<Scalar>& x, const Idempotent<Scalar>& p) {
  return multiply(x, p.element());
}

}  // namespace fiber
