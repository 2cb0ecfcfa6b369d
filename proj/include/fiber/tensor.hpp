#pragma once

#include <span>
#include <utility>
#include <vector>

#include "fiber/algebra.hpp"
#include "fiber/kernels.hpp"

namespace fiber {

/// Element of A (x) A for a single base signature. The base scalar c maps to
/// c (1 (x) 1), i.e. the (0, 0) slot.
template <class Scalar>
class Tensor {
 public:
  explicit Tensor(Signature sig) : sig_(sig), coeffs_(sig.dimension() * sig.dimension(), Scalar{0}) {}

  Tensor(Signature sig, std::vector<Scalar> coeffs) : sig_(sig), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != sig_.dimension() * sig_.dimension()) {
      throw AlgebraError("tensor of signature \"" + sig_.str() + "\" needs " +
                         std::to_string(sig_.dimension() * sig_.dimension()) + " coefficients");
    }
  }

  static Tensor identity(Signature sig) { return unit(sig, 0, 0); }

  /// c e_S (x) e_T
  static Tensor unit(Signature sig, BasisIndex s, BasisIndex t, Scalar c = Scalar{1}) {
    if (!sig.contains(s) || !sig.contains(t)) {
      throw AlgebraError("basis index out of range for \"" + sig.str() + "\"");
    }
    Tensor r(sig);
    r.coeffs_[s * sig.dimension() + t] = c;
    return r;
  }

  /// a (x) b
  static Tensor outer(const Element<Scalar>& a, const Element<Scalar>& b) {
    require_same(a.signature(), b.signature());
    Tensor r(a.signature());
    const std::size_t dim = r.dimension();
    for (std::size_t s = 0; s < dim; ++s) {
      for (std::size_t t = 0; t < dim; ++t) r.coeffs_[s * dim + t] = a.coeffs()[s] * b.coeffs()[t];
    }
    return r;
  }

  const Signature& signature() const noexcept { return sig_; }
  std::size_t dimension() const noexcept { return sig_.dimension(); }
  /// Row-major, 4^n entries.
  std::span<const Scalar> coeffs() const noexcept { return coeffs_; }
  const Scalar& at(BasisIndex s, BasisIndex t) const { return coeffs_.at(s * dimension() + t); }

  Tensor transposed() const {
    Tensor r(sig_);
    const std::size_t dim = dimension();
    for (std::size_t s = 0; s < dim; ++s) {
      for (std::size_t t = 0; t < dim; ++t) r.coeffs_[t * dim + s] = coeffs_[s * dim + t];
    }
    return r;
  }

  friend Tensor operator+(const Tensor& a, const Tensor& b) {
    require_same(a.sig_, b.sig_);
    Tensor r = a;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
    return r;
  }

  friend Tensor operator-(const Tensor& a, const Tensor& b) {
    require_same(a.sig_, b.sig_);
    Tensor r = a;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] -= b.coeffs_[i];
    return r;
  }

  friend Tensor operator*(const Scalar& k, const Tensor& a) {
    Tensor r = a;
    for (auto& c : r.coeffs_) c *= k;
    return r;
  }

  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.sig_ == b.sig_ && a.coeffs_ == b.coeffs_;
  }

 private:
  Signature sig_;
  std::vector<Scalar> coeffs_;
};

/// (a (x) b)(c (x) d) = ac (x) bd, extended bilinearly.
template <class Scalar>
Tensor<Scalar> tensor_multiply(const Tensor<Scalar>& a, const Tensor<Scalar>& b) {
  require_same(a.signature(), b.signature());
  std::vector<Scalar> out(a.coeffs().size(), Scalar{0});
  kernels::tensor_product_parallel<Scalar>(a.signature(), a.coeffs(), b.coeffs(), out);
  return Tensor<Scalar>(a.signature(), std::move(out));
}

/// Same product through the serial scatter kernel; kept as the test reference.
template <class Scalar>
Tensor<Scalar> tensor_multiply_reference(const Tensor<Scalar>& a, const Tensor<Scalar>& b) {
  require_same(a.signature(), b.signature());
  std::vector<Scalar> out(a.coeffs().size(), Scalar{0});
  kernels::tensor_product_reference<Scalar>(a.signature(), a.coeffs(), b.coeffs(), out);
  return Tensor<Scalar>(a.signature(), std::move(out));
}

template <class Scalar>
Tensor<Scalar> operator*(const Tensor<Scalar>& a, const Tensor<Scalar>& b) {
  return tensor_multiply(a, b);
}

template <class Scalar>
Tensor<Scalar> square_embed(const Element<Scalar>& x) {
  return Tensor<Scalar>::outer(x, x);
}

/// e_S (x) e_S
template <class Scalar = double>
Tensor<Scalar> diagonal(BasisIndex s, const Signature& sig) {
  return Tensor<Scalar>::unit(sig, s, s);
}

template <class Scalar>
Scalar extract(const Tensor<Scalar>& t, BasisIndex s, BasisIndex u) {
  return t.at(s, u);
}

template <class Scalar>
Scalar max_abs_difference(const Tensor<Scalar>& a, const Tensor<Scalar>& b) {
  require_same(a.signature(), b.signature());
  Scalar worst{0};
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    Scalar d = a.coeffs()[i] - b.coeffs()[i];
    if (d < Scalar{0}) d = -d;
    worst = std::max(worst, d);
  }
  return worst;
}

/// A tensor known to satisfy p*p = p.
template <class Scalar>
class TensorProjector {
 public:
  static TensorProjector checked(Tensor<Scalar> p) {
    const auto sq = tensor_multiply(p, p);
    bool ok;
    if constexpr (is_exact_v<Scalar>) {
      ok = sq == p;
    } else {
      ok = max_abs_difference(sq, p) <= kIdempotentTolerance;
    }
    if (!ok) throw AlgebraError("tensor is not idempotent (p*p != p)");
    return TensorProjector(std::move(p));
  }

  const Tensor<Scalar>& tensor() const noexcept { return p_; }
  const Signature& signature() const noexcept { return p_.signature(); }

 private:
  explicit TensorProjector(Tensor<Scalar> p) : p_(std::move(p)) {}
  Tensor<Scalar> p_;
};

/// 1/2 (1 (x) 1 + sign e_S (x) e_S). Always idempotent: (e_S (x) e_S)^2 = 1 (x) 1.
template <class Scalar = double>
TensorProjector<Scalar> projector_left(BasisIndex s, int sign, const Signature& sig) {
  if (sign != 1 && sign != -1) throw AlgebraError("projector sign must be +1 or -1");
  const Scalar half = Scalar{1} / Scalar{2};
  auto p = half * Tensor<Scalar>::identity(sig);
  p = p + (sign > 0 ? half : -half) * diagonal<Scalar>(s, sig);
  return TensorProjector<Scalar>::checked(std::move(p));
}

/// p (x) q
template <class Scalar>
TensorProjector<Scalar> projector_pair_lift(const Idempotent<Scalar>& p, const Idempotent<Scalar>& q) {
  return TensorProjector<Scalar>::checked(Tensor<Scalar>::outer(p.element(), q.element()));
}

/// P+ (x) P- + P- (x) P+ for the complementary pair 1/2(1 +- e_S).
template <class Scalar = double>
TensorProjector<Scalar> projector_mixed(BasisIndex s, const Signature& sig) {
  const auto plus = idempotent_half<Scalar>(s, +1, sig);
  const auto minus = idempotent_half<Scalar>(s, -1, sig);
  return TensorProjector<Scalar>::checked(Tensor<Scalar>::outer(plus.element(), minus.element()) +
                                          Tensor<Scalar>::outer(minus.element(), plus.element()));
}

/// The three right sectors built from 1/2(1 +- e_S): P+ (x) P+, mixed, P- (x) P-.
template <class Scalar = double>
struct SectorProjectors {
  TensorProjector<Scalar> plus_plus;
  TensorProjector<Scalar> mixed;
  TensorProjector<Scalar> minus_minus;

  static SectorProjectors build(BasisIndex s, const Signature& sig) {
    const auto plus = idempotent_half<Scalar>(s, +1, sig);
    const auto minus = idempotent_half<Scalar>(s, -1, sig);
    return {projector_pair_lift(plus, plus), projector_mixed<Scalar>(s, sig),
            projector_pair_lift(minus, minus)};
  }
};

}  // namespace fiber
