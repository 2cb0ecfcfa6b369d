#pragma once

// Product kernels for the direct product algebra A (x) A.
//
// Grids are row-major, dim x dim, entry (S, T) at S * dim + T holding the
// coefficient of e_S (x) e_T. The reference kernel scatters each pair of
// input terms straight from the product rule; the parallel kernel gathers
// each output entry independently, so rows can be split across threads
// without any shared writes.

#include <cstddef>
#include <span>

#include "fiber/signature.hpp"

namespace fiber::kernels {

/// Below this many output rows the gather kernel runs on the calling thread.
inline constexpr std::size_t kParallelRowThreshold = 32;

template <class Scalar>
void tensor_product_reference(const Signature& sig, std::span<const Scalar> a,
                              std::span<const Scalar> b, std::span<Scalar> out) {
  const std::size_t dim = sig.dimension();
  for (auto& c : out) c = Scalar{0};
  for (BasisIndex s = 0; s < dim; ++s) {
    for (BasisIndex t = 0; t < dim; ++t) {
      const Scalar& x = a[s * dim + t];
      if (x == Scalar{0}) continue;
      for (BasisIndex u = 0; u < dim; ++u) {
        for (BasisIndex v = 0; v < dim; ++v) {
          const Scalar& y = b[u * dim + v];
          if (y == Scalar{0}) continue;
          const int sign = basis_sign(s, u, sig) * basis_sign(t, v, sig);
          Scalar& dst = out[(s ^ u) * dim + (t ^ v)];
          if (sign > 0) {
            dst += x * y;
          } else {
            dst -= x * y;
          }
        }
      }
    }
  }
}

/// out(P, Q) = sum_{U,V} sign(P^U, U) sign(Q^V, V) a(P^U, Q^V) b(U, V).
template <class Scalar>
void tensor_product_parallel(const Signature& sig, std::span<const Scalar> a,
                             std::span<const Scalar> b, std::span<Scalar> out) {
  const std::size_t dim = sig.dimension();
  const long rows = static_cast<long>(dim);
#pragma omp parallel for schedule(static) if (dim >= kParallelRowThreshold)
  for (long pr = 0; pr < rows; ++pr) {
    const auto p = static_cast<BasisIndex>(pr);
    for (BasisIndex q = 0; q < dim; ++q) {
      Scalar acc{0};
      for (BasisIndex u = 0; u < dim; ++u) {
        const BasisIndex s = p ^ u;
        const int su = basis_sign(s, u, sig);
        for (BasisIndex v = 0; v < dim; ++v) {
          const Scalar& y = b[u * dim + v];
          if (y == Scalar{0}) continue;
          const BasisIndex t = q ^ v;
          const Scalar term = a[s * dim + t] * y;
          if (su * basis_sign(t, v, sig) > 0) {
            acc += term;
          } else {
            acc -= term;
          }
        }
      }
      out[p * dim + q] = acc;
    }
  }
}

}  // namespace fiber::kernels
