#pragma once

// Physical readings of x (x) x for the 1+1 spacetime fiber.
//
// Over D2 = C2 (x) C2, with a = x0+x2, b = x1+x3, c = x0-x2, d = x1-x3:
//   tangent  (dt, dq, ds) = (a^2+b^2, 2ab, a^2-b^2)     sector P+2 (x) P+2
//   momentum (H,  p,  m)  = (c^2+d^2, 2cd, c^2-d^2)     sector P-2 (x) P-2
//   cross                 = (ca+db, cb+da, ca-db, cb-da) mixed sector
// ds and m are kept signed, and the cross sector as signed coefficients, so
// every identity is a polynomial identity.

#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "fiber/algebra.hpp"
#include "fiber/tensor.hpp"

namespace fiber {

using AlgebraElement = Element<double>;
using TensorElement = Tensor<double>;

inline constexpr BasisIndex kE1 = basis({1});
inline constexpr BasisIndex kE2 = basis({2});
inline constexpr BasisIndex kE12 = basis({1, 2});

struct TangentTriple {
  double dt = 0;  // dt/dlambda
  double dq = 0;  // dq/dlambda
  double ds = 0;  // ds/dlambda, signed
};

struct MomentumTriple {
  double energy = 0;    // H
  double momentum = 0;  // p
  double mass = 0;      // m, signed
};

/// Signed components of the mixed sector on P+1 1, P+1 e1, P-1 1, P-1 e12.
struct CrossQuad {
  double plus_1 = 0;
  double plus_e1 = 0;
  double minus_1 = 0;
  double minus_e12 = 0;
};

struct FiberDecomposition {
  TangentTriple tangent;
  MomentumTriple momentum;
  CrossQuad cross;
  double action_rate = 0;          // dS/dlambda = p dq - H dt
  double min_action_residual = 0;  // 2 (x0 x3 - x1 x2)^2
};

enum class CausalClass { timelike, lightlike, spacelike };

std::string_view to_string(CausalClass c) noexcept;

/// Throws AlgebraError unless x lives over `expected`.
void require_signature(const AlgebraElement& x, const Signature& expected, std::string_view what);

// --- C2 and D2 closed forms -------------------------------------------------

TangentTriple decompose_c2(const AlgebraElement& x);
FiberDecomposition decompose_d2(const AlgebraElement& x);

// --- Projector (brute-force) route ------------------------------------------

/// Normalized reading of slot (0, `slot`) of left * t * sector, in units of
/// the (0, 0) coefficient of left * sector. With t = x (x) x this recovers the
/// component multiplying left * e_slot * sector in the decomposition.
double sector_reading(const TensorElement& t_times_sector, const TensorProjector<double>& left,
                      const TensorProjector<double>& sector, BasisIndex slot);

/// decompose_c2 computed by embed -> P+- -> extract.
TangentTriple decompose_c2_reference(const AlgebraElement& x);
/// decompose_d2 computed by embed -> sector products -> P+-1 -> extract.
FiberDecomposition decompose_d2_reference(const AlgebraElement& x);

// --- Minimum action ---------------------------------------------------------

/// Default relative tolerance for the minimal-action predicate.
inline constexpr double kMinActionTolerance = 1e-10;

/// x0 x3 - x1 x2; vanishes exactly on minimal-action elements.
double min_action_defect(const AlgebraElement& x);

/// |x0 x3 - x1 x2| <= tol ||x||^2
bool is_min_action(const AlgebraElement& x, double tol = kMinActionTolerance);

/// x = scale * left * right with left = x0 + x1 e1, right = x0 + x2 e2, scale = 1/x0.
struct Factorization {
  double scale = 1;
  AlgebraElement left;
  AlgebraElement right;

  AlgebraElement product() const;
};

Factorization factorize(const AlgebraElement& x, double tol = kMinActionTolerance);

// --- Transformations --------------------------------------------------------

/// x u; on x (x) x this is (x (x) x)(u (x) u).
AlgebraElement transform(const AlgebraElement& x, const AlgebraElement& u);

/// u = cosh(phi) + sinh(phi) e1. Boosts (dt, dq) and (H, p) by rapidity 2 phi.
AlgebraElement boost_element(const Signature& sig, double rapidity);

/// u = cos(theta) + sin(theta) e1, for e1^2 = -1 signatures.
AlgebraElement rotation_element(const Signature& sig, double angle);

/// Inverse of decompose_d2 on (dt, dq, H, p); ds and mass inputs are ignored.
AlgebraElement lift_kinematics(const TangentTriple& tangent, const MomentumTriple& momentum);

// --- Free-particle action ---------------------------------------------------

struct ActionRecord {
  double numeric = 0;
  double analytic = 0;
  double error = 0;
};

/// Minimal D2 element with mass norm `mass`, proper rate ds/dlambda =
/// `proper_rate` and velocity dq/dt = tanh(2 rapidity).
AlgebraElement free_particle_element(double mass, double rapidity, double proper_rate = 1.0);

/// Left-endpoint sum of dS/dlambda over [0, span] against -mass * ds/dlambda * span.
ActionRecord trajectory_action(double mass, double rapidity, double span, long steps,
                               double proper_rate = 1.0);

// --- Euclidean variants -----------------------------------------------------

/// Signature [-1]. Left projectors 1/2(1 (x) 1 +- E) read on slots 1 and e.
/// plus_1 = x0^2 + x1^2 is the rotation invariant; the e-component lands on
/// the P- side because E (e (x) 1) = -(1 (x) e).
struct EuclideanPlane {
  double plus_1 = 0;
  double plus_e = 0;
  double minus_1 = 0;
  double minus_e = 0;
};

/// Raw readings of one right sector: readings[0 or 1][k] for P+1 / P-1 on slots[k].
struct SectorReadings {
  std::vector<BasisIndex> slots;
  std::vector<double> plus;
  std::vector<double> minus;
};

/// Signature [-1, +1]: the three sectors of 1/2(1 +- e2) under P+-1.
/// Pure sectors are read on slots without e2 (e2 acts as +-1 there); the mixed
/// sector is read on every slot.
struct EuclideanFiber {
  SectorReadings tangent;
  SectorReadings mixed;
  SectorReadings momentum;
};

using EuclideanDecomposition = std::variant<EuclideanPlane, EuclideanFiber>;

EuclideanPlane decompose_euclidean_plane(const AlgebraElement& x);
EuclideanPlane decompose_euclidean_plane_reference(const AlgebraElement& x);
EuclideanFiber decompose_euclidean_fiber(const AlgebraElement& x);
EuclideanDecomposition decompose_euclidean(const AlgebraElement& x);

// --- Causal structure -------------------------------------------------------

/// Uses dt^2 - dq^2 (ds is not consulted, so user triples may leave it unset).
CausalClass classify_causal(const TangentTriple& t, double tol);

}  // namespace fiber
