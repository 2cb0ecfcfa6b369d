#include "fiber/decompose.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fiber {

std::string_view to_string(CausalClass c) noexcept {
  switch (c) {
    case CausalClass::timelike:
      return "timelike";
    case CausalClass::lightlike:
      return "lightlike";
    case CausalClass::spacelike:
      return "spacelike";
  }
  return "unknown";
}

void require_signature(const AlgebraElement& x, const Signature& expected, std::string_view what) {
  if (!(x.signature() == expected)) {
    throw AlgebraError(std::string(what) + " requires signature \"" + expected.str() + "\", got \"" +
                       x.signature().str() + "\"");
  }
}

TangentTriple decompose_c2(const AlgebraElement& x) {
  require_signature(x, signatures::C2, "decompose_c2");
  const double x0 = x[0];
  const double x1 = x[1];
  return {x0 * x0 + x1 * x1, 2 * x0 * x1, x0 * x0 - x1 * x1};
}

FiberDecomposition decompose_d2(const AlgebraElement& x) {
  require_signature(x, signatures::D2, "decompose_d2");
  const double a = x[0] + x[2];
  const double b = x[1] + x[3];
  const double c = x[0] - x[2];
  const double d = x[1] - x[3];

  FiberDecomposition f;
  f.tangent = {a * a + b * b, 2 * a * b, a * a - b * b};
  f.momentum = {c * c + d * d, 2 * c * d, c * c - d * d};
  f.cross = {c * a + d * b, c * b + d * a, c * a - d * b, c * b - d * a};
  f.action_rate = f.momentum.momentum * f.tangent.dq - f.momentum.energy * f.tangent.dt;
  const double defect = min_action_defect(x);
  f.min_action_residual = 2 * defect * defect;
  return f;
}

double sector_reading(const TensorElement& t_times_sector, const TensorProjector<double>& left,
                      const TensorProjector<double>& sector, BasisIndex slot) {
  const double unit = extract(tensor_multiply(left.tensor(), sector.tensor()), 0, 0);
  if (unit == 0) throw AlgebraError("left projector annihilates the sector");
  return extract(tensor_multiply(left.tensor(), t_times_sector), 0, slot) / unit;
}

TangentTriple decompose_c2_reference(const AlgebraElement& x) {
  require_signature(x, signatures::C2, "decompose_c2_reference");
  const auto& sig = x.signature();
  const auto t = square_embed(x);
  const auto whole = TensorProjector<double>::checked(TensorElement::identity(sig));
  const auto plus = projector_left(kE1, +1, sig);
  const auto minus = projector_left(kE1, -1, sig);
  return {sector_reading(t, plus, whole, 0), sector_reading(t, plus, whole, kE1),
          sector_reading(t, minus, whole, 0)};
}

FiberDecomposition decompose_d2_reference(const AlgebraElement& x) {
  require_signature(x, signatures::D2, "decompose_d2_reference");
  const auto& sig = x.signature();
  const auto t = square_embed(x);
  const auto sectors = SectorProjectors<double>::build(kE2, sig);
  const auto plus = projector_left(kE1, +1, sig);
  const auto minus = projector_left(kE1, -1, sig);

  const auto tangent = t * sectors.plus_plus.tensor();
  const auto mixed = t * sectors.mixed.tensor();
  const auto momentum = t * sectors.minus_minus.tensor();

  FiberDecomposition f;
  f.tangent = {sector_reading(tangent, plus, sectors.plus_plus, 0),
               sector_reading(tangent, plus, sectors.plus_plus, kE1),
               sector_reading(tangent, minus, sectors.plus_plus, 0)};
  f.momentum = {sector_reading(momentum, plus, sectors.minus_minus, 0),
                sector_reading(momentum, plus, sectors.minus_minus, kE1),
                sector_reading(momentum, minus, sectors.minus_minus, 0)};
  f.cross = {sector_reading(mixed, plus, sectors.mixed, 0),
             sector_reading(mixed, plus, sectors.mixed, kE1),
             sector_reading(mixed, minus, sectors.mixed, 0),
             sector_reading(mixed, minus, sectors.mixed, kE12)};
  f.action_rate = f.momentum.momentum * f.tangent.dq - f.momentum.energy * f.tangent.dt;
  // minus_e12 = 2 (x0 x3 - x1 x2)
  f.min_action_residual = 0.5 * f.cross.minus_e12 * f.cross.minus_e12;
  return f;
}

double min_action_defect(const AlgebraElement& x) {
  require_signature(x, signatures::D2, "min_action_defect");
  return x[0] * x[3] - x[1] * x[2];
}

namespace {

double norm_squared(const AlgebraElement& x) {
  double s = 0;
  for (double c : x.coeffs()) s += c * c;
  return s;
}

}  // namespace

bool is_min_action(const AlgebraElement& x, double tol) {
  return std::abs(min_action_defect(x)) <= tol * norm_squared(x);
}

AlgebraElement Factorization::product() const { return scale * multiply(left, right); }

Factorization factorize(const AlgebraElement& x, double tol) {
  require_signature(x, signatures::D2, "factorize");
  if (x[0] == 0) {
    throw AlgebraError(
        "cannot factorize with x0 = 0; use the x0-free criterion x0 x3 = x1 x2 (is_min_action)");
  }
  if (!is_min_action(x, tol)) {
    const double defect = min_action_defect(x);
    throw AlgebraError("element is not minimal-action: x0 x3 - x1 x2 = " + std::to_string(defect) +
                       " (residual " + std::to_string(2 * defect * defect) + ")");
  }
  const auto& sig = x.signature();
  return {1.0 / x[0], AlgebraElement(sig, {x[0], x[1], 0, 0}),
          AlgebraElement(sig, {x[0], 0, x[2], 0})};
}

AlgebraElement transform(const AlgebraElement& x, const AlgebraElement& u) { return multiply(x, u); }

AlgebraElement boost_element(const Signature& sig, double rapidity) {
  if (sig.square(0) != 1) throw AlgebraError("boost needs e1^2 = +1, signature \"" + sig.str() + "\"");
  return AlgebraElement::unit(sig, 0, std::cosh(rapidity)) +
         AlgebraElement::unit(sig, kE1, std::sinh(rapidity));
}

AlgebraElement rotation_element(const Signature& sig, double angle) {
  if (sig.square(0) != -1) {
    throw AlgebraError("rotation needs e1^2 = -1, signature \"" + sig.str() + "\"");
  }
  return AlgebraElement::unit(sig, 0, std::cos(angle)) + AlgebraElement::unit(sig, kE1, std::sin(angle));
}

namespace {

// (a, b) with a^2 + b^2 = t, 2ab = q, a >= |b|.
std::pair<double, double> split_rates(double t, double q) {
  const double r_plus = std::sqrt(t + q);
  const double r_minus = std::sqrt(t - q);
  return {(r_plus + r_minus) / 2, (r_plus - r_minus) / 2};
}

}  // namespace

AlgebraElement lift_kinematics(const TangentTriple& tangent, const MomentumTriple& momentum) {
  if (!(tangent.dt >= std::abs(tangent.dq))) {
    throw AlgebraError("spacelike tangent (|dq| > dt) has no real preimage");
  }
  if (!(momentum.energy >= std::abs(momentum.momentum))) {
    throw AlgebraError("spacelike momentum (|p| > H) has no real preimage");
  }
  const auto [a, b] = split_rates(tangent.dt, tangent.dq);
  const auto [c, d] = split_rates(momentum.energy, momentum.momentum);
  return AlgebraElement(signatures::D2, {(a + c) / 2, (b + d) / 2, (a - c) / 2, (b - d) / 2});
}

AlgebraElement free_particle_element(double mass, double rapidity, double proper_rate) {
  if (!(mass > 0)) throw AlgebraError("mass must be positive");
  if (!(proper_rate > 0)) throw AlgebraError("proper rate ds/dlambda must be positive");
  const double ch = std::cosh(rapidity);
  const double sh = std::sinh(rapidity);
  const double ks = std::sqrt(proper_rate);
  const double km = std::sqrt(mass);
  const double a = ks * ch, b = ks * sh;
  const double c = km * ch, d = km * sh;
  return AlgebraElement(signatures::D2, {(a + c) / 2, (b + d) / 2, (a - c) / 2, (b - d) / 2});
}

ActionRecord trajectory_action(double mass, double rapidity, double span, long steps,
                               double proper_rate) {
  if (!(mass > 0)) throw AlgebraError("mass must be positive");
  if (!(span > 0)) throw AlgebraError("lambda span must be positive");
  if (steps < 1) throw AlgebraError("steps must be >= 1");

  // Free particle: the element is constant along the worldline.
  const auto worldline = [x = free_particle_element(mass, rapidity, proper_rate)](double) {
    return x;
  };
  const double step = span / static_cast<double>(steps);

  // Neumaier-compensated sum of the left-endpoint rule.
  double sum = 0;
  double carry = 0;
  for (long k = 0; k < steps; ++k) {
    const double term = decompose_d2(worldline(static_cast<double>(k) * step)).action_rate * step;
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      carry += (sum - t) + term;
    } else {
      carry += (term - t) + sum;
    }
    sum = t;
  }

  ActionRecord r;
  r.numeric = sum + carry;
  r.analytic = -mass * proper_rate * span;
  r.error = std::abs(r.numeric - r.analytic);
  return r;
}

EuclideanPlane decompose_euclidean_plane(const AlgebraElement& x) {
  require_signature(x, signatures::C4, "decompose_euclidean_plane");
  const double x0 = x[0];
  const double x1 = x[1];
  return {x0 * x0 + x1 * x1, 0.0, x0 * x0 - x1 * x1, 2 * x0 * x1};
}

EuclideanPlane decompose_euclidean_plane_reference(const AlgebraElement& x) {
  require_signature(x, signatures::C4, "decompose_euclidean_plane_reference");
  const auto& sig = x.signature();
  const auto t = square_embed(x);
  const auto whole = TensorProjector<double>::checked(TensorElement::identity(sig));
  const auto plus = projector_left(kE1, +1, sig);
  const auto minus = projector_left(kE1, -1, sig);
  return {sector_reading(t, plus, whole, 0), sector_reading(t, plus, whole, kE1),
          sector_reading(t, minus, whole, 0), sector_reading(t, minus, whole, kE1)};
}

namespace {

SectorReadings read_sector(const TensorElement& t, const TensorProjector<double>& sector,
                           const TensorProjector<double>& plus, const TensorProjector<double>& minus,
                           std::vector<BasisIndex> slots) {
  const auto projected = t * sector.tensor();
  SectorReadings r;
  for (BasisIndex s : slots) {
    r.plus.push_back(sector_reading(projected, plus, sector, s));
    r.minus.push_back(sector_reading(projected, minus, sector, s));
  }
  r.slots = std::move(slots);
  return r;
}

}  // namespace

EuclideanFiber decompose_euclidean_fiber(const AlgebraElement& x) {
  require_signature(x, signatures::C2xC4, "decompose_euclidean_fiber");
  const auto& sig = x.signature();
  const auto t = square_embed(x);
  const auto sectors = SectorProjectors<double>::build(kE2, sig);
  const auto plus = projector_left(kE1, +1, sig);
  const auto minus = projector_left(kE1, -1, sig);
  return {read_sector(t, sectors.plus_plus, plus, minus, {0, kE1}),
          read_sector(t, sectors.mixed, plus, minus, {0, kE1, kE2, kE12}),
          read_sector(t, sectors.minus_minus, plus, minus, {0, kE1})};
}

EuclideanDecomposition decompose_euclidean(const AlgebraElement& x) {
  if (x.signature() == signatures::C4) return decompose_euclidean_plane(x);
  if (x.signature() == signatures::C2xC4) return decompose_euclidean_fiber(x);
  throw AlgebraError("decompose_euclidean requires signature \"-\" or \"-+\", got \"" +
                     x.signature().str() + "\"");
}

CausalClass classify_causal(const TangentTriple& t, double tol) {
  const double interval = t.dt * t.dt - t.dq * t.dq;
  if (interval > tol) return CausalClass::timelike;
  if (interval < -tol) return CausalClass::spacelike;
  return CausalClass::lightlike;
}

}  // namespace fiber
