#include "fiber/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "fiber/decompose.hpp"
#include "fiber/random.hpp"

namespace fiber {

std::string_view to_string(Gate g) noexcept {
  switch (g) {
    case Gate::relative:
      return "relative";
    case Gate::absolute:
      return "absolute";
    case Gate::violations:
      return "violations";
  }
  return "unknown";
}

namespace {

// Oracle comparisons are per-component absolute, so they draw from a unit
// box where component magnitudes stay O(1).
constexpr double kOracleLow = -1.0;
constexpr double kOracleHigh = 1.0;

// Maximum-speed bound slack.
constexpr double kSpeedSlack = 1e-14;

SplitMix64 rng_for(std::string_view name, std::uint64_t seed, std::size_t index) {
  return sample_stream(seed, stream_id(name), index);
}

double norm1(const AlgebraElement& x) {
  double s = 0;
  for (double c : x.coeffs()) s += std::abs(c);
  return s;
}

double norm2(const AlgebraElement& x) {
  double s = 0;
  for (double c : x.coeffs()) s += c * c;
  return std::sqrt(s);
}

void compare_grids(Residual& r, const TensorElement& lhs, const TensorElement& rhs, double scale) {
  for (std::size_t i = 0; i < lhs.coeffs().size(); ++i) r.compare(lhs.coeffs()[i], rhs.coeffs()[i], scale);
}

// --- D2 fiber ---------------------------------------------------------------

Residual tangent_norm_identity(const Signature& sig, std::uint64_t seed, std::size_t i) {
  auto rng = rng_for("tangent_norm_identity", seed, i);
  const auto t = decompose_d2(random_element(rng, sig, kSampleLow, kSampleHigh)).tangent;
  Residual r;
  r.compare(t.ds * t.ds, t.dt * t.dt - t.dq * t.dq, t.ds * t.ds + t.dt * t.dt + t.dq * t.dq);
  return r;
}

Residual momentum_norm_identity(const Signature& sig, std::uint64_t seed, std::size_t i) {
  auto rng = rng_for("momentum_norm_identity", seed, i);
  const auto m = decompose_d2(random_element(rng, sig, kSampleLow, kSampleHigh)).momentum;
  const double h = m.energy, p = m.momentum, mass = m.mass;
  Residual r;
  r.compare(mass * mass, h * h - p * p, mass * mass + h * h + p * p);
  return r;
}

// Excess of |v| over the bound b, relative to b; negative b is a violation.
void speed_bound(Residual& r, double bound, double v) {
  if (bound < 0) {
    ++r.violations;
    r.note(-bound, std::numeric_limits<double>::infinity());
    return;
  }
  const double excess = std::max(0.0, std::abs(v) - bound);
  r.note(excess, bound > 0 ? excess / bound : (excess == 0 ? 0.0 : std::numeric_limits<double>::infinity()));
}

Residual max_speed(const Signature& sig, std::uint64_t seed, std::size_t i) {
  auto rng = rng_for("max_speed", seed, i);
  const auto f = decompose_d2(random_element(rng, sig, kSampleLow, kSampleHigh));
  Residual r;
  speed_bound(r, f.tangent.dt, f.tangent.dq);
  speed_bound(r, f.momentum.energy, f.momentum.momentum);
  return r;
}

Residual cross_square_identities(const Signature& sig, std::uint64_t seed, std::size_t i) {
  auto rng = rng_for("cross_square_identities", seed, i);
  const auto f = decompose_d2(random_element(rng, sig, kSampleLow, kSampleHigh));
  const double hdt = f.momentum.energy * f.tangent.dt;
  const double pdq = f.momentum.momentum * f.tangent.dq;
  const double mds = f.momentum.mass * f.tangent.ds;
  const double terms = std::abs(hdt) + std::abs(pdq) + std::abs(mds);
  const auto check = [&](double c, double rhs) { return std::pair{2 * c * c, rhs}; };
  Residual r;
  for (const auto& [lhs, rhs] : {check(f.cross.plus_1, hdt + pdq + mds),
                                 check(f.cross.plus_e1, hdt + pdq - mds),
                                 check(f.cross.minus_1, hdt - pdq + mds),
                                 check(f.cross.minus_e12, hdt - pdq - mds)}) {
    r.compare(lhs, rhs, lhs + terms);
  }
  return r;
}

Residual d2_oracle_equivalence(const Signature& sig, std::uint64_t seed, std::size_t i) {
  auto rng = rng_for("oracle_equivalence", seed, i);
  const auto x = random_element(rng, sig, kOracleLow, kOracleHigh);
  const auto closed = decompose_d2(x);
  const auto brute = decompose_d2_reference(x);
  const std::array<std::pair<double, double>, 12> pairs{{
      {closed.tangent.dt, brute.tangent.dt},
      {closed.tangent.dq, brute.tangent.dq},
      {closed.tangent.ds, brute.tangent.ds},
      {closed.momentum.energy, brute.momentum.energy},
      {closed.momentum.momentum, brute.momentum.momentum},
      {closed.momentum.mass, brute.momentum.mass},
      {closed.cross.plus_1, brute.cross.plus_1},
      {closed.cross.plus_e1, brute.cross.plus_e1},
      {closed.cross.minus_1, brute.cross.minus_1},
      {closed.cross.minus_e12, brute.cross.minus_e12},
      {closed.action_rate, brute.action_rate},
      {closed.min_action_residual, brute.min_action_residual},
  }};
  Residual r;
  for (const auto& [a, b] : pairs) r.compare(a, b, std::abs(a) + std::abs(b));
  return r;
}

AlgebraElement random_minimal(SplitMix64& rng, const Signature& sig) {
  double x0 = 0;
  while (x0 == 0) x0 = rng.uniform(kSampleLow, kSampleHigh);
  const double x1 = rng.uniform(kSampleLow, kSampleHigh);
  const double x2 = rng.uniform(kSampleLow, kSampleHigh);
  return AlgebraElement(sig, {x0, x1, x2, x1 * x2 / x0});
}

// Relative reconstruction error of the factorization; +inf when refused.
double factorization_error(const AlgebraElement& x) {
  try {
    const auto f = factorize(x);
    const auto back = f.product();
    double worst = 0;
    for (std::size_t k = 0; k < x.size(); ++k) worst = std::max(worst, std::abs(back[k] - x[k]));
    return worst / norm2(x);
  } catch (const AlgebraError&) {
    return std::numeric_limits<double>::infinity();
  }
}

// Even indices: constructed minimal elements. Odd indices: generic elements.
// Counts samples where residual ~ 0, x0 x3 = x1 x2 and factorize round-trip
// disagree, or where a constructed minimal element is not recognized.
Residual min_action_equivalence(const Signature& sig, std::uint64_t seed, std::size_t i) {
  auto rng = rng_for("min_action_equivalence", seed, i);
  const bool constructed = i % 2 == 0;
  const auto x = constructed ? random_minimal(rng, sig) : random_element(rng, sig, kSampleLow, kSampleHigh);

  const double tol = kMinActionTolerance;
  const double n2 = norm2(x) * norm2(x);
  // The residual is 2 defect^2, so |defect| <= tol n2 <=> residual <= 2 tol^2 n2^2.
  const bool by_residual = decompose_d2_reference(x).min_action_residual <= 2 * tol * tol * n2 * n2;
  const bool by_product = is_min_action(x, tol);
  const bool by_factor = x[0] != 0 && factorization_error(x) <= 1e-13;

  Residual r;
  if (by_residual != by_product || by_product != by_factor) ++r.violations;
  if (constructed && !by_product) ++r.violations;
  return r;
}

Residual action_identity_minimal(const Signature& sig, std::uint64_t seed, std::size_t i) {
  auto rng = rng_for("action_identity_minimal", seed, i);
  const auto f = decompose_d2(random_minimal(rng, sig));
  const double hdt = f.momentum.energy * f.tangent.dt;
  const double pdq = f.momentum.momentum * f.tangent.dq;
  const double mds = f.momentum.mass * f.tangent.ds;
  Residual r;
  r.compare(f.action_rate, -mds, std::abs(hdt) + std::abs(pdq) + std::abs(mds));
  return r;
}

Residual boost_invariance(const Signature& sig, std::uint64_t seed, std::size_t i) {
  auto rng = rng_for("boost_invariance", seed, i);
  const auto x = random_element(rng, sig, kSampleLow, kSampleHigh);
  const double phi = rng.uniform(-kMaxRapidity, kMaxRapidity);
  const auto before = decompose_d2(x);
  const auto after = decompose_d2(transform(x, boost_element(sig, phi)));

  const auto action_terms = [](const FiberDecomposition& f) {
    return std::abs(f.momentum.energy * f.tangent.dt) + std::abs(f.momentum.momentum * f.tangent.dq);
  };
  // |cross| <= sqrt(H dt)
  const double cross_scale = std::sqrt(before.momentum.energy * before.tangent.dt) +
                             std::sqrt(after.momentum.energy * after.tangent.dt);

  Residual r;
  r.compare(after.tangent.ds, before.tangent.ds, after.tangent.dt + before.tangent.dt);
  r.compare(after.momentum.mass, before.momentum.mass, after.momentum.energy + before.momentum.energy);
  r.compare(after.action_rate, before.action_rate, action_terms(after) + action_terms(before));
  r.compare(after.cross.minus_1, before.cross.minus_1, cross_scale);
  r.compare(after.cross.minus_e12, before.cross.minus_e12, cross_scale);
  // The plus-side pair is covariant (see boost_covariance); its Minkowski norm
  // equals m ds and is invariant.
  const auto plus_norm = [](const FiberDecomposition& f) {
    return f.cross.plus_1 * f.cross.plus_1 - f.cross.plus_e1 * f.cross.plus_e1;
  };
  const auto plus_terms = [](const FiberDecomposition& f) {
    return f.cross.plus_1 * f.cross.plus_1 + f.cross.plus_e1 * f.cross.plus_e1;
  };
  r.compare(plus_norm(after), plus_norm(before), plus_terms(after) + plus_terms(before));
  return r;
}

// (t, q) -> (cosh 2phi t + sinh 2phi q, sinh 2phi t + cosh 2phi q)
void hyperbolic_check(Residual& r, double phi, double t, double q, double t_after, double q_after) {
  const double ch = std::cosh(2 * phi);
  const double sh = std::sinh(2 * phi);
  const double scale = (ch + std::abs(sh)) * (std::abs(t) + std::abs(q)) + std::abs(t_after) +
                       std::abs(q_after);
  r.compare(t_after, ch * t + sh * q, scale);
  r.compare(q_after, sh * t + ch * q, scale);
}

Residual boost_covariance(const Signature& sig, std::uint64_t seed, std::size_t i) {
  auto rng = rng_for("boost_covariance", seed, i);
  const auto x = random_element(rng, sig, kSampleLow, kSampleHigh);
  const double phi = rng.uniform(-kMaxRapidity, kMaxRapidity);
  const auto before = decompose_d2(x);
  const auto after = decompose_d2(transform(x, boost_element(sig, phi)));
  Residual r;
  hyperbolic_check(r, phi, before.tangent.dt, before.tangent.dq, after.tangent.dt, after.tangent.dq);
  hyperbolic_check(r, phi, before.momentum.energy, before.momentum.momentum, after.momentum.energy,
                   after.momentum.momentum);
  hyperbolic_check(r, phi, before.cross.plus_1, before.cross.plus_e1, after.cross.plus_1,
                   after.cross.plus_e1);
  return r;
}

Residual lift_round_trip(const Signature&, std::uint64_t seed, std::size_t i) {
  auto rng = rng_for("lift_round_trip", seed, i);
  const double dt = rng.uniform(0, 100);
  const double dq = rng.uniform(-dt, dt);
  const double h = rng.uniform(0, 100);
  const double p = rng.uniform(-h, h);
  const auto f = decompose_d2(lift_kinematics({dt, dq, 0}, {h, p, 0}));
  Residual r;
  r.compare(f.tangent.dt, dt, dt);
  r.compare(f.tangent.dq, dq, dt);
  r.compare(f.momentum.energy, h, h);
  r.compare(f.momentum.momentum, p, h);
  return r;
}

// --- C2 ---------------------------------------------------------------------

Residual c2_norm_identity(const Signature& sig, std::uint64_t seed, std::size_t i) {
  auto rng = rng_for("c2_norm_identity", seed, i);
  const auto t = decompose_c2(random_element(rng, sig, kSampleLow, kSampleHigh));
  Residual r;
  r.compare(t.ds * t.ds, t.dt * t.dt - t.dq * t.dq, t.ds * t.ds + t.dt * t.dt + t.dq * t.dq);
  return r;
}

Residual c2_max_speed(const Signature& sig, std::uint64_t seed, std::size_t i) {
  auto rng = rng_for("c2_max_speed", seed, i);
  const auto t = decompose_c2(random_element(rng, sig, kSampleLow, kSampleHigh));
  Residual r;
  speed_bound(r, t.dt, t.dq);
  return r;
}

Residual c2_oracle_equivalence(const Signature& sig, std::uint64_t seed, std::size_t i) {
  auto rng = rng_for("c2_oracle_equivalence", seed, i);
  const auto x = random_element(rng, sig, kOracleLow, kOracleHigh);
  const auto a = decompose_c2(x);
  const auto b = decompose_c2_reference(x);
  Residual r;
  r.compare(a.dt, b.dt, std::abs(a.dt) + std::abs(b.dt));
  r.compare(a.dq, b.dq, std::abs(a.dq) + std::abs(b.dq));
  r.compare(a.ds, b.ds, std::abs(a.ds) + std::abs(b.ds));
  return r;
}

Residual c2_boost_invariance(const Signature& sig, std::uint64_t seed, std::size_t i) {
  auto rng = rng_for("c2_boost_invariance", seed, i);
  const auto x = random_element(rng, sig, kSampleLow, kSampleHigh);
  const double phi = rng.uniform(-kMaxRapidity, kMaxRapidity);
  const auto before = decompose_c2(x);
  const auto after = decompose_c2(transform(x, boost_element(sig, phi)));
  Residual r;
  r.compare(after.ds, before.ds, after.dt + before.dt);
  return r;
}

Residual c2_boost_covariance(const Signature& sig, std::uint64_t seed, std::size_t i) {
  auto rng = rng_for("c2_boost_covariance", seed, i);
  const auto x = random_element(rng, sig, kSampleLow, kSampleHigh);
  const double phi = rng.uniform(-kMaxRapidity, kMaxRapidity);
  const auto before = decompose_c2(x);
  const auto after = decompose_c2(transform(x, boost_element(sig, phi)));
  Residual r;
  hyperbolic_check(r, phi, before.dt, before.dq, after.dt, after.dq);
  return r;
}

// --- Euclidean --------------------------------------------------------------

Residual euclidean_rotation_invariance(const Signature& sig, std::uint64_t seed, std::size_t i) {
  auto rng = rng_for("euclidean_rotation_invariance", seed, i);
  const auto x = random_element(rng, sig, kSampleLow, kSampleHigh);
  const auto u = rotation_element(sig, rng.uniform(-M_PI, M_PI));
  const double before = decompose_euclidean_plane(x).plus_1;
  const double after = decompose_euclidean_plane(transform(x, u)).plus_1;
  Residual r;
  r.compare(after, before, after + before);
  return r;
}

Residual euclidean_oracle_equivalence(const Signature& sig, std::uint64_t seed, std::size_t i) {
  auto rng = rng_for("euclidean_oracle_equivalence", seed, i);
  const auto x = random_element(rng, sig, kOracleLow, kOracleHigh);
  const auto a = decompose_euclidean_plane(x);
  const auto b = decompose_euclidean_plane_reference(x);
  Residual r;
  for (const auto& [p, q] : {std::pair{a.plus_1, b.plus_1}, std::pair{a.plus_e, b.plus_e},
                             std::pair{a.minus_1, b.minus_1}, std::pair{a.minus_e, b.minus_e}}) {
    r.compare(p, q, std::abs(p) + std::abs(q));
  }
  return r;
}

// Every P+1 reading of the C2 (x) C4 fiber is invariant under unit rotations.
Residual euclidean_fiber_rotation_invariance(const Signature& sig, std::uint64_t seed, std::size_t i) {
  auto rng = rng_for("euclidean_fiber_rotation_invariance", seed, i);
  const auto x = random_element(rng, sig, kSampleLow, kSampleHigh);
  const auto u = rotation_element(sig, rng.uniform(-M_PI, M_PI));
  const auto before = decompose_euclidean_fiber(x);
  const auto after = decompose_euclidean_fiber(transform(x, u));
  // Readings are bounded by the tangent and momentum P+1 norms.
  const double scale = before.tangent.plus[0] + before.momentum.plus[0];
  Residual r;
  const std::array<std::pair<const SectorReadings*, const SectorReadings*>, 3> sectors{{
      {&before.tangent, &after.tangent},
      {&before.mixed, &after.mixed},
      {&before.momentum, &after.momentum},
  }};
  for (const auto& [b, a] : sectors) {
    for (std::size_t k = 0; k < b->plus.size(); ++k) r.compare(a->plus[k], b->plus[k], scale);
  }
  return r;
}

// --- Generic algebra and tensor checks --------------------------------------

Residual square_homomorphism(const Signature& sig, std::uint64_t seed, std::size_t i) {
  auto rng = rng_for("square_homomorphism", seed, i);
  const auto x = random_element(rng, sig, kSampleLow, kSampleHigh);
  const auto u = random_element(rng, sig, kSampleLow, kSampleHigh);
  const double scale = std::pow(norm1(x) * norm1(u), 2);
  Residual r;
  compare_grids(r, square_embed(x) * square_embed(u), square_embed(multiply(x, u)), scale);
  return r;
}

Residual swap_symmetry(const Signature& sig, std::uint64_t seed, std::size_t i) {
  auto rng = rng_for("swap_symmetry", seed, i);
  const auto t = square_embed(random_element(rng, sig, kSampleLow, kSampleHigh));
  Residual r;
  compare_grids(r, t, t.transposed(), 0);
  return r;
}

Residual associativity(const Signature& sig, std::uint64_t seed, std::size_t i) {
  auto rng = rng_for("associativity", seed, i);
  const auto a = random_element(rng, sig, kSampleLow, kSampleHigh);
  const auto b = random_element(rng, sig, kSampleLow, kSampleHigh);
  const auto c = random_element(rng, sig, kSampleLow, kSampleHigh);
  const auto left = multiply(multiply(a, b), c);
  const auto right = multiply(a, multiply(b, c));
  const double scale = norm1(a) * norm1(b) * norm1(c);
  Residual r;
  for (std::size_t k = 0; k < left.size(); ++k) r.compare(left[k], right[k], scale);
  return r;
}

Residual commutativity(const Signature& sig, std::uint64_t seed, std::size_t i) {
  auto rng = rng_for("commutativity", seed, i);
  const auto a = random_element(rng, sig, kSampleLow, kSampleHigh);
  const auto b = random_element(rng, sig, kSampleLow, kSampleHigh);
  const auto ab = multiply(a, b);
  const auto ba = multiply(b, a);
  Residual r;
  for (std::size_t k = 0; k < ab.size(); ++k) r.compare(ab[k], ba[k], norm1(a) * norm1(b));
  return r;
}

// Sectors of 1/2(1 +- e2) sum back to x (x) x.
Residual sector_completeness(const Signature& sig, std::uint64_t seed, std::size_t i) {
  auto rng = rng_for("sector_completeness", seed, i);
  const auto x = random_element(rng, sig, kSampleLow, kSampleHigh);
  const auto t = square_embed(x);
  const auto sectors = SectorProjectors<double>::build(kE2, sig);
  const auto sum = t * sectors.plus_plus.tensor() + t * sectors.mixed.tensor() +
                   t * sectors.minus_minus.tensor();
  Residual r;
  compare_grids(r, sum, t, std::pow(norm1(x), 2));
  return r;
}

}  // namespace

std::vector<Property> properties_for(const Signature& sig) {
  std::vector<Property> out;
  if (sig == signatures::D2) {
    out = {
        {"tangent_norm_identity", Gate::relative, 1e-12, tangent_norm_identity},
        {"momentum_norm_identity", Gate::relative, 1e-12, momentum_norm_identity},
        {"max_speed", Gate::relative, kSpeedSlack, max_speed},
        {"cross_square_identities", Gate::relative, 1e-12, cross_square_identities},
        {"oracle_equivalence", Gate::absolute, 1e-13, d2_oracle_equivalence},
        {"min_action_equivalence", Gate::violations, 0, min_action_equivalence},
        {"action_identity_minimal", Gate::relative, 1e-11, action_identity_minimal},
        {"boost_invariance", Gate::relative, 1e-10, boost_invariance},
        {"boost_covariance", Gate::relative, 1e-10, boost_covariance},
        {"lift_round_trip", Gate::relative, 1e-12, lift_round_trip},
    };
  } else if (sig == signatures::C2) {
    out = {
        {"c2_norm_identity", Gate::relative, 1e-12, c2_norm_identity},
        {"c2_max_speed", Gate::relative, kSpeedSlack, c2_max_speed},
        {"c2_oracle_equivalence", Gate::absolute, 1e-13, c2_oracle_equivalence},
        {"c2_boost_invariance", Gate::relative, 1e-10, c2_boost_invariance},
        {"c2_boost_covariance", Gate::relative, 1e-10, c2_boost_covariance},
    };
  } else if (sig == signatures::C4) {
    out = {
        {"euclidean_rotation_invariance", Gate::relative, 1e-12, euclidean_rotation_invariance},
        {"euclidean_oracle_equivalence", Gate::absolute, 1e-13, euclidean_oracle_equivalence},
    };
  } else if (sig == signatures::C2xC4) {
    out = {
        {"euclidean_fiber_rotation_invariance", Gate::relative, 1e-12,
         euclidean_fiber_rotation_invariance},
    };
  }

  out.push_back({"associativity", Gate::relative, 1e-13, associativity});
  out.push_back({"commutativity", Gate::relative, 1e-13, commutativity});
  out.push_back({"square_homomorphism", Gate::relative, 1e-12, square_homomorphism});
  out.push_back({"swap_symmetry", Gate::absolute, 0, swap_symmetry});
  if (sig.generators() >= 2 && sig.square(1) == 1) {
    out.push_back({"sector_completeness", Gate::relative, 1e-13, sector_completeness});
  }
  return out;
}

std::optional<Property> find_property(const Signature& sig, std::string_view name) {
  for (const auto& p : properties_for(sig)) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

Residual sweep(const Property& property, const Signature& sig, std::size_t samples,
               std::uint64_t seed, Execution execution) {
  Residual total;
  if (execution == Execution::serial) {
    for (std::size_t i = 0; i < samples; ++i) total.merge(property.sample(sig, seed, i));
    return total;
  }

  const long n = static_cast<long>(samples);
#pragma omp parallel
  {
    Residual local;
#pragma omp for schedule(static)
    for (long i = 0; i < n; ++i) local.merge(property.sample(sig, seed, static_cast<std::size_t>(i)));
#pragma omp critical(fiber_sweep_merge)
    total.merge(local);
  }
  return total;
}

PropertyResult run_property(const Property& property, const Signature& sig, std::size_t samples,
                            std::uint64_t seed, std::optional<double> tolerance, Execution execution) {
  const Residual r = sweep(property, sig, samples, seed, execution);
  PropertyResult out;
  out.name = std::string(property.name);
  out.samples = samples;
  out.gate = property.gate;
  out.max_abs_residual = r.abs;
  out.max_rel_residual = r.rel;
  out.violations = r.violations;
  switch (property.gate) {
    case Gate::relative:
      out.tolerance = tolerance.value_or(property.default_tolerance);
      out.pass = r.violations == 0 && r.rel <= out.tolerance;
      break;
    case Gate::absolute:
      out.tolerance = tolerance.value_or(property.default_tolerance);
      out.pass = r.violations == 0 && r.abs <= out.tolerance;
      break;
    case Gate::violations:
      out.tolerance = 0;
      out.pass = r.violations == 0;
      break;
  }
  return out;
}

VerificationReport run_verification(const VerifyConfig& config) {
  VerificationReport report{config, {}, true};
  for (const auto& p : properties_for(config.signature)) {
    report.properties.push_back(
        run_property(p, config.signature, config.samples, config.seed, config.tolerance, config.execution));
    report.pass = report.pass && report.properties.back().pass;
  }
  return report;
}

}  // namespace fiber
