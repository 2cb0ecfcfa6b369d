#include "fiber/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fiber/decompose.hpp"
#include "fiber/report.hpp"
#include "fiber/verify.hpp"

namespace fiber::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr double kCausalTolerance = 1e-12;
constexpr double kBoostTolerance = 1e-10;
constexpr double kTrajectoryTolerance = 1e-9;
constexpr std::size_t kDefaultSamples = 1000;

struct Options {
  Format format = Format::json;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::size_t> samples;
  std::optional<int> threads;
  double ds_rate = 1.0;
  bool labels = false;
  bool help = false;
  std::vector<std::string> positional;
};

double parse_real(std::string_view text, std::string_view what) {
  double v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw UsageError("invalid " + std::string(what) + ": \"" + std::string(text) + "\"");
  }
  return v;
}

template <class Int>
Int parse_integer(std::string_view text, std::string_view what) {
  Int v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw UsageError("invalid " + std::string(what) + ": \"" + std::string(text) + "\"");
  }
  return v;
}

std::size_t parse_samples(std::string_view text) {
  const auto n = parse_integer<long long>(text, "sample count");
  if (n < 1) throw UsageError("sample count must be >= 1");
  return static_cast<std::size_t>(n);
}

Options parse_args(const std::vector<std::string>& args) {
  Options o;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string_view a = args[i];
    if (a == "--") continue;
    if (a.size() <= 2 || a.substr(0, 2) != "--") {
      o.positional.emplace_back(a);
      continue;
    }
    std::string name(a.substr(2));
    std::optional<std::string> value;
    if (const auto eq = name.find('='); eq != std::string::npos) {
      value = name.substr(eq + 1);
      name.resize(eq);
    }
    if (name == "help") {
      o.help = true;
      continue;
    }
    if (name == "labels") {
      o.labels = true;
      continue;
    }
    if (!value) {
      if (i + 1 >= args.size()) throw UsageError("--" + name + " needs a value");
      value = args[++i];
    }
    if (name == "format") {
      const auto f = parse_format(*value);
      if (!f) throw UsageError("--format must be json, csv or pretty");
      o.format = *f;
    } else if (name == "seed") {
      o.seed = parse_integer<std::uint64_t>(*value, "seed");
    } else if (name == "tol") {
      o.tol = parse_real(*value, "tolerance");
      if (*o.tol < 0) throw UsageError("tolerance must be non-negative");
    } else if (name == "samples") {
      o.samples = parse_samples(*value);
    } else if (name == "threads") {
      o.threads = parse_integer<int>(*value, "thread count");
      if (*o.threads < 1) throw UsageError("thread count must be >= 1");
    } else if (name == "ds-rate") {
      o.ds_rate = parse_real(*value, "ds rate");
      if (!(o.ds_rate > 0)) throw UsageError("ds rate must be positive");
    } else {
      throw UsageError("unknown flag --" + name);
    }
  }
  return o;
}

Signature parse_signature(const std::string& text) {
  try {
    return Signature::parse(text);
  } catch (const AlgebraError& e) {
    throw UsageError(e.what());
  }
}

AlgebraElement parse_element(const Signature& sig, const std::vector<std::string>& tokens,
                             std::size_t first, std::size_t count) {
  std::vector<double> c;
  for (std::size_t i = first; i < first + count; ++i) c.push_back(parse_real(tokens[i], "coefficient"));
  return AlgebraElement(sig, std::move(c));
}

Json header(std::string_view command) {
  return Json{{"schema_version", kSchemaVersion}, {"command", command}};
}

std::size_t expect_element_arity(const Options& o, const Signature& sig, std::size_t extra,
                                 std::string_view command) {
  const std::size_t want = sig.dimension();
  const std::size_t got = o.positional.size() - 2;
  if (got != want + extra) {
    throw UsageError(std::string(command) + " with signature \"" + sig.str() + "\" needs " +
                     std::to_string(want) + " coefficients" + (extra ? " and a rapidity" : "") +
                     ", got " + std::to_string(got) + " values");
  }
  return want;
}

CausalClass causal_of(const TangentTriple& t, double tol) { return classify_causal(t, tol * t.dt * t.dt); }

// Readings of x; shape depends on the signature.
Json decomposition_json(const AlgebraElement& x, double causal_tol) {
  const auto& sig = x.signature();
  Json j;
  if (sig == signatures::D2) {
    const auto f = decompose_d2(x);
    j["tangent"] = to_json(f.tangent);
    j["momentum"] = to_json(f.momentum);
    j["cross"] = to_json(f.cross);
    j["dS_dlambda"] = f.action_rate;
    j["residual"] = f.min_action_residual;
    j["minimal"] = is_min_action(x);
    j["causal"] = to_string(causal_of(f.tangent, causal_tol));
    if (x[0] != 0 && is_min_action(x)) {
      const auto fac = factorize(x);
      j["factorization"] = Json{{"scale", fac.scale}, {"left", to_json(fac.left)}, {"right", to_json(fac.right)}};
    } else {
      j["factorization"] = nullptr;
    }
  } else if (sig == signatures::C2) {
    const auto t = decompose_c2(x);
    j["tangent"] = to_json(t);
    j["causal"] = to_string(causal_of(t, causal_tol));
  } else if (sig == signatures::C4) {
    j["euclidean"] = to_json(decompose_euclidean_plane(x));
  } else if (sig == signatures::C2xC4) {
    const auto e = decompose_euclidean_fiber(x);
    j["sectors"] = Json{{"tangent", to_json(e.tangent, sig)},
                        {"mixed", to_json(e.mixed, sig)},
                        {"momentum", to_json(e.momentum, sig)}};
  }
  return j;
}

int cmd_labels(const Options& o, const Signature& sig, std::ostream& out) {
  Json doc = header("labels");
  doc["signature"] = sig.str();
  doc["labels"] = sig.labels();
  render(doc, o.format, out);
  return kExitOk;
}

int cmd_decompose(const Options& o, std::ostream& out) {
  if (o.positional.size() < 2) throw UsageError("decompose needs a signature and coefficients");
  const auto sig = parse_signature(o.positional[1]);
  if (o.labels) return cmd_labels(o, sig, out);
  const auto n = expect_element_arity(o, sig, 0, "decompose");
  const auto x = parse_element(sig, o.positional, 2, n);

  Json doc = header("decompose");
  doc["signature"] = sig.str();
  doc["labels"] = sig.labels();
  doc["coefficients"] = to_json(x);
  doc.update(decomposition_json(x, o.tol.value_or(kCausalTolerance)));
  doc["square"] = to_json(square_embed(x));
  render(doc, o.format, out);
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto& p = o.positional;
  if (p.size() < 2 || p.size() > 5) throw UsageError("usage: verify SIG [SAMPLES [SEED [TOL]]]");
  std::optional<double> tolerance = o.tol;
  if (p.size() > 4) {
    tolerance = parse_real(p[4], "tolerance");
    if (*tolerance < 0) throw UsageError("tolerance must be non-negative");
  }
  const VerifyConfig config{
      .signature = parse_signature(p[1]),
      .samples = p.size() > 2 ? parse_samples(p[2]) : o.samples.value_or(kDefaultSamples),
      .seed = p.size() > 3 ? parse_integer<std::uint64_t>(p[3], "seed") : o.seed.value_or(0),
      .tolerance = tolerance,
      .execution = Execution::parallel,
  };
  const auto report = run_verification(config);
  render(to_json(report), o.format, out);
  return report.pass ? kExitOk : kExitFailure;
}

int cmd_boost(const Options& o, std::ostream& out) {
  if (o.positional.size() < 2) throw UsageError("boost needs a signature, coefficients and a rapidity");
  const auto sig = parse_signature(o.positional[1]);
  if (!(sig == signatures::D2) && !(sig == signatures::C2)) {
    throw UsageError("boost supports signatures \"+\" and \"++\", got \"" + sig.str() + "\"");
  }
  const auto n = expect_element_arity(o, sig, 1, "boost");
  const auto x = parse_element(sig, o.positional, 2, n);
  const double phi = parse_real(o.positional[2 + n], "rapidity");
  const auto u = boost_element(sig, phi);
  const auto xu = transform(x, u);
  const double tol = o.tol.value_or(kBoostTolerance);
  const double causal_tol = kCausalTolerance;

  Json residuals;
  double worst = 0;
  const auto relative = [](double d, double scale) { return scale > 0 ? d / scale : d; };
  const auto record = [&](const char* key, double rel) {
    residuals[key] = rel;
    worst = std::max(worst, rel);
  };
  const auto note = [&](const char* key, double after, double expected, double scale) {
    record(key, relative(std::abs(after - expected), scale));
  };
  // (t, q) pairs move by [[cosh 2phi, sinh 2phi], [sinh 2phi, cosh 2phi]].
  const double ch = std::cosh(2 * phi);
  const double sh = std::sinh(2 * phi);
  const auto covariant = [&](const char* key, double t, double q, double t_after, double q_after) {
    const double scale = (ch + std::abs(sh)) * (std::abs(t) + std::abs(q)) + std::abs(t_after) + std::abs(q_after);
    const double d = std::max(std::abs(t_after - (ch * t + sh * q)), std::abs(q_after - (sh * t + ch * q)));
    record(key, relative(d, scale));
  };
  if (sig == signatures::D2) {
    const auto a = decompose_d2(x);
    const auto b = decompose_d2(xu);
    note("ds_dlambda", b.tangent.ds, a.tangent.ds, a.tangent.dt + b.tangent.dt);
    note("m", b.momentum.mass, a.momentum.mass, a.momentum.energy + b.momentum.energy);
    note("dS_dlambda", b.action_rate, a.action_rate,
         a.momentum.energy * a.tangent.dt + std::abs(a.momentum.momentum * a.tangent.dq) +
             b.momentum.energy * b.tangent.dt + std::abs(b.momentum.momentum * b.tangent.dq));
    const double cs = std::sqrt(a.momentum.energy * a.tangent.dt) + std::sqrt(b.momentum.energy * b.tangent.dt);
    note("cross_minus_1", b.cross.minus_1, a.cross.minus_1, cs);
    note("cross_minus_e12", b.cross.minus_e12, a.cross.minus_e12, cs);
    const auto plus_norm = [](const FiberDecomposition& f) {
      return f.cross.plus_1 * f.cross.plus_1 - f.cross.plus_e1 * f.cross.plus_e1;
    };
    const auto plus_terms = [](const FiberDecomposition& f) {
      return f.cross.plus_1 * f.cross.plus_1 + f.cross.plus_e1 * f.cross.plus_e1;
    };
    note("cross_plus_norm", plus_norm(b), plus_norm(a), plus_terms(a) + plus_terms(b));
    covariant("tangent_covariance", a.tangent.dt, a.tangent.dq, b.tangent.dt, b.tangent.dq);
    covariant("momentum_covariance", a.momentum.energy, a.momentum.momentum, b.momentum.energy,
              b.momentum.momentum);
    covariant("cross_plus_covariance", a.cross.plus_1, a.cross.plus_e1, b.cross.plus_1, b.cross.plus_e1);
  } else {
    const auto a = decompose_c2(x);
    const auto b = decompose_c2(xu);
    note("ds_dlambda", b.ds, a.ds, a.dt + b.dt);
    covariant("tangent_covariance", a.dt, a.dq, b.dt, b.dq);
  }

  Json doc = header("boost");
  doc["signature"] = sig.str();
  doc["rapidity"] = phi;
  doc["u"] = to_json(u);
  Json before = Json{{"coefficients", to_json(x)}};
  before.update(decomposition_json(x, causal_tol));
  Json after = Json{{"coefficients", to_json(xu)}};
  after.update(decomposition_json(xu, causal_tol));
  doc["before"] = before;
  doc["after"] = after;
  doc["residuals"] = residuals;
  doc["tolerance"] = tol;
  doc["pass"] = worst <= tol;
  render(doc, o.format, out);
  return worst <= tol ? kExitOk : kExitFailure;
}

int cmd_trajectory(const Options& o, std::ostream& out) {
  const auto& p = o.positional;
  if (p.size() != 5) throw UsageError("usage: trajectory MASS RAPIDITY SPAN STEPS");
  const double mass = parse_real(p[1], "mass");
  const double rapidity = parse_real(p[2], "rapidity");
  const double span = parse_real(p[3], "span");
  const long steps = parse_integer<long>(p[4], "step count");
  if (!(mass > 0)) throw UsageError("mass must be positive");
  if (!(span > 0)) throw UsageError("span must be positive");
  if (steps < 1) throw UsageError("step count must be >= 1");

  const auto record = trajectory_action(mass, rapidity, span, steps, o.ds_rate);
  const double tol = o.tol.value_or(kTrajectoryTolerance);

  Json doc = header("trajectory");
  doc["mass"] = mass;
  doc["rapidity"] = rapidity;
  doc["span"] = span;
  doc["steps"] = steps;
  doc["ds_dlambda"] = o.ds_rate;
  doc["element"] = to_json(free_particle_element(mass, rapidity, o.ds_rate));
  doc["numeric_S"] = record.numeric;
  doc["analytic_S"] = record.analytic;
  doc["error"] = record.error;
  doc["tolerance"] = tol;
  doc["pass"] = record.error <= tol;
  render(doc, o.format, out);
  return record.error <= tol ? kExitOk : kExitFailure;
}

}  // namespace

std::string usage() {
  return "usage: fiberctl <command> [args] [flags]\n"
         "\n"
         "commands:\n"
         "  decompose SIG C...              readings of x (x) x\n"
         "  verify SIG [SAMPLES [SEED [TOL]]]  seeded property sweep\n"
         "  boost SIG C... RAPIDITY         decompositions of x and x u, u = cosh + sinh e1\n"
         "  trajectory MASS RAPIDITY SPAN STEPS  free-particle action integral\n"
         "\n"
         "SIG is a string of '+'/'-' generator squares, e.g. ++ (D2), -+ (C2 x C4), + (C2).\n"
         "Coefficients follow subset-bitmask order (1, e1, e2, e12, ...); see --labels.\n"
         "\n"
         "flags:\n"
         "  --format {json,csv,pretty}  output format (default json)\n"
         "  --seed N, --samples N, --tol X   verify defaults\n"
         "  --labels                    print the basis order for SIG (decompose)\n"
         "  --threads N                 worker threads for verify\n"
         "  --ds-rate X                 proper rate ds/dlambda for trajectory (default 1)\n"
         "\n"
         "exit codes: 0 success, 1 property/tolerance failure, 2 usage error\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const Options o = parse_args(args);
    if (o.help) {
      out << usage();
      return kExitOk;
    }
    if (o.positional.empty()) throw UsageError("missing command");
#ifdef _OPENMP
    if (o.threads) omp_set_num_threads(*o.threads);
#endif
    const std::string& command = o.positional.front();
    if (command == "decompose") return cmd_decompose(o, out);
    if (command == "verify") return cmd_verify(o, out);
    if (command == "boost") return cmd_boost(o, out);
    if (command == "trajectory") return cmd_trajectory(o, out);
    throw UsageError("unknown command \"" + command + "\"");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << usage();
    return kExitUsage;
  } catch (const AlgebraError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace fiber::cli
