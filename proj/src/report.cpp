#include "fiber/report.hpp"

#include <string>

namespace fiber {

std::optional<Format> parse_format(std::string_view text) {
  if (text == "json") return Format::json;
  if (text == "csv") return Format::csv;
  if (text == "pretty") return Format::pretty;
  return std::nullopt;
}

Json to_json(const AlgebraElement& x) {
  Json a = Json::array();
  for (double c : x.coeffs()) a.push_back(c);
  return a;
}

Json to_json(const TensorElement& t) {
  Json a = Json::array();
  for (double c : t.coeffs()) a.push_back(c);
  return a;
}

Json to_json(const TangentTriple& t) {
  return Json{{"dt_dlambda", t.dt}, {"dq_dlambda", t.dq}, {"ds_dlambda", t.ds}};
}

Json to_json(const MomentumTriple& m) {
  return Json{{"H", m.energy}, {"p", m.momentum}, {"m", m.mass}};
}

Json to_json(const CrossQuad& c) {
  return Json{{"plus_1", c.plus_1}, {"plus_e1", c.plus_e1}, {"minus_1", c.minus_1}, {"minus_e12", c.minus_e12}};
}

Json to_json(const EuclideanPlane& e) {
  return Json{{"plus_1", e.plus_1}, {"plus_e", e.plus_e}, {"minus_1", e.minus_1}, {"minus_e", e.minus_e}};
}

Json to_json(const SectorReadings& s, const Signature& sig) {
  Json slots = Json::array();
  for (BasisIndex b : s.slots) slots.push_back(sig.label(b));
  return Json{{"slots", slots}, {"plus", s.plus}, {"minus", s.minus}};
}

Json to_json(const PropertyResult& p) {
  return Json{{"name", p.name},
              {"samples", p.samples},
              {"gate", to_string(p.gate)},
              {"tolerance", p.tolerance},
              {"max_abs_residual", p.max_abs_residual},
              {"max_rel_residual", p.max_rel_residual},
              {"violations", p.violations},
              {"pass", p.pass}};
}

Json to_json(const VerificationReport& r) {
  Json config{{"signature", r.config.signature.str()},
              {"samples", r.config.samples},
              {"seed", r.config.seed},
              {"tolerance", r.config.tolerance ? Json(*r.config.tolerance) : Json(nullptr)}};
  Json props = Json::array();
  for (const auto& p : r.properties) props.push_back(to_json(p));
  return Json{{"schema_version", kSchemaVersion},
              {"command", "verify"},
              {"config", config},
              {"properties", props},
              {"pass", r.pass}};
}

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten(const Json& v, const std::string& key, std::ostream& out) {
  if (v.is_object()) {
    for (const auto& [k, child] : v.items()) flatten(child, key.empty() ? k : key + "." + k, out);
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], key + "[" + std::to_string(i) + "]", out);
  } else {
    out << key << ',' << scalar_text(v) << '\n';
  }
}

bool is_flat_array(const Json& v) {
  if (!v.is_array()) return false;
  for (const auto& e : v) {
    if (e.is_structured()) return false;
  }
  return true;
}

void pretty(const Json& v, int depth, std::ostream& out) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  if (v.is_object()) {
    for (const auto& [k, child] : v.items()) {
      if (child.is_structured() && !is_flat_array(child)) {
        out << pad << k << ":\n";
        pretty(child, depth + 1, out);
      } else if (is_flat_array(child)) {
        out << pad << k << ": [";
        for (std::size_t i = 0; i < child.size(); ++i) out << (i ? ", " : "") << scalar_text(child[i]);
        out << "]\n";
      } else {
        out << pad << k << ": " << scalar_text(child) << '\n';
      }
    }
  } else if (v.is_array()) {
    for (const auto& e : v) {
      out << pad << "-\n";
      pretty(e, depth + 1, out);
    }
  } else {
    out << pad << scalar_text(v) << '\n';
  }
}

}  // namespace

void render(const Json& doc, Format format, std::ostream& out) {
  switch (format) {
    case Format::json:
      out << doc.dump(2) << '\n';
      break;
    case Format::csv:
      out << "key,value\n";
      flatten(doc, "", out);
      break;
    case Format::pretty:
      pretty(doc, 0, out);
      break;
  }
}

}  // namespace fiber
