#pragma once

#include <optional>
#include <ostream>
#include <string_view>

#include "json.hpp"

#include "fiber/decompose.hpp"
#include "fiber/verify.hpp"

namespace fiber {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchemaVersion = "1";

enum class Format { json, csv, pretty };

std::optional<Format> parse_format(std::string_view text);

Json to_json(const AlgebraElement& x);
Json to_json(const TensorElement& t);
Json to_json(const TangentTriple& t);
Json to_json(const MomentumTriple& m);
Json to_json(const CrossQuad& c);
Json to_json(const EuclideanPlane& e);
Json to_json(const SectorReadings& s, const Signature& sig);
Json to_json(const PropertyResult& p);
Json to_json(const VerificationReport& r);

/// Writes one document. JSON is indented by two spaces; CSV is a flattened
/// "key,value" table; pretty is an indented key/value listing.
void render(const Json& doc, Format format, std::ostream& out);

}  // namespace fiber
