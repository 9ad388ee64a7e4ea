#ifndef HCOUPLE_SERIALIZE_HPP
#define HCOUPLE_SERIALIZE_HPP

#include <json.hpp>

#include "hcouple/presentation.hpp"

namespace hcouple {

/// All machine output is JSON with exact strings for every number;
/// ordered_json keeps key order deterministic so that replayed runs are
/// byte-identical.
using Json = nlohmann::ordered_json;

/// [["b1","3"],["b2","5"]], sorted by class order (largest first).
Json vecToJson(const VecElement& v, const BasisContext& ctx);
VecElement vecFromJson(const Json& j);

Json presentationToJson(const Presentation& p);
Presentation presentationFromJson(const Json& j);

std::string presentationToString(const Presentation& p);
Presentation presentationFromString(const std::string& text);

Presentation loadPresentationFile(const std::string& path);
void savePresentationFile(const Presentation& p, const std::string& path);

} // namespace hcouple

#endif
