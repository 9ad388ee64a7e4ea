#include "hcouple/serialize.hpp"

#include <fstream>

namespace hcouple {

Json vecToJson(const VecElement& v, const BasisContext& ctx) {
  // sort coefficient pairs by class rank for deterministic output
  std::vector<std::pair<std::size_t, const BasisId*>> ranked;
  for (const auto& [id, c] : v.support()) {
    (void)c;
    ranked.emplace_back(ctx.rank(id), &id);
  }
  std::sort(ranked.begin(), ranked.end());
  Json out = Json::array();
  for (const auto& [rank, id] : ranked) {
    (void)rank;
    out.push_back(Json::array({*id, v.coeff(*id).str()}));
  }
  return out;
}

VecElement vecFromJson(const Json& j) {
  if (!j.is_array())
    throw FormatError("vector must be a JSON array of [basisId, coeff] pairs");
  VecElement v;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2)
      throw FormatError("vector entry must be a [basisId, coeff] pair");
    const auto id = pair[0].get<std::string>();
    if (!v.coeff(id).isZero())
      throw FormatError("duplicate basis id '" + id + "' in vector");
    v = v.withCoeff(id, ScalarValue::parse(pair[1].get<std::string>()));
  }
  return v;
}

namespace {

unsigned radicandFromFieldName(const std::string& name) {
  if (name == "Q")
    return 0;
  if (name.rfind("Q(sqrt", 0) == 0 && name.back() == ')') {
    const std::string digits = name.substr(6, name.size() - 7);
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos)
      return static_cast<unsigned>(std::stoul(digits));
  }
  throw FormatError("unknown scalar field '" + name + "' (expected \"Q\" or \"Q(sqrt d)\")");
}

} // namespace

Json presentationToJson(const Presentation& p) {
  Json j;
  j["format"] = 1;
  j["scalars"] = p.scalarFieldName();
  j["basis"] = p.ctx().order();
  Json psi = Json::object();
  for (const auto& id : p.ctx().order())
    psi[id] = vecToJson(p.psiTable().at(id), p.ctx());
  j["psi"] = psi;
  j["unit"] = vecToJson(p.unit(), p.ctx());
  if (p.cut().kind == CutKind::PsiDown)
    j["cut"] = "psidown";
  else
    j["cut"] = Json{{"gap", vecToJson(p.cut().gap, p.ctx())}};
  return j;
}

Presentation presentationFromJson(const Json& j) {
  if (!j.is_object())
    throw FormatError("presentation must be a JSON object");
  if (j.contains("format") && j["format"].get<int>() != 1)
    throw FormatError("unsupported presentation format version");
  const unsigned radicand = radicandFromFieldName(j.value("scalars", std::string("Q")));
  if (!j.contains("basis"))
    throw FormatError("presentation is missing \"basis\"");
  BasisContext ctx(j["basis"].get<std::vector<std::string>>());

  PsiTable table;
  if (ctx.size() > 0) {
    if (!j.contains("psi"))
      throw FormatError("presentation is missing \"psi\"");
    for (const auto& [id, val] : j["psi"].items())
      table[id] = vecFromJson(val);
  }

  VecElement unit;
  if (j.contains("unit"))
    unit = vecFromJson(j["unit"]);

  HCutSpec cut = HCutSpec::psiDown();
  if (j.contains("cut") && !j["cut"].is_string())
    cut = HCutSpec::withGap(vecFromJson(j["cut"].at("gap")));
  else if (j.contains("cut") && j["cut"].get<std::string>() != "psidown")
    throw FormatError("cut must be \"psidown\" or {\"gap\": [...]}");

  return Presentation(std::move(ctx), std::move(table), std::move(cut), std::move(unit), radicand);
}

std::string presentationToString(const Presentation& p) { return presentationToJson(p).dump(2) + "\n"; }

Presentation presentationFromString(const std::string& text) {
  return presentationFromJson(Json::parse(text));
}

Presentation loadPresentationFile(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw FormatError("cannot open '" + path + "'");
  Json j;
  in >> j;
  return presentationFromJson(j);
}

void savePresentationFile(const Presentation& p, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw FormatError("cannot write '" + path + "'");
  out << presentationToString(p);
}

} // namespace hcouple
