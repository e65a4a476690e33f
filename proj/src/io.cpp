#include "eggshell/io.hpp"

#include <fstream>
#include <sstream>

#include "eggshell/error.hpp"

namespace eggshell::io {

namespace {

template <class T>
T field(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key))
    throw DomainError(std::string(what) + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw DomainError(std::string(what) + ": field '" + key + "' has the wrong type");
  }
}

}  // namespace

json to_json(const DomainSpec& dom) {
  json blocks = json::array();
  for (const auto& b : dom.blocks()) blocks.push_back({{"p", b.p}, {"a", b.a}});
  return {{"blocks", blocks}};
}

DomainSpec domain_from_json(const json& j) {
  const auto blocks = field<json>(j, "blocks", "domain spec");
  if (!blocks.is_array()) throw DomainError("domain spec: 'blocks' must be an array");
  std::vector<BlockSpec> out;
  for (const auto& b : blocks)
    out.push_back({field<std::vector<double>>(b, "p", "domain block"),
                   field<double>(b, "a", "domain block")});
  return DomainSpec(std::move(out));
}

json to_json(const zeta::ZetaSeriesSpec& spec) {
  json groups = json::array();
  for (const auto& g : spec.groups) groups.push_back({{"vars", g.vars}, {"a", g.a}});
  json abs = nullptr;
  if (spec.abs) abs = {{"neg", spec.abs->neg}, {"a", spec.abs->a}};
  return {{"m", spec.m}, {"powers", spec.powers}, {"groups", groups}, {"abs", abs}, {"b", spec.b}};
}

zeta::ZetaSeriesSpec zeta_from_json(const json& j) {
  zeta::ZetaSeriesSpec spec;
  spec.m = field<std::size_t>(j, "m", "zeta spec");
  spec.powers = field<std::vector<double>>(j, "powers", "zeta spec");
  spec.b = field<double>(j, "b", "zeta spec");
  if (j.contains("groups"))
    for (const auto& g : field<json>(j, "groups", "zeta spec"))
      spec.groups.push_back({field<std::vector<std::size_t>>(g, "vars", "zeta group"),
                             field<double>(g, "a", "zeta group")});
  if (j.contains("abs") && !j.at("abs").is_null()) {
    const json& a = j.at("abs");
    spec.abs = zeta::AbsFactor{field<std::size_t>(a, "neg", "zeta abs"),
                               field<double>(a, "a", "zeta abs")};
  }
  zeta::validate(spec);
  return spec;
}

json load_json_argument(const std::string& text) {
  std::string body = text;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || text[first] != '{') {
    std::ifstream in(text);
    if (!in) throw DomainError("cannot open '" + text + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace eggshell::io
