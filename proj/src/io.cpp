#include "matchsig/io.hpp"

#include <fstream>
#include <sstream>

namespace matchsig {

namespace {

Element element_from_json(const Field& field, const Json& v) {
  if (v.is_string()) return field.parse_element(v.get<std::string>());
  if (v.is_number_integer()) return field.from_int(v.get<std::int64_t>());
  throw std::invalid_argument("field element must be a string or an integer");
}

Json elements_to_json(std::span<const Element> values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(v.str());
  return arr;
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing key '") + key + "'");
  return j.at(key);
}

template <typename T>
T get_as(const Json& j, const char* key) {
  try {
    return member(j, key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument(std::string("key '") + key + "' has the wrong type");
  }
}

}  // namespace

Json signature_to_json(const Signature& f) {
  return Json{{"n", f.bits()}, {"field", f.field().name()}, {"values", elements_to_json(f.values())}};
}

Signature signature_from_json(const Json& j) {
  const int n = get_as<int>(j, "n");
  const Field field = Field::parse(get_as<std::string>(j, "field"));
  const Json& values = member(j, "values");
  if (!values.is_array()) throw std::invalid_argument("'values' must be an array");
  std::vector<Element> table;
  table.reserve(values.size());
  for (const auto& v : values) table.push_back(element_from_json(field, v));
  return Signature(n, field, std::move(table));
}

Json matrix_to_json(const SkewMatrix& m) {
  return Json{{"n", m.size()}, {"field", m.field().name()}, {"upper", elements_to_json(m.upper())}};
}

SkewMatrix matrix_from_json(const Json& j) {
  const int n = get_as<int>(j, "n");
  const Field field = Field::parse(get_as<std::string>(j, "field"));
  const Json& upper = member(j, "upper");
  if (!upper.is_array()) throw std::invalid_argument("'upper' must be an array");
  std::vector<Element> entries;
  for (const auto& v : upper) entries.push_back(element_from_json(field, v));
  return SkewMatrix(n, field, std::move(entries));
}

Json matchgate_to_json(const Matchgate& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back(Json::array({e.u, e.v, e.weight.str()}));
  return Json{{"field", g.field().name()}, {"nodes", g.nodes()}, {"edges", edges}, {"io", g.io()}};
}

Matchgate matchgate_from_json(const Json& j) {
  const Field field = Field::parse(get_as<std::string>(j, "field"));
  auto nodes = get_as<std::vector<int>>(j, "nodes");
  auto io = get_as<std::vector<int>>(j, "io");
  const Json& edges_json = member(j, "edges");
  if (!edges_json.is_array()) throw std::invalid_argument("'edges' must be an array");
  std::vector<Edge> edges;
  for (const auto& e : edges_json) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw std::invalid_argument("each edge must be [u, v, weight]");
    edges.push_back({e[0].get<int>(), e[1].get<int>(), element_from_json(field, e[2])});
  }
  return Matchgate(field, std::move(nodes), std::move(edges), std::move(io));
}

Json verdict_to_json(const RecognitionVerdict& v, int n) {
  Json out{{"status", to_string(v.status)}, {"steps", v.steps}};
  if (v.certificate) {
    out["certificate"] = Json{{"basepoint", bits_to_string(v.certificate->basepoint, n)},
                              {"scale", v.certificate->scale.str()},
                              {"matrix", matrix_to_json(v.certificate->matrix)}};
  }
  if (v.witness) {
    std::visit(
        [&](const auto& w) {
          using T = std::decay_t<decltype(w)>;
          if constexpr (std::is_same_v<T, ParityWitness>) {
            out["witness"] = Json{{"kind", "parity"},
                                  {"first", bits_to_string(w.first, n)},
                                  {"second", bits_to_string(w.second, n)}};
          } else if constexpr (std::is_same_v<T, IdentityWitness>) {
            out["witness"] = Json{{"kind", "identity"},
                                  {"alpha", bits_to_string(w.alpha, n)},
                                  {"p", bits_to_string(w.p, n)},
                                  {"value", w.value.str()}};
          } else {
            out["witness"] = Json{{"kind", "mismatch"},
                                  {"input", bits_to_string(w.input, n)},
                                  {"expected", w.expected.str()},
                                  {"actual", w.actual.str()}};
          }
        },
        *v.witness);
  }
  return out;
}

Json count_to_json(const CountReport& r) {
  return Json{{"s", r.s},
              {"n", r.n},
              {"normalized", r.normalized.get_str()},
              {"odd", r.odd.get_str()},
              {"even", r.even.get_str()},
              {"all", r.all.get_str()},
              {"semi_normalized_odd", r.semi_normalized_odd.get_str()}};
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in '" + path + "': " + e.what());
  }
}

}  // namespace matchsig
