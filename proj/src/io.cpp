#include "kusuoka/io.hpp"

#include <fstream>
#include <sstream>

namespace kusuoka {
namespace {

template <class T>
T scalar_from_json(const Json& v) {
  try {
    if (v.is_string()) return Field<T>::parse(v.get<std::string>());
    if (v.is_number_integer()) return Field<T>::from_rational(mpq_class(v.dump()));
    if (v.is_number()) {
      if constexpr (Field<T>::exact) return Surd::parse(v.dump());
      else return v.get<double>();
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad scalar ") + v.dump() + ": " + e.what());
  }
  throw ConfigError("expected a number or a numeric string, got " + v.dump());
}

template <class T>
Matrix<T> matrix_from_json(const Json& rows, std::size_t dim, const std::string& what) {
  if (!rows.is_array() || rows.size() != dim)
    throw ConfigError(what + ": expected " + std::to_string(dim) + " rows");
  Matrix<T> m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (!rows[i].is_array() || rows[i].size() != dim)
      throw ConfigError(what + ": row " + std::to_string(i) + " must have " +
                        std::to_string(dim) + " entries");
    for (std::size_t k = 0; k < dim; ++k) m(i, k) = scalar_from_json<T>(rows[i][k]);
  }
  return m;
}

template <class T>
Json matrix_to_json(const Matrix<T>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(scalar_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

template <class T>
Json scalar_to_json(const T& x) {
  if constexpr (Field<T>::exact) return Json(x.str());
  else return Json(x);
}

template <class T>
Json system_to_json(const MatrixSystem<T>& sys) {
  Json j;
  j["alphabet"] = sys.alphabet().names();
  j["dim"] = sys.dim();
  Json maps = Json::object();
  for (Symbol s = 0; s < sys.size(); ++s) maps[sys.alphabet().name(s)] = matrix_to_json(sys.map(s));
  j["maps"] = std::move(maps);
  j["energy"] = matrix_to_json(sys.energy());
  j["backend"] = Field<T>::exact ? "exact" : "float";
  return j;
}

std::string system_backend(const Json& j) {
  if (!j.is_object()) throw ConfigError("system document must be a JSON object");
  if (!j.contains("backend")) return "exact";
  if (!j["backend"].is_string()) throw ConfigError("backend must be a string");
  auto b = j["backend"].get<std::string>();
  if (b != "exact" && b != "float") throw ConfigError("backend must be exact or float");
  return b;
}

template <class T>
MatrixSystem<T> system_from_json(const Json& j) {
  system_backend(j);
  for (const char* key : {"alphabet", "dim", "maps", "energy"})
    if (!j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  if (!j["alphabet"].is_array() || j["alphabet"].empty())
    throw ConfigError("alphabet must be a non-empty array");
  std::vector<std::string> names;
  for (const auto& n : j["alphabet"]) {
    if (!n.is_string()) throw ConfigError("alphabet entries must be strings");
    names.push_back(n.get<std::string>());
  }
  Alphabet alphabet(std::move(names));
  if (!j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0)
    throw ConfigError("dim must be a positive integer");
  const auto dim = j["dim"].get<std::size_t>();
  const auto& maps_json = j["maps"];
  if (!maps_json.is_object() || maps_json.size() != alphabet.size())
    throw ConfigError("maps must have one entry per symbol");
  std::vector<Matrix<T>> maps;
  for (const auto& name : alphabet.names()) {
    if (!maps_json.contains(name)) throw ConfigError("no map for symbol '" + name + "'");
    maps.push_back(matrix_from_json<T>(maps_json[name], dim, "map " + name));
  }
  auto energy = matrix_from_json<T>(j["energy"], dim, "energy");
  return MatrixSystem<T>(std::move(alphabet), std::move(maps), std::move(energy));
}

template <class T>
Json cylinder_to_json(const CylinderFunction<T>& f, const Alphabet& alphabet) {
  Json values = Json::object();
  for (std::size_t i = 0; i < f.values.size(); ++i)
    values[alphabet.format(word_at(i, f.depth, alphabet.size()))] = scalar_to_json(f.values[i]);
  Json j;
  j["depth"] = f.depth;
  j["values"] = std::move(values);
  return j;
}

template <class T>
CylinderFunction<T> cylinder_from_json(const Json& j, const Alphabet& alphabet) {
  if (!j.is_object() || !j.contains("depth") || !j.contains("values"))
    throw ConfigError("cylinder function needs depth and values");
  if (!j["depth"].is_number_unsigned()) throw ConfigError("depth must be a non-negative integer");
  const auto depth = j["depth"].get<std::size_t>();
  const auto count = word_count(alphabet.size(), depth);
  const auto& values = j["values"];
  if (!values.is_object() || values.size() != count)
    throw ConfigError("values must list all " + std::to_string(count) + " words of length " +
                      std::to_string(depth));
  CylinderFunction<T> f{depth, std::vector<T>(count)};
  std::vector<bool> seen(count, false);
  for (const auto& [key, v] : values.items()) {
    Word w;
    try {
      w = alphabet.parse(key);
    } catch (const std::exception& e) {
      throw ConfigError("bad word '" + key + "': " + e.what());
    }
    if (w.size() != depth) throw ConfigError("word '" + key + "' has the wrong length");
    const auto idx = word_index(w, alphabet.size());
    if (seen[idx]) throw ConfigError("word '" + key + "' listed twice");
    seen[idx] = true;
    f.values[idx] = scalar_from_json<T>(v);
  }
  return f;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

#define KUSUOKA_INSTANTIATE(T)                                                   \
  template Json scalar_to_json(const T&);                                        \
  template Json system_to_json(const MatrixSystem<T>&);                          \
  template MatrixSystem<T> system_from_json(const Json&);                        \
  template Json cylinder_to_json(const CylinderFunction<T>&, const Alphabet&);   \
  template CylinderFunction<T> cylinder_from_json(const Json&, const Alphabet&);

KUSUOKA_INSTANTIATE(double)
KUSUOKA_INSTANTIATE(Surd)

}  // namespace kusuoka
