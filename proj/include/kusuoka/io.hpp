#pragma once

#include <string>

#include "json.hpp"
#include "kusuoka/matsys.hpp"

namespace kusuoka {

using Json = nlohmann::ordered_json;

/// {"alphabet": [...], "dim": d, "maps": {symbol: rows}, "energy": rows, "backend": ...}.
/// Exact entries are written as strings such as "1/2" or "3/5*sqrt(15)"; float entries as
/// numbers.
template <class T>
Json system_to_json(const MatrixSystem<T>& sys);

/// Reads entries given as strings or numbers. Numbers are read through their decimal text, so
/// 0.5 becomes exactly 1/2 on the exact backend. Throws ConfigError on malformed input.
template <class T>
MatrixSystem<T> system_from_json(const Json& j);

/// Backend requested by the document ("exact" when absent).
std::string system_backend(const Json& j);

/// {"depth": k, "values": {word: scalar}} with every word of length k present exactly once.
template <class T>
Json cylinder_to_json(const CylinderFunction<T>& f, const Alphabet& alphabet);

template <class T>
CylinderFunction<T> cylinder_from_json(const Json& j, const Alphabet& alphabet);

template <class T>
Json scalar_to_json(const T& x);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace kusuoka
