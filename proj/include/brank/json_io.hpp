#pragma once

// JSON interchange. Tensors: {"dims":[a,b,c],"entries":[[i,j,k,"p/q"],...]}
// with 1-based indices, omitted entries zero, rationals as canonical strings.
// All emitters use ordered_json and sorted entry order so equal values always
// serialize to identical bytes (manifest replay determinism depends on this).

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "brank/errors.hpp"
#include "brank/matrix.hpp"
#include "brank/prng.hpp"
#include "brank/tensor.hpp"

namespace brank {

using Json = nlohmann::ordered_json;

inline Rat rat_from_json(const Json& v) {
  if (v.is_string()) return parse_rat(v.get<std::string>());
  if (v.is_number_integer()) return rat_of(v.get<long long>());
  throw BadInput("expected rational as \"p/q\" string or integer");
}

inline Json rat_to_json(const Rat& q) { return Json(rat_str(q)); }

inline Json vec_to_json(const std::vector<Rat>& v) {
  Json arr = Json::array();
  for (const Rat& x : v) arr.push_back(rat_str(x));
  return arr;
}

inline std::vector<Rat> vec_from_json(const Json& arr) {
  if (!arr.is_array()) throw BadInput("expected array of rationals");
  std::vector<Rat> v;
  v.reserve(arr.size());
  for (const auto& x : arr) v.push_back(rat_from_json(x));
  return v;
}

inline Json qmat_to_json(const QMat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) rows.push_back(vec_to_json(m.row(i)));
  return rows;
}

inline QMat qmat_from_json(const Json& rows) {
  if (!rows.is_array()) throw BadInput("expected matrix as array of rows");
  const int r = static_cast<int>(rows.size());
  if (r == 0) return QMat(0, 0);
  std::vector<std::vector<Rat>> data;
  data.reserve(rows.size());
  for (const auto& row : rows) data.push_back(vec_from_json(row));
  const int c = static_cast<int>(data[0].size());
  QMat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(data[static_cast<size_t>(i)].size()) != c) throw BadInput("ragged matrix rows");
    for (int j = 0; j < c; ++j) m(i, j) = data[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  return m;
}

inline Json tensor_to_json(const Tensor3& t) {
  Json j;
  j["dims"] = Json::array({t.a, t.b, t.c});
  Json entries = Json::array();
  for (int i = 0; i < t.a; ++i)
    for (int jj = 0; jj < t.b; ++jj)
      for (int k = 0; k < t.c; ++k) {
        const Rat& x = t.at(i, jj, k);
        if (x != 0) entries.push_back(Json::array({i + 1, jj + 1, k + 1, rat_str(x)}));
      }
  j["entries"] = std::move(entries);
  return j;
}

inline Tensor3 tensor_from_json(const Json& j) {
  if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].size() != 3)
    throw BadInput("tensor JSON needs \"dims\":[a,b,c]");
  const int a = j["dims"][0].get<int>(), b = j["dims"][1].get<int>(), c = j["dims"][2].get<int>();
  if (a < 1 || b < 1 || c < 1) throw BadInput("tensor dims must be positive");
  Tensor3 t(a, b, c);
  if (!j.contains("entries")) return t;
  for (const auto& ent : j["entries"]) {
    if (!ent.is_array() || ent.size() != 4) throw BadInput("tensor entry must be [i,j,k,value]");
    const int i = ent[0].get<int>(), jj = ent[1].get<int>(), k = ent[2].get<int>();
    if (i < 1 || i > a || jj < 1 || jj > b || k < 1 || k > c)
      throw BadInput("tensor entry index out of range (indices are 1-based)");
    Rat& cell = t.at(i - 1, jj - 1, k - 1);
    if (cell != 0) throw BadInput("duplicate tensor entry at (" + std::to_string(i) + "," + std::to_string(jj) +
                                  "," + std::to_string(k) + ")");
    cell = rat_from_json(ent[3]);
  }
  return t;
}

// Content digest: FNV-1a of the canonical serialization.
inline std::string tensor_hash(const Tensor3& t) { return hex64(fnv1a64(tensor_to_json(t).dump())); }

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadInput("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    throw BadInput("invalid JSON in " + path + ": " + ex.what());
  }
  return j;
}

inline void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw BadInput("cannot write " + path);
  out << j.dump(2) << "\n";
}

inline Tensor3 load_tensor(const std::string& path) { return tensor_from_json(load_json_file(path)); }

}  // namespace brank
