#include "conley/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace conley {

using nlohmann::json;

namespace {

const json& expect_array(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_array())
    throw IoError(std::string("expected an object with array field '") + key + "'");
  return j[key];
}

}  // namespace

json complex_to_json(const SimplicialComplex& K) {
  // Maximal simplices are enough to rebuild the closure (ids are canonical).
  json arr = json::array();
  for (SimplexId s = 0; s < K.size(); ++s)
    if (K.cofacets(s).empty()) arr.push_back(K.simplex(s).vertices);
  return json{{"simplices", std::move(arr)}};
}

SimplicialComplex complex_from_json(const json& j) {
  const json& arr = expect_array(j, "simplices");
  std::vector<std::vector<VertexId>> simplices;
  for (const auto& entry : arr) {
    if (!entry.is_array()) throw IoError("complex: each simplex must be an array of vertex ids");
    std::vector<VertexId> verts;
    for (const auto& v : entry) {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw IoError("complex: vertex ids must be unsigned integers");
      verts.push_back(v.get<VertexId>());
    }
    simplices.push_back(std::move(verts));
  }
  return SimplicialComplex::build(simplices);
}

json field_to_json(const MultivectorField& V) {
  json arr = json::array();
  for (VectorId v : V.live_ids()) arr.push_back(V.members(v));
  return json{{"vectors", std::move(arr)}};
}

MultivectorField field_from_json(const SimplicialComplex& K, const json& j) {
  const json& arr = expect_array(j, "vectors");
  std::vector<std::vector<SimplexId>> vectors;
  for (const auto& entry : arr) {
    if (!entry.is_array()) throw IoError("field: each vector must be an array of simplex ids");
    std::vector<SimplexId> mem;
    for (const auto& s : entry) {
      if (!s.is_number_integer() || s.get<std::int64_t>() < 0)
        throw IoError("field: simplex ids must be unsigned integers");
      mem.push_back(s.get<SimplexId>());
    }
    vectors.push_back(std::move(mem));
  }
  return MultivectorField::from_vectors(K, vectors);
}

json morse_to_json(const MorseDecomposition& md) {
  json sets = json::array();
  for (const auto& s : md.sets) sets.push_back(s);
  json edges = json::array();
  for (PosetId p = 0; p < md.count(); ++p)
    for (PosetId q : md.below[p]) edges.push_back(json::array({p, q}));
  return json{{"morse_sets", std::move(sets)},
              {"poset_edges", std::move(edges)},
              {"linear_ext", md.linear_ext}};
}

json connection_to_json(const ConnectionMatrix& cm) {
  json entries = json::array();
  for (std::uint32_t j = 0; j < cm.size(); ++j)
    for (std::uint32_t i : cm.cols[j]) entries.push_back(json::array({i, j}));
  json chains = json::array();
  for (const auto& c : cm.basis_chains) chains.push_back(c);
  return json{{"kept", cm.simplices},
              {"grading", cm.grading},
              {"dims", cm.dims},
              {"entries", std::move(entries)},
              {"basis_chains", std::move(chains)},
              {"linear_ext", cm.linear_ext}};
}

ConnectionMatrix connection_from_json(const json& j) {
  ConnectionMatrix cm;
  for (const auto& s : expect_array(j, "kept")) cm.simplices.push_back(s.get<SimplexId>());
  for (const auto& g : expect_array(j, "grading")) cm.grading.push_back(g.get<PosetId>());
  for (const auto& d : expect_array(j, "dims")) cm.dims.push_back(d.get<std::int32_t>());
  if (cm.grading.size() != cm.simplices.size() || cm.dims.size() != cm.simplices.size())
    throw IoError("connection: kept/grading/dims lengths differ");
  cm.kept.resize(cm.simplices.size());
  for (std::uint32_t t = 0; t < cm.size(); ++t) cm.kept[t] = t;
  cm.cols.resize(cm.size());
  for (const auto& e : expect_array(j, "entries")) {
    if (!e.is_array() || e.size() != 2) throw IoError("connection: entries must be [i,j] pairs");
    const auto i = e[0].get<std::uint32_t>(), jj = e[1].get<std::uint32_t>();
    if (i >= cm.size() || jj >= cm.size()) throw IoError("connection: entry index out of range");
    cm.cols[jj].push_back(i);
  }
  for (auto& col : cm.cols) std::sort(col.begin(), col.end());
  cm.basis_chains.resize(cm.size());
  if (j.contains("basis_chains")) {
    const auto& chains = expect_array(j, "basis_chains");
    if (chains.size() != cm.size()) throw IoError("connection: basis_chains length mismatch");
    for (std::uint32_t t = 0; t < cm.size(); ++t)
      for (const auto& s : chains[t]) cm.basis_chains[t].push_back(s.get<SimplexId>());
  }
  if (j.contains("linear_ext"))
    for (const auto& p : j["linear_ext"]) cm.linear_ext.push_back(p.get<PosetId>());
  return cm;
}

FilteredOrder order_from_json(const SimplicialComplex& K, const MorseDecomposition& md,
                              const json& j) {
  const json& arr = expect_array(j, "order");
  if (arr.size() != K.size()) throw IoError("order: must list every simplex exactly once");
  std::vector<SimplexId> order;
  for (const auto& s : arr) order.push_back(s.get<SimplexId>());

  std::vector<char> seen(K.size(), 0);
  for (SimplexId s : order) {
    if (s >= K.size() || seen[s]) throw ValidationError("order is not a permutation of the complex");
    seen[s] = 1;
  }
  // Blocks must be contiguous and follow a linear extension.
  std::vector<PosetId> ext;
  std::vector<char> open(md.count(), 0), closed(md.count(), 0);
  for (std::size_t t = 0; t < order.size(); ++t) {
    const PosetId p = md.set_of[order[t]];
    if (t == 0 || md.set_of[order[t - 1]] != p) {
      if (closed[p] || open[p]) throw ValidationError("order splits Morse set " + std::to_string(p));
      if (t > 0) closed[md.set_of[order[t - 1]]] = 1;
      open[p] = 1;
      ext.push_back(p);
    }
  }
  // Per-set layouts delegate dimension checks to filtered_order.
  std::vector<std::vector<SimplexId>> within(md.count());
  for (SimplexId s : order) within[md.set_of[s]].push_back(s);
  return filtered_order(K, with_linear_ext(md, ext), within);
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError("parse error in '" + path + "': " + e.what());
  }
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string slurp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace conley
