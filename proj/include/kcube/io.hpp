#pragma once

// Instance and certificate file formats (schema tag "kcube-ham/1") and the
// DOT rendering used for manual inspection.  Vertices serialize as integer
// arrays so radixes above ten stay unambiguous.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "kcube/certify.hpp"

namespace kcube {

inline constexpr const char* kSchemaTag = "kcube-ham/1";

struct InstanceFile {
  CubeShape shape;
  Matching matching;
  std::vector<Vertex> endpoints;   // lemma-level invocation
  std::vector<Vertex> forbidden;
  std::optional<std::string> lemma;
  // optional split for range-level lemmas
  std::optional<int> split_d, split_rotation, split_p, split_q;
  bool split_flip = false;
};

struct CertificateFile {
  std::string kind;  // "cycle" or "m-path"
  std::vector<std::vector<Vertex>> sequences;
  InstanceFile instance;
  std::optional<std::string> trace_ref;
  bool verified = false;
};

namespace jsonio {

using nlohmann::json;

inline json vertex_to_json(const Vertex& v) {
  json a = json::array();
  for (uint8_t d : v.c) a.push_back(int(d));
  return a;
}

inline Vertex vertex_from_json(const json& a, const CubeShape& s) {
  if (!a.is_array()) throw InputError("vertex: expected integer array");
  Vertex v;
  for (const auto& d : a) {
    if (!d.is_number_integer()) throw InputError("vertex: expected integer array");
    int val = d.get<int>();
    if (val < 0 || val > 255) throw InputError("vertex: digit out of range");
    v.c.push_back(uint8_t(val));
  }
  validate_vertex(s, v);
  return v;
}

inline json matching_to_json(const Matching& m) {
  json a = json::array();
  for (const Edge& e : m.edges)
    a.push_back(json::array({vertex_to_json(e.a), vertex_to_json(e.b)}));
  return a;
}

inline Matching matching_from_json(const json& a, const CubeShape& s) {
  if (!a.is_array()) throw InputError("matching: expected array of vertex pairs");
  std::vector<Edge> es;
  for (const auto& pair : a) {
    if (!pair.is_array() || pair.size() != 2)
      throw InputError("matching: expected array of vertex pairs");
    es.push_back(make_edge(s, vertex_from_json(pair[0], s), vertex_from_json(pair[1], s)));
  }
  return make_matching(s, es);
}

}  // namespace jsonio

inline nlohmann::json to_json(const InstanceFile& f) {
  nlohmann::json j;
  j["schema"] = kSchemaTag;
  j["n"] = f.shape.n;
  j["k"] = f.shape.k;
  j["matching"] = jsonio::matching_to_json(f.matching);
  if (!f.endpoints.empty()) {
    nlohmann::json eps = nlohmann::json::array();
    for (const Vertex& v : f.endpoints) eps.push_back(jsonio::vertex_to_json(v));
    j["endpoints"] = eps;
  }
  if (!f.forbidden.empty()) {
    nlohmann::json fb = nlohmann::json::array();
    for (const Vertex& v : f.forbidden) fb.push_back(jsonio::vertex_to_json(v));
    j["forbidden"] = fb;
  }
  if (f.lemma) j["lemma"] = *f.lemma;
  if (f.split_d) {
    j["split"] = {{"d", *f.split_d},
                  {"rotation", f.split_rotation.value_or(0)},
                  {"flip", f.split_flip},
                  {"p", f.split_p.value_or(0)},
                  {"q", f.split_q.value_or(0)}};
  }
  return j;
}

inline InstanceFile instance_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("instance: expected object");
  if (j.value("schema", "") != kSchemaTag)
    throw InputError("instance: missing or unsupported schema tag");
  InstanceFile f;
  if (!j.contains("n") || !j.contains("k") || !j["n"].is_number_integer() ||
      !j["k"].is_number_integer())
    throw InputError("instance: n and k required");
  f.shape = CubeShape{j["n"].get<int>(), j["k"].get<int>()};
  validate_shape(f.shape);
  if (j.contains("matching")) f.matching = jsonio::matching_from_json(j["matching"], f.shape);
  if (j.contains("endpoints"))
    for (const auto& v : j["endpoints"])
      f.endpoints.push_back(jsonio::vertex_from_json(v, f.shape));
  if (j.contains("forbidden"))
    for (const auto& v : j["forbidden"])
      f.forbidden.push_back(jsonio::vertex_from_json(v, f.shape));
  if (j.contains("lemma")) f.lemma = j["lemma"].get<std::string>();
  if (j.contains("split")) {
    const auto& sp = j["split"];
    f.split_d = sp.value("d", 1);
    f.split_rotation = sp.value("rotation", 0);
    f.split_flip = sp.value("flip", false);
    f.split_p = sp.value("p", 0);
    f.split_q = sp.value("q", 0);
  }
  return f;
}

inline nlohmann::json to_json(const CertificateFile& c) {
  nlohmann::json j;
  j["schema"] = kSchemaTag;
  j["kind"] = c.kind;
  nlohmann::json seqs = nlohmann::json::array();
  for (const auto& path : c.sequences) {
    nlohmann::json p = nlohmann::json::array();
    for (const Vertex& v : path) p.push_back(jsonio::vertex_to_json(v));
    seqs.push_back(p);
  }
  j["sequences"] = seqs;
  j["instance"] = to_json(c.instance);
  if (c.trace_ref) j["trace_ref"] = *c.trace_ref;
  j["verified"] = c.verified;
  return j;
}

inline CertificateFile certificate_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("schema", "") != kSchemaTag)
    throw InputError("certificate: missing or unsupported schema tag");
  CertificateFile c;
  c.kind = j.value("kind", "");
  if (c.kind != "cycle" && c.kind != "m-path")
    throw InputError("certificate: kind must be cycle or m-path");
  c.instance = instance_from_json(j.at("instance"));
  if (!j.contains("sequences")) throw InputError("certificate: sequences required");
  for (const auto& p : j["sequences"]) {
    std::vector<Vertex> path;
    for (const auto& v : p) path.push_back(jsonio::vertex_from_json(v, c.instance.shape));
    c.sequences.push_back(std::move(path));
  }
  if (j.contains("trace_ref")) c.trace_ref = j["trace_ref"].get<std::string>();
  c.verified = j.value("verified", false);
  return c;
}

inline void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read file: " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("json parse error: ") + e.what());
  }
}

// DOT rendering of a cycle; vertices cluster by subcube label along the given
// dimension.  Cosmetic, for manual inspection.
inline std::string cycle_to_dot(const CubeShape& s, const std::vector<Vertex>& order,
                                int cluster_dim = 1) {
  std::ostringstream os;
  os << "graph hamcycle {\n";
  auto name = [](const Vertex& v) {
    std::string out = "v";
    for (uint8_t d : v.c) out += "_" + std::to_string(int(d));
    return out;
  };
  for (int label = 0; label < s.k; ++label) {
    os << "  subgraph cluster_" << label << " {\n    label=\"Q[" << label << "]\";\n";
    for (const Vertex& v : order)
      if (v.c[cluster_dim - 1] == label)
        os << "    " << name(v) << " [label=\"" << to_string(v) << "\"];\n";
    os << "  }\n";
  }
  for (size_t i = 0; i < order.size(); ++i) {
    const Vertex& a = order[i];
    const Vertex& b = order[(i + 1) % order.size()];
    os << "  " << name(a) << " -- " << name(b) << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace kcube
