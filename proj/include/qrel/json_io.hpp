// JSON schemas for every value the CLI reads or writes. Complex scalars are
// [re, im] pairs, matrices are row-major, and object keys serialize sorted,
// so a canonical dump of the same value is byte-stable.
#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "qrel/classical.hpp"

namespace qrel {

using nlohmann::json;

/// Thrown for structurally invalid input documents (wrong fields, bad
/// shapes, non-finite entries). Malformed JSON surfaces as nlohmann's own
/// parse_error, which carries the byte position.
class schema_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline json matrix_to_json(const Mat& m) {
  json data = json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      data.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline Mat matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw schema_error("matrix: expected object with rows, cols, data");
  const Index rows = j.at("rows").get<Index>();
  const Index cols = j.at("cols").get<Index>();
  if (rows < 1 || cols < 1) throw schema_error("matrix: dimensions must be positive");
  const json& data = j.at("data");
  if (!data.is_array() || static_cast<Index>(data.size()) != rows * cols)
    throw schema_error("matrix: data length must equal rows*cols");
  Mat m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j2 = 0; j2 < cols; ++j2) {
      const json& cell = data.at(static_cast<std::size_t>(i * cols + j2));
      if (!cell.is_array() || cell.size() != 2)
        throw schema_error("matrix: each entry must be a [re, im] pair");
      m(i, j2) = cplx(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  if (!all_finite(m)) throw schema_error("matrix: entries must be finite");
  return m;
}

inline json subspace_to_json(const Subspace& s) {
  json basis = json::array();
  for (const Mat& b : s.basis) basis.push_back(matrix_to_json(b));
  return json{{"domain_dim", s.domain_dim}, {"codomain_dim", s.codomain_dim}, {"basis", std::move(basis)}};
}

/// Loads a subspace and restores the orthonormality invariant by
/// re-orthonormalizing the stored basis (the span is preserved).
inline Subspace subspace_from_json(const json& j, Tolerances tol = {}) {
  if (!j.is_object() || !j.contains("domain_dim") || !j.contains("codomain_dim") || !j.contains("basis"))
    throw schema_error("subspace: expected object with domain_dim, codomain_dim, basis");
  const Index domain = j.at("domain_dim").get<Index>();
  const Index codomain = j.at("codomain_dim").get<Index>();
  std::vector<Mat> vecs;
  for (const json& bj : j.at("basis")) {
    vecs.push_back(matrix_from_json(bj));
    if (vecs.back().rows() != codomain || vecs.back().cols() != domain)
      throw schema_error("subspace: basis element shape does not match the ambient dimensions");
  }
  return orthonormalize(codomain, domain, vecs, tol);
}

inline json algebra_to_json(const Algebra& a) {
  json j;
  if (a.blocks) {
    json blocks = json::array();
    for (const MatrixBlock& b : a.blocks->blocks) blocks.push_back(json{{"n", b.n}, {"m", b.m}});
    j["blocks"] = std::move(blocks);
  } else {
    json gens = json::array();
    for (const Mat& g : a.algebra.basis) gens.push_back(matrix_to_json(g));
    j["dim"] = a.hilbert_dim;
    j["generators"] = std::move(gens);
  }
  if (!a.label.empty()) j["label"] = a.label;
  return j;
}

inline Algebra algebra_from_json(const json& j, Tolerances tol = {}) {
  if (!j.is_object()) throw schema_error("algebra: expected an object");
  Algebra a;
  if (j.contains("blocks")) {
    BlockSpec spec;
    for (const json& bj : j.at("blocks"))
      spec.blocks.push_back(MatrixBlock{bj.at("n").get<Index>(), bj.at("m").get<Index>()});
    if (spec.blocks.empty()) throw schema_error("algebra: blocks must be nonempty");
    a = from_blocks(spec, tol);
  } else if (j.contains("dim") && j.contains("generators")) {
    const Index dim = j.at("dim").get<Index>();
    std::vector<Mat> gens;
    for (const json& gj : j.at("generators")) gens.push_back(matrix_from_json(gj));
    a = from_generators(gens, dim, tol);
  } else {
    throw schema_error("algebra: expected either {blocks} or {dim, generators}");
  }
  if (j.contains("label")) a.label = j.at("label").get<std::string>();
  return a;
}

inline json relation_to_json(const Relation& r) {
  return json{{"source", algebra_to_json(r.source)},
              {"target", algebra_to_json(r.target)},
              {"space", subspace_to_json(r.space)}};
}

/// Validation is recomputed by callers, never trusted from the file.
inline Relation relation_from_json(const json& j, Tolerances tol = {}) {
  if (!j.is_object() || !j.contains("source") || !j.contains("target") || !j.contains("space"))
    throw schema_error("relation: expected object with source, target, space");
  Relation r;
  r.source = algebra_from_json(j.at("source"), tol);
  r.target = algebra_from_json(j.at("target"), tol);
  r.space = subspace_from_json(j.at("space"), tol);
  require_relation_shapes(r);
  return r;
}

inline json hom_to_json(const Homomorphism& pi) {
  json images = json::array();
  for (const Mat& im : pi.images) images.push_back(matrix_to_json(im));
  return json{{"source", algebra_to_json(pi.source)},
              {"target", algebra_to_json(pi.target)},
              {"images", std::move(images)}};
}

/// Images align index-by-index with the basis order the source algebra gets
/// when rebuilt from its serialized form.
inline Homomorphism hom_from_json(const json& j, Tolerances tol = {}) {
  if (!j.is_object() || !j.contains("source") || !j.contains("target") || !j.contains("images"))
    throw schema_error("homomorphism: expected object with source, target, images");
  Homomorphism pi;
  pi.source = algebra_from_json(j.at("source"), tol);
  pi.target = algebra_from_json(j.at("target"), tol);
  for (const json& ij : j.at("images")) pi.images.push_back(matrix_from_json(ij));
  require_hom_shapes(pi);
  return pi;
}

inline json family_to_json(const IsometryFamily& fam) {
  json members = json::array();
  for (const Mat& u : fam.members) members.push_back(matrix_to_json(u));
  return json{{"members", std::move(members)}};
}

inline IsometryFamily family_from_json(const json& j) {
  if (!j.is_object() || !j.contains("members") || !j.at("members").is_array() ||
      j.at("members").empty())
    throw schema_error("family: expected object with a nonempty members array");
  IsometryFamily fam;
  for (const json& mj : j.at("members")) {
    fam.members.push_back(matrix_from_json(mj));
    if (fam.members.back().rows() != fam.members.front().rows() ||
        fam.members.back().cols() != fam.members.front().cols())
      throw schema_error("family: members must share one shape");
  }
  fam.target_dim = fam.members.front().rows();
  fam.source_dim = fam.members.front().cols();
  return fam;
}

inline json isometry_to_json(const DilationIsometry& d) {
  return json{{"index_size", d.index_size}, {"w", matrix_to_json(d.w)}};
}

inline json classical_relation_to_json(const ClassicalRelation& r) {
  json pairs = json::array();
  for (const auto& [y, x] : r.pairs) pairs.push_back(json::array({y, x}));
  return json{{"x_size", r.x_size}, {"y_size", r.y_size}, {"pairs", std::move(pairs)}};
}

inline ClassicalRelation classical_relation_from_json(const json& j) {
  if (!j.is_object() || !j.contains("x_size") || !j.contains("y_size") || !j.contains("pairs"))
    throw schema_error("classical relation: expected object with x_size, y_size, pairs");
  ClassicalRelation r;
  r.x_size = j.at("x_size").get<Index>();
  r.y_size = j.at("y_size").get<Index>();
  for (const json& pj : j.at("pairs")) {
    if (!pj.is_array() || pj.size() != 2) throw schema_error("classical relation: pairs must be [y, x]");
    r.pairs.insert({pj.at(0).get<Index>(), pj.at(1).get<Index>()});
  }
  r.require_valid();
  return r;
}

inline json classical_function_to_json(const ClassicalFunction& f) {
  return json{{"x_size", f.x_size}, {"y_size", f.y_size}, {"map", f.map}};
}

inline ClassicalFunction classical_function_from_json(const json& j) {
  if (!j.is_object() || !j.contains("x_size") || !j.contains("y_size") || !j.contains("map"))
    throw schema_error("classical function: expected object with x_size, y_size, map");
  ClassicalFunction f;
  f.x_size = j.at("x_size").get<Index>();
  f.y_size = j.at("y_size").get<Index>();
  f.map = j.at("map").get<std::vector<Index>>();
  f.require_valid();
  return f;
}

/// Canonical serialization: sorted keys (nlohmann objects are ordered maps)
/// and shortest round-trip float formatting.
inline std::string canonical_dump(const json& j, bool pretty = false) {
  return pretty ? j.dump(2) : j.dump();
}

}  // namespace qrel
