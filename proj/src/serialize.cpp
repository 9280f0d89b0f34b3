#include "sdlab/serialize.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

namespace sdlab {

namespace {

double require_finite_number(const Json& j, const char* what) {
  if (!j.is_number())
    throw spec_error(std::string(what) + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v))
    throw spec_error(std::string(what) + ": value must be finite");
  return v;
}

Complex complex_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 2)
    throw spec_error(std::string(what) + ": expected a [re, im] pair");
  return Complex(require_finite_number(j[0], what),
                 require_finite_number(j[1], what));
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json entries = Json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      entries.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
  return Json{{"n", m.rows()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
    throw spec_error("matrix: expected an object with \"n\" and \"entries\"");
  if (!j["n"].is_number_integer() || j["n"].get<Index>() < 1)
    throw spec_error("matrix: \"n\" must be a positive integer");
  const Index n = j["n"].get<Index>();
  const Json& entries = j["entries"];
  if (!entries.is_array() || static_cast<Index>(entries.size()) != n * n)
    throw spec_error("matrix: \"entries\" must be an array of length n^2 = " +
                     std::to_string(n * n));
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < n; ++k)
      m(i, k) = complex_from_json(entries[i * n + k], "matrix entry");
  return m;
}

Json algebra_to_json(const StarAlgebra& alg) {
  return Json{{"blocks", alg.blocks()}};
}

StarAlgebra algebra_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_array())
    throw spec_error("algebra: expected an object with a \"blocks\" array");
  std::vector<Index> blocks;
  for (const Json& b : j["blocks"]) {
    if (!b.is_number_integer())
      throw spec_error("algebra: block sizes must be integers");
    blocks.push_back(b.get<Index>());
  }
  return build_algebra(blocks);
}

Json supermap_to_json(const SuperMap& m) {
  Json images = Json::array();
  for (const Matrix& im : m.images()) images.push_back(matrix_to_json(im));
  return Json{{"algebra", algebra_to_json(m.domain())},
              {"images", std::move(images)}};
}

SuperMap supermap_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("algebra") || !j.contains("images"))
    throw spec_error(
        "supermap: expected an object with \"algebra\" and \"images\"");
  StarAlgebra alg = algebra_from_json(j["algebra"]);
  const Json& jimages = j["images"];
  if (!jimages.is_array())
    throw spec_error("supermap: \"images\" must be an array");
  std::vector<Matrix> images;
  images.reserve(jimages.size());
  for (const Json& ji : jimages) images.push_back(matrix_from_json(ji));
  return supermap_from_images(std::move(alg), std::move(images));
}

Json element_to_json(const SemidirectElement& u) {
  Json a = Json::array();
  for (Index i = 0; i < u.a.size(); ++i)
    a.push_back(Json::array({u.a(i).real(), u.a(i).imag()}));
  return Json{{"a", std::move(a)}, {"x", matrix_to_json(u.x)}};
}

SemidirectElement element_from_json(const Json& j, const StarAlgebra& alg) {
  if (!j.is_object() || !j.contains("a") || !j.contains("x"))
    throw spec_error("element: expected an object with \"a\" and \"x\"");
  const Json& ja = j["a"];
  if (!ja.is_array() || static_cast<Index>(ja.size()) != alg.dim())
    throw spec_error("element: \"a\" must have length " +
                     std::to_string(alg.dim()));
  SemidirectElement u;
  u.a.resize(alg.dim());
  for (Index i = 0; i < alg.dim(); ++i)
    u.a(i) = complex_from_json(ja[i], "element coefficient");
  u.x = matrix_from_json(j["x"]);
  if (u.x.rows() != alg.space_dim())
    throw spec_error("element: \"x\" must be " +
                     std::to_string(alg.space_dim()) + "x" +
                     std::to_string(alg.space_dim()));
  return u;
}

Json construction_report_to_json(const ConstructionReport& rep) {
  Json j;
  j["P"] = matrix_to_json(rep.P);
  j["Sigma"] = supermap_to_json(rep.Sigma);
  j["D"] = rep.Dmap ? supermap_to_json(*rep.Dmap) : Json(nullptr);
  j["residuals"] = rep.residuals;
  j["singular_values"] = rep.singular_values;
  j["passed"] = rep.passed;
  return j;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* hexdig = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hexdig[h & 0xF];
    h >>= 4;
  }
  return out;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw spec_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Json load_json_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw spec_error(path + ": " + e.what());
  }
}

std::string digest_file(const std::string& path) {
  return fnv1a_hex(read_file(path));
}

std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace sdlab
