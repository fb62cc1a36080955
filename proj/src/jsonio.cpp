#include "fbh/jsonio.hpp"

#include <cmath>

namespace fbh {

Json complex_to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

Json vector_to_json(const CVector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(complex_to_json(v(i)));
  return arr;
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Complex complex_from_json(const Json& j, const std::string& path) {
  require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
          Err::Schema, path + ": expected [re, im]");
  const Complex c{j[0].get<double>(), j[1].get<double>()};
  require(std::isfinite(c.real()) && std::isfinite(c.imag()), Err::NonFinite,
          path + ": non-finite value");
  return c;
}

CVector vector_from_json(const Json& j, const std::string& path) {
  require(j.is_array(), Err::Schema, path + ": expected an array of [re, im]");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) =
        complex_from_json(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

CMatrix matrix_from_json(const Json& j, const std::string& path) {
  require(j.is_array() && !j.empty(), Err::Schema,
          path + ": expected a non-empty array of rows");
  const size_t rows = j.size();
  size_t cols = 0;
  CMatrix m;
  for (size_t i = 0; i < rows; ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    require(j[i].is_array(), Err::Schema, rp + ": expected a row array");
    if (i == 0) {
      cols = j[i].size();
      require(cols >= 1, Err::Schema, rp + ": empty row");
      m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    }
    require(j[i].size() == cols, Err::Schema,
            rp + ": ragged matrix (row length " + std::to_string(j[i].size()) +
                ", expected " + std::to_string(cols) + ")");
    for (size_t k = 0; k < cols; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          complex_from_json(j[i][k], rp + "[" + std::to_string(k) + "]");
  }
  return m;
}

const Json& member(const Json& j, const std::string& key, const std::string& path) {
  expect_object(j, path);
  auto it = j.find(key);
  require(it != j.end(), Err::Schema, path + ": missing key \"" + key + "\"");
  return *it;
}

double number_from_json(const Json& j, const std::string& path) {
  require(j.is_number(), Err::Schema, path + ": expected a number");
  const double x = j.get<double>();
  require(std::isfinite(x), Err::NonFinite, path + ": non-finite value");
  return x;
}

int int_from_json(const Json& j, const std::string& path) {
  require(j.is_number_integer(), Err::Schema, path + ": expected an integer");
  return j.get<int>();
}

bool bool_from_json(const Json& j, const std::string& path) {
  require(j.is_boolean(), Err::Schema, path + ": expected a boolean");
  return j.get<bool>();
}

std::string string_from_json(const Json& j, const std::string& path) {
  require(j.is_string(), Err::Schema, path + ": expected a string");
  return j.get<std::string>();
}

void expect_object(const Json& j, const std::string& path) {
  require(j.is_object(), Err::Schema, path + ": expected an object");
}

void expect_array(const Json& j, const std::string& path) {
  require(j.is_array(), Err::Schema, path + ": expected an array");
}

void expect_only_keys(const Json& j, std::initializer_list<const char*> allowed,
                      const std::string& path) {
  expect_object(j, path);
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) { ok = true; break; }
    require(ok, Err::Schema, path + ": unknown key \"" + it.key() + "\"");
  }
}

Json parse_json_text(const std::string& text, const std::string& what) {
  Json j = Json::parse(text, nullptr, false);
  require(!j.is_discarded(), Err::Schema, what + ": invalid JSON");
  return j;
}

}  // namespace fbh
