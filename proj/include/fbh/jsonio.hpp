#pragma once

#include <json.hpp>
#include <string>

#include "fbh/linalg.hpp"

namespace fbh {

using Json = nlohmann::json;

// Shared wire format: a complex number is [re, im]; a vector is an array of
// complex numbers; a matrix is a row-major nested array (rows of complex).
// All parsers take the JSON path of the value for precise Schema errors.

Json complex_to_json(const Complex& c);
Json vector_to_json(const CVector& v);
Json matrix_to_json(const CMatrix& m);

Complex complex_from_json(const Json& j, const std::string& path);
CVector vector_from_json(const Json& j, const std::string& path);
CMatrix matrix_from_json(const Json& j, const std::string& path);

// Structural accessors with path-tagged errors.
const Json& member(const Json& j, const std::string& key,
                   const std::string& path);
double number_from_json(const Json& j, const std::string& path);
int int_from_json(const Json& j, const std::string& path);
bool bool_from_json(const Json& j, const std::string& path);
std::string string_from_json(const Json& j, const std::string& path);
void expect_object(const Json& j, const std::string& path);
void expect_array(const Json& j, const std::string& path);

// Reject objects with keys outside `allowed` (catches typos early).
void expect_only_keys(const Json& j, std::initializer_list<const char*> allowed,
                      const std::string& path);

Json parse_json_text(const std::string& text, const std::string& what);

}  // namespace fbh
