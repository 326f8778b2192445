#pragma once

#include <string>

#include <json.hpp>

#include "lsg/linalg.hpp"

namespace lsg {

/// Rows of [re, im] pairs.
nlohmann::json matrix_to_json(const CMatrix& m);
/// Reads a d x d matrix written by matrix_to_json; `what` names it in errors.
CMatrix matrix_from_json(const nlohmann::json& rows, Eigen::Index d, const std::string& what);

}  // namespace lsg
