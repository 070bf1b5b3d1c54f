#include "plc/json_io.hpp"

#include <cmath>
#include <fstream>

namespace plc {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw ConfigInvalid("json: " + msg);
}

RMat real_part_from(const Json& j, int rows, int cols, const char* key) {
  require(j.contains(key), std::string("missing field '") + key + "'");
  const Json& arr = j.at(key);
  require(arr.is_array() && static_cast<int>(arr.size()) == rows, "bad row count");
  RMat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Json& row = arr.at(static_cast<size_t>(r));
    require(row.is_array() && static_cast<int>(row.size()) == cols, "bad column count");
    for (int c = 0; c < cols; ++c) {
      require(row.at(static_cast<size_t>(c)).is_number(), "non-numeric entry");
      double v = row.at(static_cast<size_t>(c)).get<double>();
      require(std::isfinite(v), "non-finite entry");
      m(r, c) = v;
    }
  }
  return m;
}

Json real_matrix_to_json(const RMat& m) {
  Json arr = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    arr.push_back(row);
  }
  return arr;
}

}  // namespace

Json matrix_to_json(const CMat& m) {
  Json j;
  j["dim"] = m.rows();
  j["re"] = real_matrix_to_json(m.real());
  j["im"] = real_matrix_to_json(m.imag());
  return j;
}

CMat matrix_from_json(const Json& j) {
  require(j.is_object() && j.contains("dim"), "matrix object with 'dim' expected");
  int n = j.at("dim").get<int>();
  require(n >= 1 && n <= 64, "dim out of range");
  RMat re = real_part_from(j, n, n, "re");
  RMat im = real_part_from(j, n, n, "im");
  return re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
}

Json rvec_to_json(const RVec& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

RVec rvec_from_json(const Json& j) {
  require(j.is_array(), "real vector array expected");
  RVec v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    require(j.at(i).is_number(), "non-numeric vector entry");
    double x = j.at(i).get<double>();
    require(std::isfinite(x), "non-finite vector entry");
    v(static_cast<Eigen::Index>(i)) = x;
  }
  return v;
}

Json cartan_form_to_json(const CartanForm& u) { return real_matrix_to_json(u.form()); }

CartanForm cartan_form_from_json(const Json& j, double* discarded) {
  require(j.is_array() && !j.empty(), "Cartan form: square real array expected");
  int r = static_cast<int>(j.size());
  RMat m = real_part_from(Json{{"m", j}}, r, r, "m");
  CartanForm u(m);
  if (discarded) *discarded = u.discarded_symmetric_mass();
  return u;
}

Json coalgebra_to_json(const CoalgebraVector& a) { return matrix_to_json(a.alpha()); }

CoalgebraVector coalgebra_from_json(const Json& j) {
  return CoalgebraVector(matrix_from_json(j));
}

Json dual_element_to_json(const DualGroupElement& a, double t) {
  Json j;
  j["N"] = matrix_to_json(a.nilpotent());
  j["cartan_coord"] = rvec_to_json(a.cartan_chart());
  j["u"] = cartan_form_to_json(a.cartan_form());
  j["t"] = t;
  return j;
}

DualGroupElement dual_element_from_json(const Json& j, double* t_out) {
  require(j.is_object(), "dual element object expected");
  CMat n = matrix_from_json(j.at("N"));
  RVec chart = rvec_from_json(j.at("cartan_coord"));
  CartanForm u = cartan_form_from_json(j.at("u"));
  if (t_out) {
    require(j.contains("t") && j.at("t").is_number(), "missing 't'");
    *t_out = j.at("t").get<double>();
  }
  return DualGroupElement(std::move(n), std::move(chart), std::move(u));
}

Json special_element_to_json(const SpecialDualElement& a) {
  Json j;
  j["body"] = matrix_to_json(a.point.body());
  j["w"] = cartan_form_to_json(a.w);
  return j;
}

SpecialDualElement special_element_from_json(const Json& j) {
  require(j.is_object(), "special element object expected");
  CMat body = matrix_from_json(j.at("body"));
  CartanForm w = cartan_form_from_json(j.at("w"));
  return e_w_map(body, w);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigInvalid("JSON parse failure in " + path + ": " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigInvalid("cannot open file for writing: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace plc
