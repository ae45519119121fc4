#pragma once

#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "bjo/certify.hpp"
#include "bjo/instances.hpp"
#include "bjo/matrix.hpp"
#include "bjo/numrad.hpp"

namespace bjo {

inline constexpr const char* kToolVersion = "bjo 0.1.0";

struct ProblemFile {
  Mat t;
  std::vector<Mat> w;
  std::optional<double> eps_dec;
  std::optional<double> eps_cert;
  std::optional<double> eps_wit;
};

namespace io_detail {

inline Mat parse_matrix(const nlohmann::json& j, Field field) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw Error(ErrorCode::ParseError, "matrix needs rows/cols/data");
  const std::size_t rows = j.at("rows").get<std::size_t>();
  const std::size_t cols = j.at("cols").get<std::size_t>();
  if (rows < 1 || cols < 1) throw Error(ErrorCode::ParseError, "matrix dimensions must be >= 1");
  const auto& data = j.at("data");
  if (!data.is_array() || data.size() != rows * cols)
    throw Error(ErrorCode::ParseError, "data length must equal rows*cols");
  Mat m(rows, cols, field);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& e = data[i];
    double re = 0.0, im = 0.0;
    if (e.is_number()) {
      re = e.get<double>();
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
      re = e[0].get<double>();
      im = e[1].get<double>();
    } else {
      throw Error(ErrorCode::ParseError, "entries are numbers or [re, im] pairs");
    }
    if (field == Field::Real && im != 0.0)
      throw Error(ErrorCode::ParseError, "real field with nonzero imaginary entry");
    m.data()[i] = Scalar{re, im};
  }
  return m;
}

inline nlohmann::json matrix_json(const Mat& m) {
  nlohmann::json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  nlohmann::json data = nlohmann::json::array();
  for (const Scalar& v : m.data()) {
    if (m.field() == Field::Real)
      data.push_back(v.real());
    else
      data.push_back(nlohmann::json::array({v.real(), v.imag()}));
  }
  j["data"] = std::move(data);
  return j;
}

inline nlohmann::json vec_json(const Vec& x, Field field) {
  nlohmann::json data = nlohmann::json::array();
  for (const Scalar& v : x) {
    if (field == Field::Real)
      data.push_back(v.real());
    else
      data.push_back(nlohmann::json::array({v.real(), v.imag()}));
  }
  return data;
}

}  // namespace io_detail

inline ProblemFile parse_problem_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "problem must be a JSON object");
  if (!j.contains("field") || !j.at("field").is_string())
    throw Error(ErrorCode::ParseError, "missing field tag");
  const std::string f = j.at("field").get<std::string>();
  if (f != "R" && f != "C") throw Error(ErrorCode::ParseError, "field must be \"R\" or \"C\"");
  const Field field = f == "C" ? Field::Complex : Field::Real;

  ProblemFile p;
  if (!j.contains("T")) throw Error(ErrorCode::ParseError, "missing T");
  p.t = io_detail::parse_matrix(j.at("T"), field);
  if (j.contains("W")) {
    if (!j.at("W").is_array()) throw Error(ErrorCode::ParseError, "W must be an array");
    for (const auto& e : j.at("W")) {
      Mat a = io_detail::parse_matrix(e, field);
      if (!p.t.same_shape(a)) throw Error(ErrorCode::ShapeMismatch, "W entry shape differs from T");
      p.w.push_back(std::move(a));
    }
  }
  if (j.contains("tolerances")) {
    const auto& tol = j.at("tolerances");
    if (tol.contains("eps_dec")) p.eps_dec = tol.at("eps_dec").get<double>();
    if (tol.contains("eps_cert")) p.eps_cert = tol.at("eps_cert").get<double>();
    if (tol.contains("eps_wit")) p.eps_wit = tol.at("eps_wit").get<double>();
  }
  return p;
}

inline ProblemFile parse_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return parse_problem_json(j);
}

inline nlohmann::json problem_json(const Mat& t, const std::vector<Mat>& w,
                                   std::optional<std::uint64_t> seed = std::nullopt) {
  nlohmann::json j;
  j["field"] = t.field() == Field::Complex ? "C" : "R";
  j["T"] = io_detail::matrix_json(t);
  nlohmann::json arr = nlohmann::json::array();
  for (const Mat& a : w) arr.push_back(io_detail::matrix_json(a));
  j["W"] = std::move(arr);
  if (seed) j["seed"] = *seed;
  return j;
}

inline nlohmann::json verdict_json(const Mat& t, const Verdict& v) {
  nlohmann::json j;
  j["tool_version"] = kToolVersion;
  j["decision"] = to_string(v.decision);
  j["norm_T"] = v.diagnostics.norm_t;
  j["tolerances"] = {{"eps_dec", v.diagnostics.config.eps_dec},
                     {"eps_cert", v.diagnostics.config.eps_cert},
                     {"eps_wit", v.diagnostics.config.eps_wit_rel},
                     {"eps_gap", v.diagnostics.config.eps_gap}};
  nlohmann::json diag;
  diag["mu_star"] = v.diagnostics.mu_star;
  diag["sep_iterations"] = v.diagnostics.sep_iterations;
  diag["dykstra_iterations"] = v.diagnostics.dykstra_iterations;
  diag["dropped_generators"] = v.diagnostics.dropped_generators;
  diag["messages"] = v.diagnostics.messages;
  if (v.diagnostics.pair_mode)
    diag["compressed_range_contains_zero"] = v.diagnostics.compressed_range_contains_zero;
  j["diagnostics"] = std::move(diag);

  if (v.certificate) {
    nlohmann::json c;
    c["P"] = io_detail::matrix_json(v.certificate->p);
    nlohmann::json dec = nlohmann::json::array();
    for (const auto& [lam, x] : v.certificate->decomposition)
      dec.push_back({{"lambda", lam}, {"x", io_detail::vec_json(x, t.field())}});
    c["decomposition"] = std::move(dec);
    const auto& r = v.certificate->residuals;
    c["residuals"] = {{"trace", r.trace},
                      {"psd", r.psd},
                      {"fixed_point", r.fixed_point},
                      {"trace_conditions", r.trace_conditions},
                      {"decomposition", r.decomposition},
                      {"weight_sum", r.weight_sum},
                      {"support", r.support},
                      {"max", r.max()}};
    j["certificate"] = std::move(c);
  }
  if (v.witness) {
    nlohmann::json wj;
    Vec coeffs(v.witness->coeffs.begin(), v.witness->coeffs.end());
    wj["coeffs"] = io_detail::vec_json(coeffs, t.field());
    wj["step"] = v.witness->step;
    wj["achieved"] = v.witness->achieved;
    j["witness"] = std::move(wj);
  }
  return j;
}

inline void write_json(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace bjo
