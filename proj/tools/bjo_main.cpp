#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bjo/bjo.hpp"

namespace {

using namespace bjo;

constexpr int kExitOrthogonal = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitNotOrthogonal = 3;
constexpr int kExitInconclusive = 4;

int exit_for_error(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ParseError:
    case ErrorCode::ShapeMismatch: return kExitUsage;
    default: return kExitInvalidInput;
  }
}

CheckConfig make_config(const ProblemFile& p, std::optional<double> tol_dec) {
  CheckConfig cfg;
  if (p.eps_dec) cfg.eps_dec = *p.eps_dec;
  if (p.eps_cert) cfg.eps_cert = *p.eps_cert;
  if (p.eps_wit) cfg.eps_wit_rel = *p.eps_wit;
  if (tol_dec) {
    cfg.eps_dec = *tol_dec;
  } else if (const char* env = std::getenv("BJO_TOL_DEC")) {
    try {
      cfg.eps_dec = std::stod(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "BJO_TOL_DEC is not a number");
    }
  }
  return cfg;
}

void print_verdict(const Mat& t, const Verdict& v) {
  std::cout << "decision: " << to_string(v.decision) << "\n";
  std::cout << "norm_T:   " << v.diagnostics.norm_t << "\n";
  std::cout << "mu_star:  " << v.diagnostics.mu_star << "\n";
  if (v.certificate) {
    std::cout << "certificate: density matrix with " << v.certificate->decomposition.size()
              << " rank-one terms, max residual " << v.certificate->residuals.max() << "\n";
  }
  if (v.witness) {
    std::cout << "witness: step " << v.witness->step << ", norm decrease " << v.witness->achieved
              << "\n";
  }
  for (const auto& msg : v.diagnostics.messages) std::cout << "note: " << msg << "\n";
  (void)t;
}

int finish_check(const Mat& t, const std::vector<Mat>& gens, Verdict v, const std::string& json_out,
                 bool verify) {
  if (verify) {
    if (v.certificate) v.certificate->residuals = validate_certificate(t, gens, *v.certificate);
    if (v.witness && !validate_witness(t, make_subspace(gens, t.field()), *v.witness,
                                       v.diagnostics.config.eps_wit_rel))
      v.diagnostics.messages.push_back("verify: witness failed revalidation");
  }
  print_verdict(t, v);
  if (!json_out.empty()) write_json(verdict_json(t, v), json_out);
  switch (v.decision) {
    case Decision::Orthogonal: return kExitOrthogonal;
    case Decision::NotOrthogonal: return kExitNotOrthogonal;
    case Decision::Inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

int run_check(const std::string& path, const std::string& json_out, bool verify,
              std::optional<double> tol_dec, bool pair) {
  const ProblemFile p = parse_problem(path);
  if (pair && p.w.size() != 1)
    throw Error(ErrorCode::ParseError, "check-pair expects exactly one generator in W");
  const CheckConfig cfg = make_config(p, tol_dec);
  Verdict v = pair ? check_pair(p.t, p.w[0], cfg) : check_subspace(p.t, p.w, cfg);
  return finish_check(p.t, p.w, std::move(v), json_out, verify);
}

int run_distance(const std::string& path, const std::string& json_out, bool span_only,
                 bool mta_only) {
  const ProblemFile p = parse_problem(path);
  if (p.w.size() != 1) throw Error(ErrorCode::ParseError, "distance expects exactly one matrix in W");
  const Mat& a = p.w[0];

  nlohmann::json j;
  j["tool_version"] = kToolVersion;
  if (mta_only) {
    const double m = mta_sup(p.t, a);  // throws SingularA -> exit 2
    std::cout << "mta_sup: " << m << "\n";
    j["mta_sup"] = m;
  } else if (span_only) {
    auto [d, lam] = dist_to_span(p.t, a);
    std::cout << "dist: " << d << "\n";
    std::cout << "lambda: " << lam.real() << (lam.imag() < 0 ? " - " : " + ")
              << std::abs(lam.imag()) << "i\n";
    j["dist"] = d;
    j["lambda"] = {lam.real(), lam.imag()};
  } else {
    const DistanceReport rep = distance_report(p.t, a);
    std::cout << "dist:         " << rep.dist << "\n";
    if (rep.mta_available) std::cout << "mta_sup:      " << rep.mta << "\n";
    std::cout << "trace_bound:  " << rep.trace_bound << "\n";
    if (rep.column_bound_available) std::cout << "column_bound: " << rep.column_bound << "\n";
    j["dist"] = rep.dist;
    j["lambda"] = {rep.argmin_lambda.real(), rep.argmin_lambda.imag()};
    if (rep.mta_available) j["mta_sup"] = rep.mta;
    j["trace_bound"] = rep.trace_bound;
    if (rep.column_bound_available) j["column_bound"] = rep.column_bound;
  }
  if (!json_out.empty()) write_json(j, json_out);
  return 0;
}

int run_numrad(const std::string& path, const std::string& json_out) {
  const ProblemFile p = parse_problem(path);
  const SubspaceBasis w = make_subspace(p.w, p.t.field());
  const WOrthoResult r = worth_check(p.t, w);
  std::cout << "decision: " << to_string(r.decision) << "\n";
  std::cout << "w(T):     " << r.w << "\n";
  nlohmann::json j;
  j["tool_version"] = kToolVersion;
  j["decision"] = to_string(r.decision);
  j["w"] = r.w;
  if (r.certificate) {
    const WOrthoResiduals res = validate_worth_certificate(p.t, p.w, *r.certificate);
    std::cout << "certificate: " << r.certificate->points.size()
              << " attainment points, residual " << res.certificate << "\n";
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& pt : r.certificate->points)
      pts.push_back({{"lambda", pt.lambda},
                     {"x", io_detail::vec_json(pt.x, p.t.field())},
                     {"value", {pt.value.real(), pt.value.imag()}}});
    j["certificate"] = {{"points", std::move(pts)},
                        {"residuals", {{"certificate", res.certificate},
                                       {"attainment", res.attainment}}}};
  } else {
    std::cout << "oracle_min: " << r.oracle_min << "\n";
    j["oracle_min"] = r.oracle_min;
  }
  if (!json_out.empty()) write_json(j, json_out);
  switch (r.decision) {
    case WOrthoDecision::CertifiedOrthogonal: return kExitOrthogonal;
    case WOrthoDecision::OracleOrthogonal: return kExitInconclusive;
    case WOrthoDecision::NotOrthogonal: return kExitNotOrthogonal;
  }
  return kExitInconclusive;
}

int run_gen(const std::string& label, std::size_t n, std::size_t k, std::size_t m,
            const std::string& field_str, std::uint64_t seed, const std::string& json_out) {
  InstanceSpec spec;
  spec.n = n;
  spec.k = std::min(k, n);
  spec.m = m;
  spec.field = field_str == "R" ? Field::Real : Field::Complex;
  spec.seed = seed;
  if (label == "orthogonal")
    spec.label = InstanceLabel::OrthogonalByConstruction;
  else if (label == "contains-t")
    spec.label = InstanceLabel::ContainsT;
  else if (label == "random")
    spec.label = InstanceLabel::OracleLabeled;
  else
    throw Error(ErrorCode::ParseError, "label must be orthogonal, contains-t, or random");

  const Instance inst = generate(spec);
  const nlohmann::json j = problem_json(inst.t, inst.generators, seed);
  if (json_out.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json(j, json_out);
  return 0;
}

int run_fuzz(int trials, std::uint64_t seed) {
  int agree = 0, contradict = 0, inconclusive = 0;
  // Agreement matrix rows: oracle verdict; columns: certify verdict.
  long matrix[2][3] = {{0, 0, 0}, {0, 0, 0}};
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t s = seed ^ static_cast<std::uint64_t>(trial);
    Rng shape(s * 0x9E3779B97F4A7C15ULL + 1);
    InstanceSpec spec;
    spec.n = 2 + shape.next_u64() % 5;
    spec.m = 1 + shape.next_u64() % 3;
    spec.k = 1 + shape.next_u64() % spec.n;
    spec.field = shape.next_u64() % 2 ? Field::Complex : Field::Real;
    spec.seed = s;
    switch (shape.next_u64() % 3) {
      case 0: spec.label = InstanceLabel::OrthogonalByConstruction; break;
      case 1: spec.label = InstanceLabel::ContainsT; break;
      default: spec.label = InstanceLabel::OracleLabeled; break;
    }
    const Instance inst = generate(spec);
    const SubspaceBasis w = make_subspace(inst.generators, spec.field);
    const Verdict v = check_subspace(inst.t, w);
    const OracleDecision od = decide_by_oracle(inst.t, w);
    const int row = od == OracleDecision::Orthogonal ? 0 : 1;
    const int col = v.decision == Decision::Orthogonal
                        ? 0
                        : (v.decision == Decision::NotOrthogonal ? 1 : 2);
    ++matrix[row][col];
    if (col == 2)
      ++inconclusive;
    else if (row == col)
      ++agree;
    else
      ++contradict;
  }
  std::cout << "trials: " << trials << "\n";
  std::cout << "agreement matrix (rows: oracle O/N, cols: certify O/N/I):\n";
  for (int r = 0; r < 2; ++r)
    std::cout << "  " << matrix[r][0] << " " << matrix[r][1] << " " << matrix[r][2] << "\n";
  std::cout << "agree: " << agree << ", contradict: " << contradict
            << ", inconclusive: " << inconclusive << "\n";
  return contradict == 0 ? 0 : kExitInconclusive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bjo: Birkhoff-James orthogonality of matrices to matrix subspaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", bjo::kToolVersion);

  std::string path, json_out, label = "random", field_str = "C";
  bool verify = false, span_only = false, mta_only = false;
  std::optional<double> tol_dec;
  std::size_t n = 3, k = 1, m = 1;
  std::uint64_t seed = 0;
  int trials = 100;

  auto* check_sub = app.add_subcommand("check-subspace", "Decide T perp_B span(W)");
  check_sub->add_option("file", path)->required();
  check_sub->add_option("--json", json_out);
  check_sub->add_flag("--verify", verify);
  check_sub->add_option("--tol-dec", tol_dec);

  auto* check_pair_cmd = app.add_subcommand("check-pair", "Decide T perp_B A for a single A");
  check_pair_cmd->add_option("file", path)->required();
  check_pair_cmd->add_option("--json", json_out);
  check_pair_cmd->add_flag("--verify", verify);
  check_pair_cmd->add_option("--tol-dec", tol_dec);

  auto* dist = app.add_subcommand("distance", "Distance from T to Span{A} with lower bounds");
  dist->add_option("file", path)->required();
  dist->add_option("--json", json_out);
  dist->add_flag("--span", span_only, "only the distance and minimizing scalar");
  dist->add_flag("--mta", mta_only, "only the residual supremum (A must be bounded below)");

  auto* numrad = app.add_subcommand("numrad-check", "Numerical-radius orthogonality");
  numrad->add_option("file", path)->required();
  numrad->add_option("--json", json_out);

  auto* gen = app.add_subcommand("gen", "Generate a reproducible instance");
  gen->add_option("--label", label, "orthogonal | contains-t | random");
  gen->add_option("--n", n);
  gen->add_option("--k", k);
  gen->add_option("--m", m);
  gen->add_option("--field", field_str)->check(CLI::IsMember({"R", "C"}));
  gen->add_option("--seed", seed);
  gen->add_option("--json", json_out);

  auto* fuzz = app.add_subcommand("fuzz", "Cross-validate certify against the oracle");
  fuzz->add_option("--trials", trials);
  fuzz->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (check_sub->parsed()) return run_check(path, json_out, verify, tol_dec, false);
    if (check_pair_cmd->parsed()) return run_check(path, json_out, verify, tol_dec, true);
    if (dist->parsed()) return run_distance(path, json_out, span_only, mta_only);
    if (numrad->parsed()) return run_numrad(path, json_out);
    if (gen->parsed()) return run_gen(label, n, k, m, field_str, seed, json_out);
    if (fuzz->parsed()) return run_fuzz(trials, seed);
  } catch (const bjo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for_error(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
