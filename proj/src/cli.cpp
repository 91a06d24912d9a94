// Copyright 2026 The semiphi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "semiphi/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "semiphi/error.hpp"
#include "semiphi/fixtures.hpp"

namespace semiphi::cli {

namespace {

using io::Json;

constexpr double kCertifyRel = 1e-8;

struct PairInputs {
  ModuleMap map;
  CPMap phi;
};

using io::ExtensionInputs;

void require_kind(const io::ProblemFile& p, io::ProblemKind kind,
                  const std::string& command) {
  if (p.kind != kind) {
    throw ValidationError("$.kind: command '" + command + "' expects a " +
                          io::to_string(kind) + " problem, got " +
                          io::to_string(p.kind));
  }
}

PairInputs pair_inputs(const io::ProblemFile& p) {
  return {io::module_map_from_json(p.payload.at("Phi"), "$.payload.Phi"),
          io::cpmap_from_json(p.payload.at("phi"), "$.payload.phi")};
}

Json values_json(const ModuleMap& map) {
  Json out = Json::array();
  for (const auto& v : map.values()) out.push_back(io::to_json(v));
  return out;
}

double max_value_deviation(const ModuleMap& a, const ModuleMap& b) {
  double dev = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k) {
    dev = std::max(dev, (a.values()[k] - b.values()[k]).norm());
  }
  return dev;
}

Outcome check_cp(const CPMap& phi, const ToleranceProfile& tol) {
  Outcome o;
  o.report.command = "check-cp";
  if (!phi.is_hermitian_preserving(tol)) {
    o.report.verdict("completely_positive", false, std::nan(""));
    o.report.messages.push_back("phi(E_ji) != phi(E_ij)*: not hermitian preserving");
    o.exit_code = kRefuted;
    return o;
  }
  const CpReport rep = is_completely_positive(phi, tol);
  o.report.verdict("completely_positive", rep.completely_positive, rep.margin);
  o.report.data["choi_min_eigenvalue"] = rep.choi_psd.min_eigenvalue;
  o.report.data["threshold"] = rep.choi_psd.threshold;
  if (!rep.completely_positive) {
    o.report.witnesses.push_back(io::choi_witness_to_json(
        phi, rep.choi_psd.min_eigenvector, rep.choi_psd.min_eigenvalue));
    o.exit_code = kRefuted;
  }
  return o;
}

Outcome stinespring_command(const CPMap& phi, const ToleranceProfile& tol) {
  Outcome o;
  o.report.command = "stinespring";
  try {
    const StinespringDilation d = stinespring(phi, tol);
    o.report.verdict("dilation_certified", true, d.reconstruction_error);
    o.report.data["rank"] = d.rank;
    Json kraus = Json::array();
    for (const auto& k : d.kraus) kraus.push_back(io::to_json(k));
    o.report.data["kraus"] = std::move(kraus);
    o.report.data["isometry"] = io::to_json(d.isometry);
    o.report.data["reconstruction_error"] = d.reconstruction_error;
  } catch (const NotCompletelyPositive& e) {
    Outcome cp = check_cp(phi, tol);
    cp.report.command = "stinespring";
    cp.report.verdict("dilation_certified", false, cp.report.margins["completely_positive"]);
    cp.report.messages.push_back(e.what());
    cp.exit_code = kRefuted;
    return cp;
  }
  return o;
}

Outcome check_phi(const PairInputs& in, const ToleranceProfile& tol) {
  Outcome o;
  o.report.command = "check-phi";
  const PhiMapReport rep = is_phi_map(in.map, in.phi, tol);
  o.report.verdict("phi_map", rep.holds, rep.worst_deviation);
  o.report.data["worst_pair"] = {rep.worst_i, rep.worst_j};
  o.report.data["threshold"] = rep.threshold;
  o.exit_code = rep.holds ? kHolds : kRefuted;
  return o;
}

Outcome check_semiphi(const PairInputs& in, const ToleranceProfile& tol,
                      const std::string& command) {
  Outcome o;
  o.report.command = command;
  const SemiPhiReport rep = is_completely_semi_phi(in.map, in.phi, tol);
  o.report.verdict("completely_semi_phi", rep.holds, rep.margin);
  o.report.data["threshold"] = rep.psd.threshold;
  if (!rep.holds) {
    if (auto w = semiphi_witness(in.map, in.phi, tol)) {
      o.report.witnesses.push_back(io::semiphi_witness_to_json(*w, in.map, in.phi));
      o.report.data["witness_gap"] = w->gap;
    }
    o.exit_code = kRefuted;
  } else if (command == "witness") {
    o.report.messages.push_back("no witness: Phi is completely semi-phi");
  }
  return o;
}

Outcome obstruction_command(const ExtensionInputs& in,
                            const ToleranceProfile& tol) {
  Outcome o;
  o.report.command = "obstruction";
  const ObstructionReport rep =
      phi_extension_obstruction(in.phi, in.map.domain(), in.ambient, tol);
  o.report.verdict("obstruction_vanishes", rep.vanishes, rep.norm);
  o.report.data["norm"] = rep.norm;
  o.report.data["threshold"] = rep.threshold;
  o.report.data["complement_dimension"] = rep.complement.dimension();
  if (!rep.vanishes) {
    o.report.messages.push_back(
        "phi(<F^perp, E>) != 0: a non-degenerate phi-map on F has no phi-map "
        "extension to E");
    o.exit_code = kRefuted;
  }
  return o;
}

void describe_extension(const ExtensionResult& r, io::ReportFile& report) {
  const ExtensionReport& x = r.report;
  report.verdict("certified", x.certified, x.extension_margin);
  double scale = 1.0;
  for (const auto& v : r.original.values()) scale = std::max(scale, v.norm());
  report.verdict("restriction_agrees", x.restriction_error <= kCertifyRel * scale,
                 x.restriction_error);
  report.data["phi_prime"] = values_json(r.phi_prime);
  report.data["result"] = io::to_json(r);
  report.data["input_margin"] = x.input_margin;
  report.data["input_is_phi_map"] = x.input_is_phi_map;
  report.data["lsq_residual"] = x.lsq_residual;
  report.data["contraction_norm"] = x.contraction_norm;
  report.data["extension_margin"] = x.extension_margin;
  report.data["obstruction_vanishes"] = x.obstruction_vanishes;
  report.data["obstruction_norm"] = x.obstruction_norm;
  if (x.parts_checked) {
    report.verdict("complement_annihilated", x.part_i_holds, x.part_i_error);
    report.verdict("inner_products_preserved", x.part_ii_holds, x.part_ii_error);
  }
  for (const auto& n : x.notes) report.messages.push_back(n);
}

Outcome extend_command(const ExtensionInputs& in, const ToleranceProfile& tol) {
  Outcome o;
  o.report.command = "extend";
  const SemiPhiReport pre = is_completely_semi_phi(in.map, in.phi, tol);
  if (!pre.holds) {
    o.report.verdict("completely_semi_phi", false, pre.margin);
    if (auto w = semiphi_witness(in.map, in.phi, tol)) {
      o.report.witnesses.push_back(io::semiphi_witness_to_json(*w, in.map, in.phi));
    }
    o.report.messages.push_back("Phi is not completely semi-phi on F; no extension");
    o.exit_code = kRefuted;
    return o;
  }
  o.report.verdict("completely_semi_phi", true, pre.margin);
  const ExtensionResult r = extend_semi_phi(in.map, in.ambient, in.phi, tol);
  describe_extension(r, o.report);
  return o;
}

Outcome compare_command(const ExtensionInputs& in, const ToleranceProfile& tol) {
  if (!in.gamma) throw ValidationError("$.payload: compare requires \"Gamma\"");
  Outcome o;
  o.report.command = "compare";
  const ExtensionResult r = extend_semi_phi(in.map, in.ambient, in.phi, tol);
  const CompareReport c =
      compare_extensions(*in.gamma, r, in.phi, in.map.domain(), tol);
  o.report.verdict("extensions_equal", c.equal, c.max_deviation);
  o.report.data["threshold"] = c.threshold;
  o.exit_code = c.equal ? kHolds : kRefuted;
  return o;
}

Outcome paulsen_command(const PairInputs& in, const ToleranceProfile& tol,
                        std::uint64_t seed) {
  Outcome o;
  o.report.command = "paulsen";
  const SystemMap sm = block_map(in.map, in.phi, tol);
  SamplingOptions sampling;
  sampling.seed = seed;
  const SystemCpReport cp = is_cp_system_map(sm, tol, sampling);
  o.report.verdict("completely_positive", cp.completely_positive, cp.margin);
  const CornerReport corner = is_corner_preserving(sm, tol);
  o.report.verdict("corner_preserving", corner.preserving,
                   static_cast<double>(corner.violations.size()));
  const Eigen::Index d = sm.domain.layout().size();
  const Eigen::Index c = sm.codomain.layout().size();
  const double unit_dev =
      (sm.apply(ComplexMatrix::Identity(d, d), tol) - ComplexMatrix::Identity(c, c))
          .norm();
  o.report.verdict("unital", sm.is_unital(tol), unit_dev);
  o.report.data["system_dimension"] = sm.domain.dimension();
  o.report.data["layout"] = {sm.domain.layout().top, sm.domain.layout().bottom};
  o.report.data["samples_checked"] = cp.samples_checked;
  o.report.data["worst_sample_ratio"] = cp.worst_sample_ratio;
  o.report.data["sampling_consistent"] = cp.sampling_consistent;
  if (!cp.completely_positive) {
    if (auto w = semiphi_witness(in.map, in.phi, tol)) {
      o.report.witnesses.push_back(io::semiphi_witness_to_json(*w, in.map, in.phi));
    }
    o.exit_code = kRefuted;
  } else if (!cp.sampling_consistent) {
    o.report.messages.push_back("sampling found a non-PSD image");
    o.exit_code = kRefuted;
  }
  return o;
}

// Demos --------------------------------------------------------------------

void expect(Outcome& o, const std::string& name, bool ok, double margin,
            const std::string& detail) {
  o.report.verdict(name, ok, margin);
  if (!ok) {
    o.exit_code = kRefuted;
    o.report.messages.push_back("expected " + name + ": " + detail);
  }
}

Outcome demo_example_2_1(Eigen::Index n, const ToleranceProfile& tol) {
  Outcome o;
  const ExtensionFixture fx = example_2_1(n);
  const PhiMapReport on_f = is_phi_map(fx.map, fx.phi, tol);
  expect(o, "phi_map_on_F", on_f.holds, on_f.worst_deviation,
         "Phi(T, 0) = T preserves inner products");

  const ExtensionResult r = extend_semi_phi(fx.map, fx.e, fx.phi, tol);
  double dev = 0.0;
  for (std::size_t k = 0; k < fx.e.dimension(); ++k) {
    const ComplexMatrix want = fx.e.basis()[k].topRows(n);
    dev = std::max(dev, (r.phi_prime.values()[k] - want).norm());
  }
  expect(o, "extension_is_phi_plus_zero", dev <= kCertifyRel, dev,
         "Phi' = Phi (+) 0 on the basis of E");
  o.report.data["phi_prime"] = values_json(r.phi_prime);

  const PhiMapReport on_e = is_phi_map(r.phi_prime, fx.phi, tol);
  const auto nf = static_cast<std::size_t>(n * n);
  const bool pair_in_complement = on_e.worst_i >= nf && on_e.worst_j >= nf;
  expect(o, "extension_not_phi_map", !on_e.holds && pair_in_complement,
         on_e.worst_deviation, "Phi' fails the phi-map identity on F^perp");
  o.report.data["failing_pair"] = {
      {"basis_indices", {on_e.worst_i, on_e.worst_j}},
      {"x", io::to_json(fx.e.basis()[on_e.worst_i])},
      {"y", io::to_json(fx.e.basis()[on_e.worst_j])}};

  const ObstructionReport obs = phi_extension_obstruction(fx.phi, fx.f, fx.e, tol);
  expect(o, "obstruction_nonzero", !obs.vanishes && obs.norm > 0.1, obs.norm,
         "phi(<F^perp, E>) != 0");

  bool refused = false;
  std::string why;
  try {
    compare_extensions(r.phi_prime, r, fx.phi, fx.f, tol);
  } catch (const PreconditionError& e) {
    refused = true;
    why = e.what();
  }
  expect(o, "uniqueness_precondition_refused", refused, 0.0,
         "no phi-map extension exists to compare against");
  if (refused) o.report.data["refusal"] = why;
  return o;
}

Outcome demo_example_3_4(Eigen::Index h, const ToleranceProfile& tol) {
  Outcome o;
  const CPMap phi = example_3_4_map(h);
  const ComplexMatrix id = phi.apply(ComplexMatrix::Identity(2 * h, 2 * h), tol);
  const double unit_dev = (id - ComplexMatrix::Identity(4 * h, 4 * h)).norm();
  expect(o, "unital", unit_dev <= 1e-12, unit_dev, "identity maps to identity");
  const CpReport cp = is_completely_positive(phi, tol);
  expect(o, "completely_positive", cp.margin >= -1e-10, cp.margin,
         "Choi matrix is PSD");

  std::vector<ComplexMatrix> inputs;
  for (std::size_t u = 0; u < phi.domain().units().size(); ++u) {
    inputs.push_back(phi.domain().unit_matrix(u));
  }
  const CornerReport corner =
      is_corner_preserving(inputs, phi.values(), CornerLayout{h, h},
                           CornerLayout{2 * h, 2 * h}, tol);
  expect(o, "not_corner_preserving", !corner.preserving,
         static_cast<double>(corner.violations.size()),
         "some structural part leaves its counterpart");
  Json violations = Json::array();
  for (const auto& v : corner.violations) {
    violations.push_back({{"input", v.input_index},
                          {"input_part", std::string(to_string(v.input_part))},
                          {"entry", {v.row + 1, v.col + 1}},
                          {"output_part", std::string(to_string(v.output_part))},
                          {"magnitude", v.magnitude}});
  }
  o.report.data["violations"] = std::move(violations);
  return o;
}

Outcome demo_example_3_9(Eigen::Index n, std::uint64_t seed,
                         const ToleranceProfile& tol) {
  Outcome o;
  Rng rng(seed);
  int succeeded = 0;
  double worst = 0.0;
  constexpr int kFixtures = 50;
  for (int i = 0; i < kFixtures; ++i) {
    const ContainmentFixture fx = random_containment_fixture(rng, n);
    const InjectivityResult r =
        injectivity_demo(fx.g, fx.f, fx.embedding, fx.map, fx.phi, tol);
    worst = std::max({worst, r.restriction_error, r.psi_extension_error});
    if (r.success) ++succeeded;
  }
  o.report.data["fixtures"] = kFixtures;
  o.report.data["succeeded"] = succeeded;
  expect(o, "all_extensions_exist", succeeded == kFixtures, worst,
         std::to_string(kFixtures - succeeded) + " fixtures failed");
  expect(o, "restriction_agrees", worst <= kCertifyRel, worst,
         "restriction error within 1e-8");
  return o;
}

Outcome demo_compacts_2_6(Eigen::Index n, const ToleranceProfile& tol) {
  Outcome o;
  const ExtensionFixture fx = compacts_2_6(n);
  const ObstructionReport obs = phi_extension_obstruction(fx.phi, fx.f, fx.e, tol);
  expect(o, "obstruction_vanishes", obs.vanishes, obs.norm,
         "phi kills the second block");
  const ModuleMap canonical = canonical_compacts_extension(fx.map, fx.e, fx.phi, tol);
  const PhiMapReport pm = is_phi_map(canonical, fx.phi, tol);
  expect(o, "phi_plus_zero_is_phi_map", pm.holds, pm.worst_deviation,
         "Phi (+) 0 preserves inner products");
  const ExtensionResult r = extend_semi_phi(fx.map, fx.e, fx.phi, tol);
  const double dev = max_value_deviation(canonical, r.phi_prime);
  expect(o, "equals_engine_output", dev <= kCertifyRel, dev,
         "Phi (+) 0 equals the engine's Phi'");
  o.report.data["phi_prime"] = values_json(r.phi_prime);
  return o;
}

void print_human(const io::ReportFile& r, std::ostream& out) {
  out << r.command << "\n";
  for (const auto& [name, holds] : r.verdicts) {
    out << "  " << name << ": " << (holds ? "yes" : "no");
    const auto it = r.margins.find(name);
    if (it != r.margins.end() && std::isfinite(it->second)) {
      out << " (margin " << std::setprecision(6) << it->second << ")";
    }
    out << "\n";
  }
  for (const auto& key : {"rank", "phi_prime", "failing_pair", "violations",
                          "succeeded", "witness_gap", "norm"}) {
    if (r.data.contains(key)) out << "  " << key << ": " << r.data[key].dump() << "\n";
  }
  if (!r.witnesses.empty()) {
    out << "  witnesses: " << r.witnesses.size() << " (use --json to export)\n";
  }
  for (const auto& m : r.messages) out << "  note: " << m << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ToleranceProfile default_tolerance() {
  ToleranceProfile tol;
  if (const char* env = std::getenv("SEMIPHI_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0') {
      throw ValidationError("SEMIPHI_TOL: not a number: " + std::string(env));
    }
    tol = ToleranceProfile::uniform(v);
    tol.validate();
  }
  return tol;
}

}  // namespace

Outcome run_demo(const std::string& name, Eigen::Index n, std::uint64_t seed,
                 const ToleranceProfile& tol) {
  if (n < 1 || n > kMaxDemoSize) {
    throw ValidationError("--n must lie in [1, " + std::to_string(kMaxDemoSize) + "]");
  }
  Outcome o;
  if (name == "example-2-1") {
    o = demo_example_2_1(n, tol);
  } else if (name == "example-3-4") {
    o = demo_example_3_4(n, tol);
  } else if (name == "example-3-9") {
    o = demo_example_3_9(n, seed, tol);
  } else if (name == "compacts-2-6") {
    o = demo_compacts_2_6(n, tol);
  } else {
    throw ValidationError("unknown demo '" + name + "'");
  }
  o.report.command = "demo " + name;
  o.report.data["n"] = n;
  return o;
}

Outcome run_command(const std::string& command, const io::ProblemFile& problem,
                    const ToleranceProfile& tol, std::uint64_t seed) {
  using io::ProblemKind;
  if (command == "check-cp" || command == "stinespring") {
    require_kind(problem, ProblemKind::kCpMap, command);
    const CPMap phi = io::cpmap_from_json(problem.payload.at("phi"), "$.payload.phi");
    return command == "check-cp" ? check_cp(phi, tol) : stinespring_command(phi, tol);
  }
  if (command == "check-phi" || command == "check-semiphi" ||
      command == "witness" || command == "paulsen") {
    require_kind(problem, ProblemKind::kMapPair, command);
    const PairInputs in = pair_inputs(problem);
    if (command == "check-phi") return check_phi(in, tol);
    if (command == "paulsen") return paulsen_command(in, tol, seed);
    return check_semiphi(in, tol, command);
  }
  if (command == "obstruction" || command == "extend" || command == "compare") {
    require_kind(problem, ProblemKind::kExtensionProblem, command);
    const ExtensionInputs in = io::extension_inputs_from_json(problem.payload, tol);
    if (command == "obstruction") return obstruction_command(in, tol);
    if (command == "extend") return extend_command(in, tol);
    return compare_command(in, tol);
  }
  throw ValidationError("unknown command '" + command + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Hilbert C*-module maps: CP checks, semi-phi maps, extensions", "semiphi"};
  app.require_subcommand(1);
  std::optional<double> tol_flag;
  bool json = false;
  std::uint64_t seed = 0x5eed;
  app.add_option("--tol", tol_flag, "Uniform absolute/relative tolerance");
  app.add_flag("--json", json, "Emit the report as JSON");
  app.add_option("--seed", seed, "Seed for sampling and random fixtures");

  std::string file;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"check-cp", "Complete positivity via the Choi matrix"},
      {"stinespring", "Kraus operators and Stinespring isometry"},
      {"check-phi", "Phi-map identity <Phi(x), Phi(y)> = phi(<x, y>)"},
      {"check-semiphi", "Complete semi-phi property via the Gram comparison"},
      {"witness", "Refuting family for the semi-phi inequality"},
      {"obstruction", "Test phi(<F^perp, E>) = 0"},
      {"extend", "Extend a completely semi-phi map from F to E"},
      {"compare", "Compare a phi-map extension with the engine output"},
      {"paulsen", "Block map on the operator system and its CP verdict"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("file", file, "Problem file (JSON)")->required();
  }
  std::string demo_name;
  Eigen::Index demo_n = 2;
  auto* demo = app.add_subcommand("demo", "Reproduce a worked example");
  demo->add_option("name", demo_name, "Demo name")
      ->required()
      ->check(CLI::IsMember(
          {"example-2-1", "example-3-4", "example-3-9", "compacts-2-6"}));
  demo->add_option("--n", demo_n, "Size parameter (1..6)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    ToleranceProfile tol = default_tolerance();
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    const std::string command = app.get_subcommands().front()->get_name();
    if (command == "demo") {
      if (tol_flag) tol = ToleranceProfile::uniform(*tol_flag);
      tol.validate();
      o = run_demo(demo_name, demo_n, seed, tol);
    } else {
      const io::ProblemFile problem = io::parse_problem(read_file(file));
      if (problem.tolerance) tol = *problem.tolerance;
      if (tol_flag) tol = ToleranceProfile::uniform(*tol_flag);
      tol.validate();
      o = run_command(command, problem, tol, seed);
    }
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    o.report.timings["total_seconds"] = elapsed.count();
    o.report.data["tolerance"] = io::to_json(tol);
    if (json) {
      out << io::to_json(o.report).dump(2) << "\n";
    } else {
      print_human(o.report, out);
    }
    return o.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const io::Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace semiphi::cli
