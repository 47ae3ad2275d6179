// liftlab: build, solve and cross-check lift-and-project relaxations of 0/1
// polytopes. Exact rational arithmetic for the polyhedral operators,
// tolerance-controlled projections for the PSD ones.

#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "liftlab/acceptance.hpp"
#include "liftlab/analysis.hpp"
#include "liftlab/bz.hpp"
#include "liftlab/io.hpp"
#include "liftlab/psd.hpp"

using namespace liftlab;

namespace {

RatVector parse_vector(const std::string& csv, int n) {
  RatVector out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(rat_parse(tok));
  if (int(out.size()) != n)
    throw Error("expected " + std::to_string(n) + " comma-separated rationals");
  return out;
}

Instance load_instance(const std::string& spec) {
  if (!spec.empty() && spec[0] == '@') {
    Json j = Json::parse(read_text_file(spec.substr(1)));
    return Instance{instance_from_json(j), std::nullopt};
  }
  return gen_instance(spec);
}

void apply_caps_env(BuildConfig& bc) {
  const char* env = std::getenv("LIFTLAB_CAPS");
  if (!env) return;
  std::stringstream ss(env);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    std::string key = tok.substr(0, eq);
    long val = std::stol(tok.substr(eq + 1));
    if (key == "tiers") bc.cap_tiers = val;
    if (key == "usum") bc.cap_usum = int(val);
  }
}

void emit(const Json& j, const std::string& out_path) {
  std::string payload = j.dump(2) + "\n";
  if (out_path.empty())
    std::cout << payload;
  else
    write_text_file(out_path, payload);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lift-and-project relaxation laboratory"};
  app.require_subcommand(1);

  std::string op_s, instance_s, direction_s, point_s, out_path, cert_path;
  int max_k = 3, jobs = 1;
  bool iterated = false, prune = false, reduce = false, ones = false, csv = false;
  double tol_lin = 1e-8, tol_psd = 1e-9;
  BuildConfig bc;
  apply_caps_env(bc);

  auto add_common = [&](CLI::App* cmd, bool needs_op) {
    if (needs_op) cmd->add_option("--op", op_s, "operator, e.g. SA:2, LS0, BZpp:1")->required();
    cmd->add_option("--instance", instance_s, "named instance or @file.json")->required();
    cmd->add_option("--out", out_path, "write the JSON result to a file");
    cmd->add_option("--cap-tiers", bc.cap_tiers, "tier enumeration cap");
    cmd->add_option("--cap-usum", bc.cap_usum, "cap on |U| in the partition sums");
    cmd->add_option("--tol-lin", tol_lin, "PSD engine linear tolerance");
    cmd->add_option("--tol-psd", tol_psd, "PSD engine eigenvalue tolerance");
    cmd->add_flag("--prune", prune, "apply useless-tier pruning (BZ family)");
    cmd->add_flag("--reduce", reduce, "symmetry-reduce with the instance's canonical group");
    cmd->add_option("--jobs", jobs, "parallel jobs for batch work");
  };

  CLI::App* c_instance = app.add_subcommand("instance", "emit an instance as JSON");
  add_common(c_instance, false);

  CLI::App* c_opt = app.add_subcommand("optimize", "maximize a direction over a relaxation");
  add_common(c_opt, true);
  c_opt->add_option("--direction", direction_s, "comma-separated rationals");
  c_opt->add_flag("--ones", ones, "use the all-ones direction");

  CLI::App* c_mem = app.add_subcommand("membership", "decide membership of a point");
  add_common(c_mem, true);
  c_mem->add_option("--point", point_s, "comma-separated rationals")->required();
  c_mem->add_option("--cert-out", cert_path, "write the certificate JSON on success");

  CLI::App* c_rank = app.add_subcommand("rank", "smallest level reaching the integer hull");
  add_common(c_rank, true);
  c_rank->add_option("--max-k", max_k, "largest level to try");
  c_rank->add_flag("--iterated", iterated, "iterate the operator (LS0/LS only)");

  CLI::App* c_gap = app.add_subcommand("gap", "integrality gap in a direction");
  add_common(c_gap, true);
  c_gap->add_option("--direction", direction_s, "comma-separated rationals");
  c_gap->add_flag("--ones", ones, "use the all-ones direction");
  c_gap->add_flag("--csv", csv, "emit a CSV row instead of JSON");

  CLI::App* c_verify = app.add_subcommand("verify", "check a certificate file");
  add_common(c_verify, true);
  c_verify->add_option("--cert", cert_path, "certificate JSON path")->required();

  CLI::App* c_sizes = app.add_subcommand("sizes", "BZ sizing report");
  add_common(c_sizes, true);

  CLI::App* c_repro = app.add_subcommand("repro", "run a named acceptance criterion");
  std::string repro_id;
  c_repro->add_option("id", repro_id, "criterion id (A1..A11)")->required();
  c_repro->add_option("--jobs", jobs, "parallel jobs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    SDPConfig sdp;
    sdp.tol_lin = tol_lin;
    sdp.tol_psd = tol_psd;
    bc.prune_tiers = prune;

    if (c_repro->parsed()) {
      CriterionResult r = run_acceptance(repro_id, jobs);
      std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " (" << r.seconds
                << "s): " << r.detail << "\n";
      return r.pass ? 0 : 1;
    }

    Instance inst = load_instance(instance_s);
    SymmetryGroup group;
    if (reduce) {
      if (!inst.group) throw Error("no canonical symmetry group for this instance");
      group = *inst.group;
      bc.group = &group;
    }

    if (c_instance->parsed()) {
      emit(instance_to_json(inst.poly), out_path);
      return 0;
    }

    OperatorSpec spec = OperatorSpec::parse(op_s);
    if (c_opt->parsed() || c_gap->parsed()) {
      RatVector c = ones ? RatVector(inst.poly.n, rat(1)) : parse_vector(direction_s, inst.poly.n);
      if (c_opt->parsed()) {
        RelaxValue rv = relax_optimize(spec, inst.poly, c, bc, sdp);
        Json j{{"op", spec.text()}, {"instance", inst.poly.name}, {"feasible", rv.feasible}};
        if (rv.feasible) {
          j["exact"] = rv.exact;
          if (rv.exact)
            j["value"] = rat_str(rv.value);
          else {
            j["value_approx"] = rv.value_f;
            j["linear_part_upper"] = rat_str(rv.lp_upper);
          }
        }
        emit(j, out_path);
        return 0;
      }
      GapReport g = integrality_gap(inst.poly, c, spec);
      if (csv)
        std::cout << gap_table_csv({g});
      else
        emit(gap_report_to_json(g), out_path);
      return 0;
    }
    if (c_mem->parsed()) {
      RatVector x = parse_vector(point_s, inst.poly.n);
      LiftedProblem prob = build_operator(spec, inst.poly, bc);
      Json j{{"op", spec.text()}, {"instance", inst.poly.name}};
      if (spec.is_psd()) {
        SDPSolveResult r = sdp_membership(prob, x, sdp);
        j["member"] = r.status == SDPStatus::FeasibleWithin;
        j["status"] = r.status == SDPStatus::FeasibleWithin     ? "FeasibleWithin"
                      : r.status == SDPStatus::LikelyInfeasible ? "LikelyInfeasible"
                                                                : "Inconclusive";
        j["exact_infeasible"] = r.exact_infeasible;
        j["max_lin_violation"] = r.max_lin_violation;
        j["min_eig"] = r.min_eig;
      } else {
        MembershipResult r = lifted_membership(prob, x);
        j["member"] = r.member;
        if (!r.member) j["farkas_verified"] = r.farkas_checked;
        if (r.member && r.certificate && !cert_path.empty())
          write_text_file(cert_path, certificate_to_json(*r.certificate).dump(2));
      }
      emit(j, out_path);
      return 0;
    }
    if (c_rank->parsed()) {
      RankReport r = rank(spec.kind, inst.poly, max_k, iterated, inst.poly.name);
      emit(rank_report_to_json(r), out_path);
      return 0;
    }
    if (c_verify->parsed()) {
      Certificate cert = certificate_from_json(Json::parse(read_text_file(cert_path)));
      VerifyReport vr = verify_certificate(spec, inst.poly, cert);
      Json j{{"pass", vr.pass}};
      if (!vr.pass) j["first_violation"] = vr.first_violation;
      if (spec.is_psd()) {
        j["min_eig"] = vr.min_eig;
        j["exact_psd"] = vr.exact_psd;
      }
      emit(j, out_path);
      return vr.pass ? 0 : 1;
    }
    if (c_sizes->parsed()) {
      BZSizes s = bz_sizes(spec, inst.poly, bc);
      emit(sizes_to_json(s), out_path);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
