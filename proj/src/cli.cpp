#include "ballchain/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "CLI11.hpp"

#include "ballchain/builtin.hpp"
#include "ballchain/json_io.hpp"
#include "ballchain/parallel.hpp"
#include "ballchain/suite.hpp"
#include "ballchain/version.hpp"

namespace ballchain {

namespace {

std::vector<double> parse_radii(const std::string& spec) {
  if (spec.empty()) return default_radii();
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const double lo = std::stod(spec.substr(0, colon));
    const double hi = std::stod(spec.substr(colon + 1));
    if (!(lo > 0.0 && lo <= hi && hi < 1.0))
      throw Error(Errc::usage_error, "radii range must satisfy 0 < lo <= hi < 1");
    std::vector<double> out;
    for (double r : default_radii())
      if (r > lo && r < hi) out.push_back(r);
    out.insert(out.begin(), lo);
    if (hi > lo) out.push_back(hi);
    return out;
  }
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    auto comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    out.push_back(std::stod(spec.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

CVector parse_point(const std::string& spec, int expected_dim) {
  CVector z;
  if (!spec.empty() && spec.front() == '[') {
    const Json j = Json::parse(spec);
    for (const Json& e : j) {
      if (e.is_array())
        z.push_back(cdouble{e.at(0).get<double>(), e.at(1).get<double>()});
      else if (e.is_object())
        z.push_back(cdouble{e.value("re", 0.0), e.value("im", 0.0)});
      else
        z.push_back(cdouble{e.get<double>(), 0.0});
    }
  } else {
    std::size_t pos = 0;
    while (pos < spec.size()) {
      auto comma = spec.find(',', pos);
      if (comma == std::string::npos) comma = spec.size();
      z.push_back(cdouble{std::stod(spec.substr(pos, comma - pos)), 0.0});
      pos = comma + 1;
    }
  }
  if (expected_dim > 0 && static_cast<int>(z.size()) != expected_dim)
    throw Error(Errc::usage_error, "point has wrong dimension");
  return z;
}

Operator load_operator(const std::string& file, const std::string& name) {
  if (!name.empty()) return builtin::get_operator(name);
  if (!file.empty()) return operator_from_json(read_json_file(file));
  throw Error(Errc::usage_error, "need --in FILE or --builtin NAME");
}

PolyMap load_map(const std::string& file, const std::string& name) {
  if (!name.empty()) return builtin::get_map(name);
  if (!file.empty()) return polymap_from_json(read_json_file(file));
  throw Error(Errc::usage_error, "need --map FILE or --builtin NAME");
}

HerglotzField load_field(const std::string& file, const std::string& name) {
  if (!name.empty()) return builtin::get_field(name);
  if (!file.empty()) return field_from_json(read_json_file(file));
  throw Error(Errc::usage_error, "need --field FILE or --builtin NAME");
}

std::vector<AutomorphismWord> load_candidates(const std::string& spec) {
  // "repeat:<word>:<count>", "perturb:<word>:<scale>:<count>", or a file.
  if (spec.rfind("repeat:", 0) == 0) {
    const auto rest = spec.substr(7);
    const auto colon = rest.rfind(':');
    if (colon == std::string::npos)
      throw Error(Errc::usage_error, "repeat spec is repeat:<word>:<count>");
    return builtin::repeat_candidates(builtin::get_word(rest.substr(0, colon)),
                                      std::stoi(rest.substr(colon + 1)));
  }
  if (spec.rfind("truncate:", 0) == 0) {
    const auto rest = spec.substr(9);
    const auto colon = rest.rfind(':');
    if (colon == std::string::npos)
      throw Error(Errc::usage_error, "truncate spec is truncate:<word>:<count>");
    return builtin::truncated_candidates(builtin::get_word(rest.substr(0, colon)),
                                         std::stoi(rest.substr(colon + 1)));
  }
  if (spec.rfind("perturb:", 0) == 0) {
    const auto rest = spec.substr(8);
    const auto c1 = rest.find(':');
    const auto c2 = rest.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw Error(Errc::usage_error, "perturb spec is perturb:<word>:<scale>:<count>");
    return builtin::perturbed_candidates(builtin::get_word(rest.substr(0, c1)),
                                         std::stod(rest.substr(c1 + 1, c2 - c1 - 1)),
                                         std::stoi(rest.substr(c2 + 1)), 20260810);
  }
  return words_from_json(read_json_file(spec));
}

struct Envelope {
  Json config = Json::object();
  Json result = Json::object();
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  Json finish(const std::string& command, std::uint64_t seed) const {
    Json j = Json::object();
    j["tool"] = "ballchain";
    j["version"] = kVersion;
    j["command"] = command;
    j["config"] = config;
    j["seed"] = seed;
    j["jobs"] = effective_jobs();
    j["result"] = result;
    j["wall_time_ms"] = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return j;
  }
};

void emit(const Json& envelope, const std::string& out_path, std::ostream& out) {
  if (!out_path.empty())
    write_json_file(out_path, envelope);
  else
    out << envelope.dump(2) << "\n";
}

void print_kv(std::ostream& out, const std::string& key, const std::string& value) {
  out << "  " << key;
  for (std::size_t i = key.size(); i < 22; ++i) out << ' ';
  out << value << "\n";
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

GRegion region_for(const std::string& criterion, double alpha) {
  if (criterion == "gstar-halfplane") return GRegion::half_plane();
  if (criterion == "gstar-disk") return GRegion::disk_of_order(alpha);
  if (criterion == "gstar-sector") return GRegion::sector_of_order(alpha);
  throw Error(Errc::usage_error, "unknown g-star region: " + criterion);
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ballchain: operator profiles, ball-criterion testing, Loewner flows "
               "and dilation approximation runs"};
  app.require_subcommand(1);
  app.fallthrough(true);  // allow the global --jobs after a subcommand name

  int jobs = 0;
  app.add_option("--jobs", jobs, "worker threads (default: BALLCHAIN_JOBS or all cores)");

  // operator
  auto* op_cmd = app.add_subcommand("operator", "profile an operator and its resonances");
  std::string op_in, op_builtin, op_out;
  double op_tol = kResTol;
  op_cmd->add_option("--in", op_in, "operator JSON file");
  op_cmd->add_option("--builtin", op_builtin, "builtin operator name");
  op_cmd->add_option("--out", op_out, "report path");
  op_cmd->add_option("--tol", op_tol, "resonance tolerance");

  // map-test
  auto* mt_cmd = app.add_subcommand("map-test", "run a membership criterion on a map");
  std::string mt_map, mt_builtin, mt_criterion, mt_op_in, mt_op_builtin, mt_radii, mt_out;
  double mt_alpha = 0.5, mt_tol = kCritTol;
  int mt_per_sphere = 500, mt_tangent = -1;
  std::uint64_t mt_seed = 7;
  mt_cmd->add_option("--map", mt_map, "map JSON file");
  mt_cmd->add_option("--builtin", mt_builtin, "builtin map name");
  mt_cmd->add_option("--criterion", mt_criterion,
                     "caratheodory|growth|spirallike|starlike|gstar-halfplane|"
                     "gstar-disk|gstar-sector|convex|q|qtilde|ktilde")
      ->required();
  mt_cmd->add_option("--operator", mt_op_in, "operator JSON (caratheodory/growth/spirallike)");
  mt_cmd->add_option("--operator-builtin", mt_op_builtin, "builtin operator name");
  mt_cmd->add_option("--alpha", mt_alpha, "order parameter for gstar-disk/gstar-sector");
  mt_cmd->add_option("--radii", mt_radii, "radii list a,b,c or range lo:hi");
  mt_cmd->add_option("--per-sphere", mt_per_sphere, "points per sphere");
  mt_cmd->add_option("--tangent", mt_tangent, "tangent pairs per sphere");
  mt_cmd->add_option("--seed", mt_seed, "sample seed");
  mt_cmd->add_option("--tol", mt_tol, "fail/boundary margin band (default 1e-10)");
  mt_cmd->add_option("--out", mt_out, "report path");

  // flow
  auto* fl_cmd = app.add_subcommand("flow", "integrate the Loewner transition map");
  std::string fl_field, fl_builtin, fl_z, fl_out;
  double fl_s = 0.0, fl_t = 1.0, fl_tol = 1e-10;
  fl_cmd->add_option("--field", fl_field, "field JSON file");
  fl_cmd->add_option("--builtin", fl_builtin, "builtin field name");
  fl_cmd->add_option("--z", fl_z, "initial point: reals a,b or JSON array")->required();
  fl_cmd->add_option("--s", fl_s, "start time");
  fl_cmd->add_option("--t", fl_t, "end time")->required();
  fl_cmd->add_option("--tol", fl_tol, "local error tolerance");
  fl_cmd->add_option("--out", fl_out, "report path");

  // reach
  auto* rc_cmd = app.add_subcommand("reach", "evaluate the time-T reachable element");
  std::string rc_field, rc_builtin, rc_z, rc_out;
  double rc_tol = 1e-10;
  rc_cmd->add_option("--field", rc_field, "field JSON file");
  rc_cmd->add_option("--builtin", rc_builtin, "builtin field name");
  rc_cmd->add_option("--z", rc_z, "evaluation point")->required();
  rc_cmd->add_option("--tol", rc_tol, "flow tolerance");
  rc_cmd->add_option("--out", rc_out, "report path");

  // approx
  auto* ap_cmd = app.add_subcommand("approx", "run a dilation approximation schedule");
  std::string ap_target, ap_builtin, ap_cands, ap_criterion, ap_op_in, ap_op_builtin;
  std::string ap_schedule = "default", ap_test_radii = "0.25,0.5,0.75,0.9", ap_out, ap_radii;
  double ap_alpha = 0.5;
  int ap_per_sphere = 400;
  std::uint64_t ap_seed = 7;
  ap_cmd->add_option("--target", ap_target, "target map JSON file");
  ap_cmd->add_option("--builtin", ap_builtin, "builtin target map name");
  ap_cmd->add_option("--candidates", ap_cands,
                     "words JSON file, repeat:<word>:<n>, truncate:<word>:<n>, or perturb:<word>:<scale>:<n>")
      ->required();
  ap_cmd->add_option("--criterion", ap_criterion,
                     "spirallike|starlike|gstar-halfplane|gstar-disk|gstar-sector|"
                     "convex|q|qtilde|ktilde")
      ->required();
  ap_cmd->add_option("--operator", ap_op_in, "operator JSON for spirallike");
  ap_cmd->add_option("--operator-builtin", ap_op_builtin, "builtin operator name");
  ap_cmd->add_option("--alpha", ap_alpha, "g-star order parameter");
  ap_cmd->add_option("--schedule", ap_schedule, "default or a radii list r1,r2,...");
  ap_cmd->add_option("--test-radii", ap_test_radii, "distance evaluation radii");
  ap_cmd->add_option("--radii", ap_radii, "sample radii");
  ap_cmd->add_option("--per-sphere", ap_per_sphere, "points per sphere");
  ap_cmd->add_option("--seed", ap_seed, "sample seed");
  ap_cmd->add_option("--out", ap_out, "report path");

  // suite
  auto* su_cmd = app.add_subcommand("suite", "run the named verification checks");
  std::string su_builtin = "paper-examples", su_filter, su_out;
  su_cmd->add_option("--builtin", su_builtin, "check bundle (paper-examples)");
  su_cmd->add_option("--filter", su_filter, "run only checks whose name contains this");
  su_cmd->add_option("--out", su_out, "report path");

  std::vector<std::string> argv_copy = args;
  try {
    std::vector<const char*> argv;
    argv.push_back("ballchain");
    for (const std::string& a : argv_copy) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  if (jobs > 0) set_jobs(jobs);

  try {
    if (*op_cmd) {
      Envelope env;
      const Operator a = load_operator(op_in, op_builtin);
      env.config["in"] = op_in.empty() ? op_builtin : op_in;
      env.config["tol"] = op_tol;
      const OperatorProfile p = operator_profile(a);
      ResonanceVerdict v;
      if (a.exact_eigenvalues)
        v = detect_resonance_exact(*a.exact_eigenvalues);
      else
        v = detect_resonance(p.eigenvalues, op_tol);
      env.result["operator"] = operator_to_json(a);
      env.result["profile"] = profile_to_json(p);
      env.result["resonance"] = resonance_to_json(v);
      out << "operator profile\n";
      print_kv(out, "m", fmt(p.m));
      print_kv(out, "k", fmt(p.k));
      print_kv(out, "k-", fmt(p.kminus));
      print_kv(out, "k+", fmt(p.kplus));
      print_kv(out, "numerical radius", fmt(p.vr));
      print_kv(out, "operator norm", fmt(p.opnorm));
      print_kv(out, "resonance", resonance_kind_name(v.kind));
      print_kv(out, "real resonances", v.real_resonant ? "yes" : "no");
      emit(env.finish("operator", 0), op_out, out);
      return 0;
    }

    if (*mt_cmd) {
      Envelope env;
      const PolyMap f = load_map(mt_map, mt_builtin);
      const std::vector<double> radii = parse_radii(mt_radii);
      const bool needs_tangent = mt_criterion == "convex";
      const int tangent = mt_tangent >= 0 ? mt_tangent : (needs_tangent ? mt_per_sphere : 0);
      env.config["map"] = mt_map.empty() ? mt_builtin : mt_map;
      env.config["criterion"] = mt_criterion;
      env.config["radii"] = radii;
      env.config["per_sphere"] = mt_per_sphere;
      env.config["tangent"] = tangent;

      CriterionReport report;
      if (mt_criterion == "qtilde" || mt_criterion == "ktilde") {
        report = mt_criterion == "qtilde" ? qtilde_test(f) : ktilde_test(f);
      } else {
        const BallSample sample =
            make_sample(f.dim(), radii, mt_per_sphere, tangent, mt_seed);
        if (mt_criterion == "caratheodory" || mt_criterion == "growth" ||
            mt_criterion == "spirallike") {
          const Operator a = load_operator(mt_op_in, mt_op_builtin);
          if (mt_criterion == "caratheodory")
            report = caratheodory_test(f, a, sample);
          else if (mt_criterion == "growth")
            report = verify_growth_bounds(f, a, sample);
          else
            report = spirallike_test(f, a, sample);
        } else if (mt_criterion == "starlike") {
          report = starlike_test(f, sample);
        } else if (mt_criterion == "convex") {
          report = convexity_test(f, sample);
        } else if (mt_criterion == "q") {
          report = q_class_test(f, sample);
        } else {
          report = g_starlike_test(f, region_for(mt_criterion, mt_alpha), sample);
        }
      }
      if (mt_tol != kCritTol && std::isfinite(report.min_margin) &&
          report.reason.empty()) {
        // re-band the verdict with the overridden tolerance
        if (std::abs(report.min_margin) <= mt_tol)
          report.verdict = Verdict::boundary;
        else
          report.verdict = report.min_margin < 0.0 ? Verdict::fail : Verdict::pass;
      }
      env.config["tol"] = mt_tol;
      env.result = report_to_json(report);
      out << "criterion " << report.criterion << "\n";
      print_kv(out, "verdict", verdict_name(report.verdict));
      print_kv(out, "min margin", fmt(report.min_margin));
      print_kv(out, "samples", std::to_string(report.sample_count));
      if (!report.reason.empty()) print_kv(out, "reason", report.reason);
      emit(env.finish("map-test", mt_seed), mt_out, out);
      return report.verdict == Verdict::fail ? 1 : 0;
    }

    if (*fl_cmd) {
      Envelope env;
      const HerglotzField field = load_field(fl_field, fl_builtin);
      const CVector z = parse_point(fl_z, field.dim());
      env.config["field"] = fl_field.empty() ? fl_builtin : fl_field;
      env.config["s"] = fl_s;
      env.config["t"] = fl_t;
      env.config["tol"] = fl_tol;
      const FlowResult fr = flow(field, z, fl_s, fl_t, fl_tol);
      env.result = flow_to_json(fr);
      Json residuals = Json::object();
      residuals["schwarz"] = std::max(0.0, norm(fr.value) - norm(z));
      env.result["residuals"] = std::move(residuals);
      out << "flow v(z, " << fmt(fl_s) << " -> " << fmt(fl_t) << ")\n";
      print_kv(out, "steps", std::to_string(fr.steps));
      print_kv(out, "max local error", fmt(fr.max_local_error));
      print_kv(out, "|v|", fmt(norm(fr.value)));
      emit(env.finish("flow", 0), fl_out, out);
      return 0;
    }

    if (*rc_cmd) {
      Envelope env;
      const HerglotzField field = load_field(rc_field, rc_builtin);
      const CVector z = parse_point(rc_z, field.dim());
      env.config["field"] = rc_field.empty() ? rc_builtin : rc_field;
      env.config["tol"] = rc_tol;
      const CVector value = reachable_eval(field, z, rc_tol);
      Json result = Json::object();
      Json arr = Json::array();
      for (const cdouble& c : value) arr.push_back(complex_to_json(c));
      result["value"] = std::move(arr);
      result["T"] = field.total_time();
      auto [gm, gk] = numerical_range_extrema(field.a());
      const double r = norm(z);
      const double bound = std::exp(field.total_time() * (gk - gm)) * r /
                           ((1.0 - r) * (1.0 - r));
      Json residuals = Json::object();
      residuals["growth_bound_slack"] = bound - norm(value);
      result["residuals"] = std::move(residuals);
      env.result = std::move(result);
      out << "reachable element at T = " << fmt(field.total_time()) << "\n";
      print_kv(out, "|f(z)|", fmt(norm(value)));
      emit(env.finish("reach", 0), rc_out, out);
      return 0;
    }

    if (*ap_cmd) {
      Envelope env;
      const PolyMap f = load_map(ap_target, ap_builtin);
      const std::vector<AutomorphismWord> candidates = load_candidates(ap_cands);
      ApproxCriterion criterion = ApproxCriterion::starlike();
      if (ap_criterion == "spirallike")
        criterion = ApproxCriterion::spirallike(load_operator(ap_op_in, ap_op_builtin));
      else if (ap_criterion == "starlike")
        criterion = ApproxCriterion::starlike();
      else if (ap_criterion == "convex")
        criterion = ApproxCriterion::convex();
      else if (ap_criterion == "q")
        criterion = ApproxCriterion::q();
      else if (ap_criterion == "qtilde")
        criterion = ApproxCriterion::qtilde();
      else if (ap_criterion == "ktilde")
        criterion = ApproxCriterion::ktilde();
      else
        criterion = ApproxCriterion::gstar(region_for(ap_criterion, ap_alpha));

      DilationSchedule schedule;
      if (ap_schedule == "default")
        schedule = DilationSchedule::defaults();
      else
        schedule.radii = parse_radii(ap_schedule);
      ApproxOptions options;
      options.per_sphere = ap_per_sphere;
      options.seed = ap_seed;
      if (!ap_radii.empty()) options.radii = parse_radii(ap_radii);

      std::vector<double> test_radii = parse_radii(ap_test_radii);
      env.config["target"] = ap_target.empty() ? ap_builtin : ap_target;
      env.config["candidates"] = ap_cands;
      env.config["criterion"] = ap_criterion;
      env.config["schedule"] = schedule.radii;
      env.config["test_radii"] = test_radii;
      env.config["per_sphere"] = ap_per_sphere;

      const ApproximationRun run =
          run_approximation(f, candidates, criterion, schedule, test_radii, options);
      env.result = approximation_to_json(run);
      out << "approximation run (" << run.criterion << ")\n";
      bool any_failure = false;
      for (std::size_t mi = 0; mi < run.selections.size(); ++mi) {
        const Selection& sel = run.selections[mi];
        std::string line = "m=" + std::to_string(sel.m) + " r=" + fmt(sel.r);
        if (sel.index) {
          line += " k=" + std::to_string(*sel.index) + " margin=" + fmt(sel.margin);
          line += " dist(0.5-ish)=" + fmt(run.distances[mi].empty()
                                              ? std::nan("")
                                              : run.distances[mi].front());
        } else {
          line += " " + sel.note;
          any_failure = true;
        }
        out << "  " << line << "\n";
      }
      emit(env.finish("approx", ap_seed), ap_out, out);
      return any_failure ? 1 : 0;
    }

    if (*su_cmd) {
      Envelope env;
      if (su_builtin != "paper-examples")
        throw Error(Errc::usage_error, "unknown suite bundle: " + su_builtin);
      env.config["builtin"] = su_builtin;
      env.config["filter"] = su_filter;
      const std::vector<CheckResult> results = run_suite(su_filter);
      bool all_pass = true;
      Json checks = Json::array();
      for (const CheckResult& r : results) {
        out << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
        if (!r.detail.empty()) out << "  [" << r.detail << "]";
        out << "\n";
        all_pass = all_pass && r.pass;
        Json cj = Json::object();
        cj["name"] = r.name;
        cj["pass"] = r.pass;
        cj["detail"] = r.detail;
        cj["millis"] = r.millis;
        checks.push_back(std::move(cj));
      }
      out << (all_pass ? "all checks passed" : "SOME CHECKS FAILED") << " ("
          << results.size() << " run)\n";
      env.result["checks"] = std::move(checks);
      env.result["all_pass"] = all_pass;
      emit(env.finish("suite", 0), su_out, out);
      return all_pass ? 0 : 1;
    }
  } catch (const CriterionFailure& e) {
    err << errc_name(e.code()) << ": " << e.what() << "\n";
    out << report_to_json(e.report()).dump(2) << "\n";
    return 1;
  } catch (const Error& e) {
    err << errc_name(e.code()) << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "no subcommand executed\n";
  return 2;
}

}  // namespace ballchain
