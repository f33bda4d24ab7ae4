#include "spectra/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include "spectra/exact_linalg.hpp"

namespace spectra {

namespace {

Json certificate_payload(const std::optional<ExactCertificate>& exact, const NumericCertificate& numeric) {
  return exact ? to_json(*exact) : to_json(numeric);
}

CommandOutcome precondition(const std::string& what, const std::string& witness = {}) {
  CommandOutcome o;
  o.exit_code = kExitPrecondition;
  o.status = "precondition_failed";
  o.result = Json{{"error", what}};
  if (!witness.empty()) o.result["witness"] = witness;
  return o;
}

CommandOutcome from_search(const SearchResult& r, const LinearPencil& l1, const LinearPencil& l2, double tol) {
  CommandOutcome o;
  o.result["search_status"] = to_string(r.status);
  o.result["degree"] = r.degree;
  if (r.status == SearchStatus::Feasible && (r.exact || r.numeric)) {
    const VerificationReport rep = r.exact ? verify(l1, l2, *r.exact) : verify(l1, l2, *r.numeric, tol);
    o.result["exact"] = r.exact.has_value();
    o.result["verification"] = to_json(rep);
    o.result["certificate"] = r.exact ? to_json(*r.exact) : to_json(*r.numeric);
    if (!rep.pass) {
      o.exit_code = kExitUnknown;
      o.status = "unknown";
    }
    return o;
  }
  if (r.refutation) o.result["refutation"] = to_json(*r.refutation);
  if (r.status == SearchStatus::Infeasible) {
    o.exit_code = kExitInfeasible;
    o.status = "infeasible";
  } else {
    o.exit_code = kExitUnknown;
    o.status = "unknown";
  }
  return o;
}

void check_pair(const LinearPencil& l1, const LinearPencil& l2) {
  if (l1.n() != l2.n()) {
    throw ParseError("L1 has " + std::to_string(l1.n()) + " variables but L2 has " + std::to_string(l2.n()));
  }
}

Json interval_json(const OneVariableInterval& iv) {
  Json out = Json::object();
  auto side = [](const std::optional<double>& v, const std::optional<Rational>& exact) {
    if (!v) return Json(nullptr);
    return exact ? to_json(*exact) : Json(*v);
  };
  if (iv.has_interior) {
    out["kind"] = (iv.lower && iv.upper) ? "bounded" : "unbounded";
    out["lower"] = side(iv.lower, iv.lower_exact);
    out["upper"] = side(iv.upper, iv.upper_exact);
    out["interior_point"] = to_json(iv.interior);
  } else if (iv.point) {
    out["kind"] = "singleton";
    out["point"] = to_json(*iv.point);
  } else {
    out["kind"] = "no_interior";
  }
  return out;
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::Auto: return "auto";
    case Method::Singleton: return "singleton";
    case Method::Diagonal: return "diagonal";
    case Method::OneVariable: return "one-var";
    case Method::Simplex: return "simplex";
    case Method::Sdp: return "sdp";
  }
  return "auto";
}

Method parse_method(const std::string& text) {
  for (Method m : {Method::Auto, Method::Singleton, Method::Diagonal, Method::OneVariable, Method::Simplex, Method::Sdp})
    if (to_string(m) == text) return m;
  throw ParseError("unknown method '" + text + "'");
}

void CliConfig::validate() const {
  if (!(tol > 0)) throw ParseError("tolerance must be positive");
  if (degree > kMaxDegree) throw ParseError("degree cap must be at most " + std::to_string(kMaxDegree));
  if (denominator_bound < 1) throw ParseError("denominator bound must be at least 1");
}

CommandOutcome cmd_analyze(const LinearPencil& l) {
  CommandOutcome o;
  o.result["d"] = l.d();
  o.result["n"] = l.n();
  o.result["diagonal"] = is_diagonal(l);
  o.result["monic"] = is_monic(l);
  o.result["p0_signature"] = to_json(signature(l.coeff(0)));
  bool reducible = true;
  try {
    monic_reduce(l);
  } catch (const NotInterior&) {
    reducible = false;
  }
  o.result["monic_reducible"] = reducible;
  if (!is_diagonal(l)) {
    o.warnings.push_back("NotDiagonal: only monicity, constant-term signature and monic reducibility are reported");
    if (l.n() == 1) o.result["interval"] = interval_json(one_variable_interval(l));
    return o;
  }
  const Polyhedron k = region_of(l);
  Json cs = Json::array();
  for (const AffineFunctional& f : k.constraints) cs.push_back(f.str());
  o.result["constraints"] = cs;
  const RegionClassification r = classify(k);
  o.result["region"] = to_json(r);
  o.result["simplex"] = simplex_check(k).is_simplex;
  try {
    const VertexSet v = vertices(k);
    Json vs = Json::array(), rs = Json::array();
    for (const PencilPoint& p : v.vertices) vs.push_back(to_json(p));
    for (const QVector& d : v.rays) rs.push_back(to_json(d));
    o.result["vertices"] = vs;
    o.result["rays"] = rs;
  } catch (const TooLarge&) {
    o.warnings.push_back("TooLarge: vertex enumeration skipped");
  }
  return o;
}

CommandOutcome cmd_certify(const LinearPencil& l1, const LinearPencil& l2, const CliConfig& config) {
  config.validate();
  check_pair(l1, l2);
  EngineConfig ec;
  ec.degree_cap = config.degree;
  ec.tol = config.tol;
  ec.denominator_bound = config.denominator_bound;
  if (config.method == Method::Sdp) {
    SearchOptions opts;
    opts.tol = config.tol;
    opts.denominator_bound = config.denominator_bound;
    SearchResult last;
    for (unsigned degree = 0; degree <= config.degree; ++degree) {
      last = refute(l1, l2, degree, opts);
      if (last.status == SearchStatus::Feasible) break;
    }
    CommandOutcome o = from_search(last, l1, l2, config.tol);
    o.result["method"] = to_string(config.method);
    return o;
  }
  try {
    EngineCertificate c;
    switch (config.method) {
      case Method::Singleton: c = certify_singleton(l1, l2, ec); break;
      case Method::Diagonal: c = certify_diagonal_bounded(l1, l2, ec); break;
      case Method::OneVariable: c = certify_one_variable(l1, l2, ec); break;
      case Method::Simplex: c = certify_simplex(l1, l2, ec); break;
      default: c = certify_auto(l1, l2, ec); break;
    }
    CommandOutcome o;
    o.result["method"] = to_string(config.method);
    o.result["path"] = to_string(c.path);
    o.result["exact"] = c.is_exact();
    o.result["degree"] = c.numeric.degree();
    o.result["verification"] = to_json(c.report);
    o.result["certificate"] = certificate_payload(c.exact, c.numeric);
    return o;
  } catch (const NoPathFound& e) {
    CommandOutcome o;
    o.result["method"] = to_string(config.method);
    o.result["error"] = e.what();
    o.result["search_status"] = to_string(e.status());
    o.result["diagnostics"] = e.diagnostics();
    if (e.refutation()) o.result["refutation"] = to_json(*e.refutation());
    if (e.status() == SearchStatus::Infeasible) {
      o.exit_code = kExitInfeasible;
      o.status = "infeasible";
    } else {
      o.exit_code = kExitUnknown;
      o.status = "unknown";
    }
    return o;
  } catch (const PreconditionFailed& e) {
    return precondition(e.what(), e.witness());
  }
}

CommandOutcome cmd_verify(const LinearPencil& l1, const LinearPencil& l2, const Json& certificate, double tol) {
  if (!(tol > 0)) throw ParseError("tolerance must be positive");
  check_pair(l1, l2);
  VerificationReport rep;
  try {
    rep = certificate_is_exact(certificate) ? verify(l1, l2, exact_certificate_from_json(certificate))
                                            : verify(l1, l2, numeric_certificate_from_json(certificate), tol);
  } catch (const DimensionMismatch& e) {
    throw ParseError(std::string("certificate does not match the pencils: ") + e.what());
  }
  CommandOutcome o;
  o.result = to_json(rep);
  if (!rep.pass) {
    o.exit_code = kExitVerifyFailed;
    o.status = "verification_failed";
  }
  return o;
}

CommandOutcome cmd_refute(const LinearPencil& l1, const LinearPencil& l2, unsigned degree, const CliConfig& config) {
  config.validate();
  if (degree > kMaxDegree) throw ParseError("degree must be at most " + std::to_string(kMaxDegree));
  check_pair(l1, l2);
  SearchOptions opts;
  opts.tol = config.tol;
  opts.denominator_bound = config.denominator_bound;
  CommandOutcome o = from_search(refute(l1, l2, degree, opts), l1, l2, config.tol);
  o.result["fixed_instance"] = is_example1(l1, l2) ? "unbounded-three-constraint" : is_example2(l1, l2) ? "singleton-2x2" : "none";
  return o;
}

CommandOutcome cmd_eval(const LinearPencil& l, const PencilPoint& x) {
  if (x.size() != l.n()) throw ParseError("point has " + std::to_string(x.size()) + " coordinates, pencil has " + std::to_string(l.n()) + " variables");
  const QMatrix m = eval_point(l, x);
  CommandOutcome o;
  o.result["point"] = to_json(x);
  o.result["matrix"] = to_json(m);
  o.result["signature"] = to_json(signature(m));
  o.result["psd"] = psd_check(m);
  return o;
}

CommandOutcome cmd_eval(const LinearPencil& l, const MatrixTuple& x) {
  if (x.entries.size() != l.n()) throw ParseError("tuple has " + std::to_string(x.entries.size()) + " entries, pencil has " + std::to_string(l.n()) + " variables");
  const QMatrix m = eval_tuple(l, x);
  CommandOutcome o;
  o.result["m"] = x.m;
  o.result["matrix"] = to_json(m);
  o.result["signature"] = to_json(signature(m));
  o.result["psd"] = psd_check(m);
  return o;
}

PlotWindow parse_window(const std::string& text) {
  const PencilPoint v = parse_point(text);
  if (v.size() != 4) throw ParseError("window must be a,b,c,d");
  if (v[0] > v[1] || v[2] > v[3]) throw ParseError("window must satisfy a <= b and c <= d");
  return {{v[0], v[1], v[2], v[3]}};
}

std::string cmd_plot(const LinearPencil& l, const PlotWindow& w, const Rational& step) {
  if (l.n() != 2) throw NotTwoVariables("plot needs a pencil in two variables, got " + std::to_string(l.n()));
  if (step <= 0) throw ParseError("step must be positive");
  const Rational count = ((w.bounds[1] - w.bounds[0]) / step + 1) * ((w.bounds[3] - w.bounds[2]) / step + 1);
  if (count > 1000000) throw ParseError("grid exceeds one million points");
  std::ostringstream out;
  out << "x1,x2,member\n";
  for (Rational a = w.bounds[0]; a <= w.bounds[1]; a += step)
    for (Rational b = w.bounds[2]; b <= w.bounds[3]; b += step)
      out << to_string(a) << ',' << to_string(b) << ',' << (membership(l, {a, b}) ? 1 : 0) << '\n';
  return out.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectrahedral containment certificates for linear matrix pencils"};
  app.require_subcommand(1);
  std::string pencil, l1_file, l2_file, cert_file, method = "auto", point, tuple_file, window, step;
  CliConfig config;
  unsigned degree = 0;
  double tol = 1e-8;

  CLI::App* analyze = app.add_subcommand("analyze", "Classify the region of a pencil");
  analyze->add_option("pencil", pencil, "Pencil JSON file")->required();

  CLI::App* certify = app.add_subcommand("certify", "Construct a certificate of L2 over L1");
  certify->add_option("--l1", l1_file, "L1 pencil file")->required();
  certify->add_option("--l2", l2_file, "L2 pencil file")->required();
  certify->add_option("--method", method, "auto, singleton, diagonal, one-var, simplex or sdp");
  certify->add_option("--degree", config.degree, "Degree cap of the search");
  certify->add_option("--tol", config.tol, "Numeric verification tolerance");
  certify->add_option("--denominator-bound", config.denominator_bound, "Largest denominator when rationalizing");
  certify->add_option("-o,--output", config.output, "Write the certificate JSON here");

  CLI::App* verify_cmd = app.add_subcommand("verify", "Verify a certificate");
  verify_cmd->add_option("--l1", l1_file, "L1 pencil file")->required();
  verify_cmd->add_option("--l2", l2_file, "L2 pencil file")->required();
  verify_cmd->add_option("--cert", cert_file, "Certificate JSON file")->required();
  verify_cmd->add_option("--tol", tol, "Numeric verification tolerance");

  CLI::App* refute_cmd = app.add_subcommand("refute", "Search or refute a certificate of bounded degree");
  refute_cmd->add_option("--l1", l1_file, "L1 pencil file")->required();
  refute_cmd->add_option("--l2", l2_file, "L2 pencil file")->required();
  refute_cmd->add_option("--degree", degree, "Factor degree")->required();
  refute_cmd->add_option("--tol", config.tol, "Numeric verification tolerance");

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a pencil at a point or matrix tuple");
  eval->add_option("--pencil", pencil, "Pencil JSON file")->required();
  CLI::Option* point_opt = eval->add_option("--point", point, "Point \"p/q,...\"");
  CLI::Option* tuple_opt = eval->add_option("--tuple", tuple_file, "Matrix tuple JSON file");
  point_opt->excludes(tuple_opt);

  CLI::App* plot = app.add_subcommand("plot", "Membership grid as CSV");
  plot->add_option("--pencil", pencil, "Pencil JSON file")->required();
  plot->add_option("--window", window, "a,b,c,d")->required();
  plot->add_option("--step", step, "Grid step")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitParse;
  }
  if (eval->parsed() && point_opt->count() == 0 && tuple_opt->count() == 0) {
    err << "eval needs --point or --tuple\n";
    return kExitParse;
  }

  CLI::App* cmd = app.get_subcommands().front();
  Json echo = Json::object();
  for (const CLI::Option* opt : cmd->get_options())
    if (opt->count() > 0 && opt->get_name() != "--help") {
      std::string key = opt->get_name();
      key.erase(0, key.find_first_not_of('-'));
      echo[key] = opt->as<std::string>();
    }

  const auto start = std::chrono::steady_clock::now();
  CommandOutcome o;
  std::string csv;
  try {
    if (cmd == analyze) {
      o = cmd_analyze(pencil_from_json(read_json_file(pencil)));
    } else if (cmd == certify) {
      config.method = parse_method(method);
      o = cmd_certify(pencil_from_json(read_json_file(l1_file)), pencil_from_json(read_json_file(l2_file)), config);
      if (!config.output.empty() && o.result.contains("certificate")) {
        std::ofstream f(config.output);
        if (!f) throw ParseError("cannot write '" + config.output + "'");
        f << o.result["certificate"].dump(2) << '\n';
      }
    } else if (cmd == verify_cmd) {
      o = cmd_verify(pencil_from_json(read_json_file(l1_file)), pencil_from_json(read_json_file(l2_file)),
                     read_json_file(cert_file), tol);
    } else if (cmd == refute_cmd) {
      o = cmd_refute(pencil_from_json(read_json_file(l1_file)), pencil_from_json(read_json_file(l2_file)), degree, config);
    } else if (cmd == eval) {
      const LinearPencil l = pencil_from_json(read_json_file(pencil));
      o = point_opt->count() ? cmd_eval(l, parse_point(point)) : cmd_eval(l, tuple_from_json(read_json_file(tuple_file)));
    } else {
      csv = cmd_plot(pencil_from_json(read_json_file(pencil)), parse_window(window), parse_rational(step));
    }
  } catch (const ParseError& e) {
    o = CommandOutcome{kExitParse, "parse_error", Json{{"error", e.what()}}, {}};
  } catch (const DimensionMismatch& e) {
    o = CommandOutcome{kExitParse, "parse_error", Json{{"error", e.what()}}, {}};
  } catch (const Json::exception& e) {
    o = CommandOutcome{kExitParse, "parse_error", Json{{"error", e.what()}}, {}};
  } catch (const PreconditionFailed& e) {
    o = precondition(e.what(), e.witness());
  } catch (const Error& e) {
    o = precondition(e.what());
  }
  if (cmd == plot && o.exit_code == kExitOk) {
    out << csv;
    return kExitOk;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  Json report{{"command", cmd->get_name()},
              {"arguments", echo},
              {"status", o.status},
              {"exit_code", o.exit_code},
              {"warnings", o.warnings},
              {"result", o.result},
              {"elapsed_ms", ms}};
  out << report.dump(2) << '\n';
  for (const std::string& w : o.warnings) err << "warning: " << w << '\n';
  return o.exit_code;
}

}  // namespace spectra
