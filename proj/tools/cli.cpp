#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "holozero/aaa.hpp"
#include "holozero/baseline.hpp"
#include "holozero/demos.hpp"
#include "holozero/engine.hpp"
#include "holozero/exprparse.hpp"
#include "holozero/numderiv.hpp"

namespace holozero::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr const char* kExpressionHelp = R"(Expressions are functions of z:
  numbers 2, 0.5, 1e-3, imaginary literals 2i, constants i, pi, e
  operators + - * / ^ (^ binds tightest and is right-associative)
  functions exp log sin cos tan sqrt (principal branches, cut on the
  negative real axis; points on the cut take the upper-side value)
Example: --expr "sin(sqrt(z^2+1))-z")";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProblemOptions {
  std::string expr;
  std::string dexpr;
  std::string demo;
  std::string rect;
  std::uint64_t seed = 7;
  int alpha = 2;
  std::string a = "0.3,0.7";
  bool derivative_free = false;
  double quad_rtol = 1e-9;
};

struct Problem {
  std::string source;  // "expr" or "demo"
  std::string name;
  Rectangle rect;
  FunctionHandle handle;
  std::optional<Demo> demo;
};

std::vector<double> parse_list(const std::string& text, std::size_t expected, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("malformed ") + what + ": '" + text + "'");
    }
  }
  if (expected != 0 && out.size() != expected) {
    throw UsageError(std::string("expected ") + std::to_string(expected) + " values for " + what);
  }
  return out;
}

Rectangle parse_rect(const std::string& text) {
  const std::vector<double> v = parse_list(text, 4, "--rect");
  try {
    return Rectangle(v[0], v[1], v[2], v[3]);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--rect: ") + e.what());
  }
}

void add_problem_options(CLI::App* cmd, ProblemOptions& o) {
  cmd->add_option("--expr", o.expr, "f(z) as an expression");
  cmd->add_option("--dexpr", o.dexpr, "f'(z) as an expression (default: numerical derivative)");
  cmd->add_option("--demo", o.demo, "built-in problem (see `demos`)");
  cmd->add_option("--rect", o.rect, "search region re_min,re_max,im_min,im_max");
  cmd->add_option("--seed", o.seed, "seed for every random choice");
  cmd->add_option("--alpha", o.alpha, "funcchoice: zero order");
  cmd->add_option("--a", o.a, "funcchoice: zero location re,im");
  cmd->add_flag("--derivative-free", o.derivative_free,
                "replace f' by a trapezium-rule Cauchy-integral derivative");
  cmd->add_option("--quad-rtol", o.quad_rtol, "argument-principle quadrature relative tolerance");
  cmd->footer(kExpressionHelp);
}

Problem build_problem(const ProblemOptions& o) {
  if (o.expr.empty() == o.demo.empty()) throw UsageError("give exactly one of --expr or --demo");
  if (!o.dexpr.empty() && o.expr.empty()) throw UsageError("--dexpr needs --expr");
  if (!o.demo.empty()) {
    DemoOptions opts;
    opts.seed = o.seed;
    opts.alpha = o.alpha;
    const std::vector<double> a = parse_list(o.a, 2, "--a");
    opts.a = {a[0], a[1]};
    Demo demo = [&] {
      try {
        return make_demo(o.demo, opts);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }();
    const Rectangle rect = o.rect.empty() ? demo.rect : parse_rect(o.rect);
    FunctionHandle handle =
        o.derivative_free ? wrap_derivative_free(demo.handle.raw_f()) : demo.handle;
    return Problem{"demo", demo.name, rect, handle, std::move(demo)};
  }
  if (o.rect.empty()) throw UsageError("--expr needs --rect");
  const Rectangle rect = parse_rect(o.rect);
  auto parse_checked = [](const std::string& src) {
    try {
      return parse(src);
    } catch (const ParseError& e) {
      throw UsageError(std::string("expression: ") + e.what());
    }
  };
  const Expr f = parse_checked(o.expr);
  if (!o.dexpr.empty() && !o.derivative_free) {
    const Expr df = parse_checked(o.dexpr);
    return Problem{"expr", o.expr, rect, FunctionHandle(f, df), std::nullopt};
  }
  return Problem{"expr", o.expr, rect, wrap_derivative_free(f), std::nullopt};
}

json rect_json(const Rectangle& r) { return json::array({r.re_min(), r.re_max(), r.im_min(), r.im_max()}); }

json problem_json(const Problem& p) {
  json j;
  j["source"] = p.source;
  j[p.source == "demo" ? "name" : "expr"] = p.name;
  j["rect"] = rect_json(p.rect);
  j["derivative_free"] = p.handle.derivative_free();
  return j;
}

int default_threads() {
  if (const char* env = std::getenv("HOLOZERO_THREADS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
    }
  }
  return 1;
}

// Leaf regions of the final tree.
std::vector<const RegionNode*> final_regions(const RunReport& report, bool manual) {
  std::vector<const RegionNode*> out;
  for (const RegionNode& n : report.regions) {
    if (n.discarded) continue;
    if (manual ? n.accepted : (n.verified || (n.accepted && n.count == 0))) out.push_back(&n);
  }
  return out;
}

json build_document(const Problem& p, const EngineConfig& cfg, const ZeroSearchResult& r,
                    bool manual, const std::string& status, const std::string& error,
                    std::optional<double> seconds) {
  json doc;
  doc["status"] = status;
  if (!error.empty()) doc["error"] = error;
  doc["problem"] = problem_json(p);
  doc["mode"] = manual ? "poles-manual" : "zeros";
  doc["count"] = r.multiplicity_sum();
  doc["argument_principle_count"] = r.report.total_count;
  json zeros = json::array();
  for (const ZeroRecord& z : r.zeros) {
    json e;
    e["re"] = z.location.real();
    e["im"] = z.location.imag();
    e["multiplicity"] = z.multiplicity;
    e["residue_re"] = z.raw_residue.real();
    e["residue_im"] = z.raw_residue.imag();
    e["refined"] = z.refined;
    e["kind"] = z.is_pole ? "pole" : "zero";
    if (p.demo && p.demo->label) e["label"] = p.demo->label(z.location);
    zeros.push_back(std::move(e));
  }
  doc["zeros"] = std::move(zeros);
  json regions = json::array();
  for (const RegionNode* n : final_regions(r.report, manual)) {
    json e;
    e["rect"] = rect_json(n->rect);
    e["count"] = n->count;
    e["aaa_degree"] = n->aaa_degree;
    e["depth"] = n->depth;
    if (!n->note.empty()) e["note"] = n->note;
    regions.push_back(std::move(e));
  }
  doc["regions"] = std::move(regions);
  doc["eval_counts"] = {{"f", r.report.evaluations.f}, {"fprime", r.report.evaluations.fprime}};
  doc["perturbations"] = r.report.perturbations;
  doc["config"] = {{"max_per_region", cfg.max_per_region},
                   {"residue_tol", cfg.residue_tol},
                   {"seed", cfg.seed},
                   {"polish", cfg.polish},
                   {"aaa_rel_tol", cfg.aaa.rel_tol},
                   {"quad_rel_tol", cfg.quad.rel_tol},
                   {"quad_abs_tol", cfg.quad.abs_tol}};
  if (seconds) doc["timing"] = {{"seconds", *seconds}};
  return doc;
}

std::string csv_document(const json& doc) {
  std::ostringstream os;
  os.precision(17);
  os << "re,im,multiplicity,residue_re,residue_im,refined,kind,label\n";
  for (const json& z : doc["zeros"]) {
    os << z["re"].get<double>() << ',' << z["im"].get<double>() << ','
       << z["multiplicity"].get<int>() << ',' << z["residue_re"].get<double>() << ','
       << z["residue_im"].get<double>() << ',' << (z["refined"].get<bool>() ? "true" : "false")
       << ',' << z["kind"].get<std::string>() << ',' << z.value("label", std::string()) << '\n';
  }
  return os.str();
}

json plot_document(const Problem& p, const json& doc) {
  json plot;
  plot["omega"] = rect_json(p.rect);
  json rects = json::array();
  for (const json& r : doc["regions"]) rects.push_back({{"rect", r["rect"]}, {"count", r["count"]}});
  plot["regions"] = std::move(rects);
  json pts = json::array();
  for (const json& z : doc["zeros"]) pts.push_back(json::array({z["re"], z["im"]}));
  plot["zeros"] = std::move(pts);
  return plot;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

int cmd_count(const ProblemOptions& o, std::ostream& out) {
  const Problem p = build_problem(o);
  QuadConfig q = p.demo ? p.demo->config.quad : QuadConfig{};
  q.rel_tol = o.quad_rtol;
  EdgeCache cache;
  const ArgPrincipleOutcome r = count_zeros(p.handle, p.rect, q, cache);
  json doc;
  doc["status"] = nullptr;
  doc["problem"] = problem_json(p);
  int code = kOk;
  switch (r.status) {
    case CountStatus::Integer:
      doc["status"] = "integer";
      doc["count"] = r.count;
      break;
    case CountStatus::QuadratureFailure:
      doc["status"] = "quadrature_failure";
      doc["edge"] = {{"start", {r.failed_edge->start.real(), r.failed_edge->start.imag()}},
                     {"end", {r.failed_edge->end.real(), r.failed_edge->end.imag()}}};
      code = kQuadratureFailure;
      break;
    case CountStatus::NonInteger:
      doc["status"] = "non_integer";
      code = kNonInteger;
      break;
  }
  if (r.status != CountStatus::QuadratureFailure) doc["value"] = {r.value.real(), r.value.imag()};
  const auto counts = p.handle.counts();
  doc["eval_counts"] = {{"f", counts.f}, {"fprime", counts.fprime}};
  out << doc.dump(2) << '\n';
  return code;
}

struct FindOptions {
  int max_per_region = 7;
  bool polish = false;
  std::string format = "json";
  std::string out_file;
  std::string plot_file;
  int threads = 0;
  int depth = -1;
  bool timing = false;
};

int cmd_find(const ProblemOptions& o, const FindOptions& fo, std::ostream& out) {
  const Problem p = build_problem(o);
  EngineConfig cfg = p.demo ? p.demo->config : EngineConfig{};
  cfg.max_per_region = fo.max_per_region;
  cfg.polish = fo.polish;
  cfg.seed = o.seed;
  cfg.quad.rel_tol = o.quad_rtol;
  cfg.threads = fo.threads > 0 ? fo.threads : default_threads();
  if (cfg.max_per_region < 1) throw UsageError("--max-per-region must be at least 1");
  const bool manual = fo.depth >= 0 || (p.demo && p.demo->mode == DemoMode::PolesManual);
  const int depth = fo.depth >= 0 ? fo.depth : (p.demo ? p.demo->manual_depth : 0);

  const auto t0 = std::chrono::steady_clock::now();
  ZeroSearchResult result;
  std::string status = "ok";
  std::string error;
  int code = kOk;
  try {
    result = manual ? find_poles_manual(p.handle, p.rect, depth, cfg) : find_zeros(p.handle, p.rect, cfg);
  } catch (const EngineError& e) {
    result = e.partial;
    status = "failed";
    error = e.what();
    code = e.kind() == EngineError::Kind::NonInteger ? kNonInteger : kQuadratureFailure;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const json doc = build_document(p, cfg, result, manual, status, error,
                                  fo.timing ? std::optional<double>(seconds) : std::nullopt);

  const std::string text = fo.format == "csv" ? csv_document(doc) : doc.dump(2) + "\n";
  if (fo.out_file.empty()) out << text;
  else write_file(fo.out_file, text);
  if (!fo.plot_file.empty()) write_file(fo.plot_file, plot_document(p, doc).dump(2) + "\n");
  return code;
}

double max_zero_error(const std::vector<cplx>& truth, const std::vector<cplx>& found) {
  if (found.size() != truth.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const cplx& t : truth) {
    double best = std::numeric_limits<double>::infinity();
    for (const cplx& f : found) best = std::min(best, std::abs(f - t));
    worst = std::max(worst, best);
  }
  return worst;
}

int cmd_benchmark(int n, const std::string& tolerances, std::ostream& out) {
  if (n < 0) throw UsageError("--n must be nonnegative");
  const std::vector<double> tols = parse_list(tolerances, 0, "--tolerances");
  out << "method,n,tolerance,eval_count,max_zero_error\n";
  for (const BenchmarkRow& r : run_benchmark(n, tols)) {
    std::ostringstream row;
    row.precision(6);
    row << r.method << ',' << r.n << ',' << r.tolerance << ',' << r.evaluations << ','
        << r.max_zero_error;
    out << row.str() << '\n';
  }
  return kOk;
}

}  // namespace

std::vector<BenchmarkRow> run_benchmark(int n, const std::vector<double>& tolerances) {
  const std::vector<cplx> truth = compfunc_zeros(n);
  const Rectangle square(0, 1, 0, 1);
  const int count = n + 1;
  std::vector<BenchmarkRow> rows;
  for (double tol : tolerances) {
    {
      const FunctionHandle fh = polynomial_from_roots(truth);
      AAAConfig cfg;
      cfg.rel_tol = tol;
      double err = std::numeric_limits<double>::infinity();
      try {
        const AAAResult fit = aaa_continuum([&fh](cplx z) { return fh.log_derivative(z); },
                                            BoundaryParam(square), cfg);
        std::vector<cplx> found;
        for (const PoleInfo& p : fit.approximation.poles()) {
          const double k = std::round(p.residue.real());
          if (square.contains(p.location) && k >= 1.0 && std::abs(p.residue - k) < 1e-2) {
            for (int r = 0; r < static_cast<int>(k); ++r) found.push_back(p.location);
          }
        }
        err = max_zero_error(truth, found);
      } catch (const std::exception&) {
      }
      rows.push_back({"aaa", n, tol, fh.counts().fprime, err});
    }
    {
      const FunctionHandle fh = polynomial_from_roots(truth);
      QuadConfig cfg;
      cfg.rel_tol = tol;
      cfg.abs_tol = tol;
      cfg.max_interval_subdivisions = 200;
      double err = std::numeric_limits<double>::infinity();
      try {
        const MomentVector s = moments(fh, square, count, cfg);
        if (s.count() == count) err = max_zero_error(truth, companion_roots(newton_identities(s)));
      } catch (const std::exception&) {
      }
      rows.push_back({"delves-lyness", n, tol, fh.counts().fprime, err});
    }
  }
  return rows;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zeros of holomorphic functions in a rectangle by argument-principle subdivision "
               "and AAA approximation of f'/f",
               "holozero"};
  app.require_subcommand(1);

  ProblemOptions count_opts;
  CLI::App* count = app.add_subcommand("count", "argument-principle zero count");
  add_problem_options(count, count_opts);

  ProblemOptions find_opts;
  FindOptions find_extra;
  CLI::App* find = app.add_subcommand("find", "locate zeros with multiplicities");
  add_problem_options(find, find_opts);
  find->add_option("--max-per-region", find_extra.max_per_region, "largest count per region (M)");
  find->add_flag("--polish", find_extra.polish, "Newton-polish each zero");
  find->add_option("--format", find_extra.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  find->add_option("--out", find_extra.out_file, "write the result here instead of stdout");
  find->add_option("--plot-data", find_extra.plot_file, "write regions and zeros as JSON");
  find->add_option("--threads", find_extra.threads, "approximation workers (env HOLOZERO_THREADS)");
  find->add_option("--depth", find_extra.depth, "manual subdivision depth (pole mode, no verification)");
  find->add_flag("--timing", find_extra.timing, "include wall-clock time in the document");

  int bench_n = 3;
  std::string bench_tols = "1e-4,1e-6,1e-8,1e-10,1e-12";
  CLI::App* bench = app.add_subcommand("benchmark", "AAA vs Delves-Lyness evaluation counts");
  bench->add_option("--n", bench_n, "compfunc has n+1 zeros");
  bench->add_option("--tolerances", bench_tols, "comma-separated tolerances");

  CLI::App* demos = app.add_subcommand("demos", "list built-in problems");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kUsage;
  }

  try {
    if (*count) return cmd_count(count_opts, out);
    if (*find) return cmd_find(find_opts, find_extra, out);
    if (*bench) return cmd_benchmark(bench_n, bench_tols, out);
    if (*demos) {
      for (const std::string& name : demo_names()) {
        out << name << "  " << make_demo(name).description << '\n';
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace holozero::cli
