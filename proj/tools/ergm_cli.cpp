// Command-line front end: one subcommand per library area, each run leaving a
// JSON manifest that is enough to repeat it.
#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ergm/ergm.hpp"
#include "ergm/table_io.hpp"
#include "json.hpp"

#ifndef ERGM_VERSION
#define ERGM_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kNearCriticalDistance = 0.1;

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return hex.str();
}

/// Run-wide state shared by the subcommand handlers.
struct Run {
  std::vector<std::string> argv;
  std::string subcommand;
  unsigned threads = 0;
  std::string out_path;
  std::string manifest_path;
  json params = json::object();
  json results = json::object();
  json warnings = json::array();
  std::vector<fs::path> inputs;
  std::vector<fs::path> outputs;

  unsigned worker_count() const {
    return threads != 0 ? threads : std::max(1U, std::thread::hardware_concurrency());
  }

  void warn(const std::string& msg) {
    std::cerr << "warning: " << msg << '\n';
    warnings.push_back(msg);
  }

  ergm::CoefficientTable table(int n) {
    const ergm::EnumerationOptions opts{.n_max = ergm::EnumerationOptions{}.n_max, .threads = worker_count()};
    if (auto cache = ergm::TableCache::from_env()) {
      auto t = cache->load_or_enumerate(n, opts);
      inputs.push_back(cache->csv_path(n));
      return t;
    }
    return ergm::enumerate_coefficients(n, opts);
  }

  void check_near_critical(const ergm::ModelParams& p) {
    const auto nc = ergm::is_near_critical(p, kNearCriticalDistance);
    if (nc.flag()) {
      std::ostringstream msg;
      msg << "parameters lie within " << nc.distance
          << " of the critical set; expect slow mixing and compare several seeds";
      warn(msg.str());
    }
  }
};

/// Primary artifact: a file when --out is set, stdout otherwise.
class Output {
 public:
  explicit Output(Run& run) {
    if (!run.out_path.empty()) {
      file_.open(run.out_path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot write " + run.out_path);
      run.outputs.emplace_back(run.out_path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::ostream& precise(std::ostream& os) { return os << std::setprecision(17); }

json params_json(const ergm::TwoParam& p) { return {{"alpha", p.alpha}, {"h", p.h}}; }
json params_json(const ergm::ThreeParam& p) {
  return {{"beta1", p.beta1}, {"beta2", p.beta2}, {"beta3", p.beta3}, {"p", p.p}, {"q", p.q}};
}

template <typename F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// ---------------------------------------------------------------- handlers

void cmd_enumerate(Run& run, int n, int n_max) {
  run.params = {{"n", n}, {"n_max", n_max}};
  const ergm::EnumerationOptions opts{.n_max = n_max, .threads = run.worker_count()};
  ergm::CoefficientTable table = [&] {
    if (auto cache = ergm::TableCache::from_env()) {
      auto t = cache->load_or_enumerate(n, opts);
      run.inputs.push_back(cache->csv_path(n));
      return t;
    }
    return ergm::enumerate_coefficients(n, opts);
  }();
  Output out(run);
  ergm::write_table_csv(table, out.stream());
  run.results = ergm::table_sidecar(table);
}

void cmd_zeros(Run& run, int n, double h, double alpha_lo, double alpha_hi,
               const std::string& summary_path) {
  run.params = {{"n", n}, {"h", h}, {"alpha_min", alpha_lo}, {"alpha_max", alpha_hi}};
  const auto poly = ergm::build_polynomial(run.table(n), h);
  const auto roots = ergm::find_roots(poly);
  Output out(run);
  auto& os = precise(out.stream());
  os << "n,h,k,re,im,clearance\n";
  for (std::size_t k = 0; k < roots.roots.size(); ++k) {
    const auto& z = roots.roots[k];
    const ergm::RootSet single{{z}};
    os << n << ',' << h << ',' << k << ',' << z.real() << ',' << z.imag() << ','
       << ergm::positive_axis_clearance(single, alpha_lo, alpha_hi) << '\n';
  }
  run.results = {{"degree", poly.degree},
                 {"residual", roots.residual},
                 {"iterations", roots.iterations},
                 {"conjugate_symmetry_error", ergm::conjugate_symmetry_error(roots)},
                 {"min_clearance", ergm::positive_axis_clearance(roots, alpha_lo, alpha_hi)}};
  if (!summary_path.empty()) {
    std::ofstream s(summary_path);
    s << run.results.dump(2) << '\n';
    run.outputs.emplace_back(summary_path);
  }
}

json solution_json(const ergm::MeanFieldSolution& s) {
  json fps = json::array();
  for (const auto& fp : s.fixed_points) {
    fps.push_back({{"u", fp.u}, {"residual", fp.residual}, {"objective", fp.objective},
                   {"local_max", fp.local_max}});
  }
  return {{"fixed_points", fps},
          {"u_star", s.u_star},
          {"f", s.free_energy},
          {"v", std::isnan(s.clt_variance) ? json(nullptr) : json(s.clt_variance)},
          {"degenerate", s.degenerate},
          {"curvature", s.curvature},
          {"du_dparam", s.du_dparam}};
}

void cmd_meanfield(Run& run, const ergm::ModelParams& p) {
  json body;
  if (const auto* two = std::get_if<ergm::TwoParam>(&p)) {
    run.params = params_json(*two);
    body = solution_json(ergm::free_energy_2p(*two));
    body["model"] = "edge-triangle";
  } else {
    const auto& three = std::get<ergm::ThreeParam>(p);
    run.params = params_json(three);
    body = solution_json(ergm::free_energy_3p(three));
    body["model"] = "three-parameter";
  }
  run.check_near_critical(p);
  const auto nc = ergm::is_near_critical(p, kNearCriticalDistance);
  body["critical_distance"] = std::isfinite(nc.distance) ? json(nc.distance) : json(nullptr);
  body["params"] = run.params;
  Output out(run);
  out.stream() << body.dump(2) << '\n';
  run.results = body;
}

void cmd_critical_curve(Run& run, double alpha_max, int steps) {
  run.params = {{"alpha_max", alpha_max}, {"steps", steps}};
  const double ac = ergm::critical_point_2p().alpha;
  if (!(alpha_max > ac)) throw ergm::DomainError("--alpha-max must exceed alpha_c = 27/8");
  if (steps < 1) throw ergm::DomainError("--steps must be >= 1");
  std::vector<ergm::CriticalCurvePoint> pts(static_cast<std::size_t>(steps));
  parallel_for(pts.size(), run.worker_count(), [&](std::size_t i) {
    pts[i] = ergm::critical_h(ac + (alpha_max - ac) * static_cast<double>(i + 1) / steps);
  });
  Output out(run);
  auto& os = precise(out.stream());
  os << "alpha,h,u_low,u_high,gap\n";
  double max_gap = 0.0;
  for (const auto& c : pts) {
    os << c.alpha << ',' << c.h << ',' << c.u_low << ',' << c.u_high << ',' << c.gap << '\n';
    max_gap = std::max(max_gap, c.gap);
  }
  run.results = {{"rows", steps}, {"max_gap", max_gap}};
}

void cmd_c3(Run& run, int p, int q, int points) {
  run.params = {{"p", p}, {"q", q}, {"points", points}};
  if (points < 1) throw ergm::DomainError("--points must be >= 1");
  if (q <= p) throw ergm::DomainError("c3 needs p < q");
  const double lo = (p - 1.0) / p;
  const double hi = (q - 1.0) / q;
  Output out(run);
  auto& os = precise(out.stream());
  os << "u,beta1,beta2,beta3\n";
  for (int i = 0; i <= points; ++i) {
    // Pin the endpoints so rounding never leaves the admissible range.
    const double u = i == points ? hi : lo + (hi - lo) * i / points;
    const auto c = ergm::c3_point(u, p, q);
    os << c.u << ',' << c.beta1 << ',' << c.beta2 << ',' << c.beta3 << '\n';
  }
  run.results = {{"rows", points + 1}};
}

struct SampleFlags {
  int n = 0;
  double alpha = 0.0;
  double h = 0.0;
  std::uint64_t seed = 1;
  std::uint64_t burn_in = 0;
  std::uint64_t samples = 10000;
  std::uint64_t thin = 0;
  std::uint64_t chains = 4;
  std::uint64_t audit_interval = 1'000'000;
};

std::vector<ergm::SampleSeries> run_sampler(Run& run, SampleFlags f, bool burn_given, bool thin_given) {
  const auto pairs = static_cast<std::uint64_t>(ergm::pair_count(f.n));
  if (!burn_given) f.burn_in = 50 * pairs;
  if (!thin_given) f.thin = pairs;
  const ergm::TwoParam p{f.alpha, f.h};
  run.params = {{"n", f.n},          {"alpha", f.alpha},   {"h", f.h},
                {"seed", f.seed},    {"burn_in", f.burn_in}, {"samples", f.samples},
                {"thinning", f.thin}, {"chains", f.chains}, {"audit_interval", f.audit_interval},
                {"rng", "mt19937_64 via seed_seq{seed lo, seed hi, chain lo, chain hi}"},
                {"heuristic_defaults", json::array()}};
  if (!burn_given) run.params["heuristic_defaults"].push_back("burn_in = 50 sweeps");
  if (!thin_given) run.params["heuristic_defaults"].push_back("thinning = 1 sweep");
  run.check_near_critical(p);
  const ergm::ChainConfig cfg{.n = f.n,
                              .seed = f.seed,
                              .burn_in = f.burn_in,
                              .samples = f.samples,
                              .thinning = f.thin,
                              .audit_interval = f.audit_interval};
  auto series = ergm::run_chains(cfg, ergm::EdgeTriangleTarget{p}, f.chains, run.worker_count());
  json chains = json::array();
  for (const auto& s : series) {
    chains.push_back({{"chain", s.chain}, {"acceptance_rate", s.acceptance_rate},
                      {"audits_passed", s.audits_passed}});
  }
  run.results["chains"] = chains;
  return series;
}

void cmd_sample(Run& run, const SampleFlags& f, bool burn_given, bool thin_given) {
  const auto series = run_sampler(run, f, burn_given, thin_given);
  Output out(run);
  auto& os = out.stream();
  os << "chain,step,m,ell\n";
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.draws.size(); ++i) {
      os << s.chain << ',' << s.step_of(i) << ',' << s.draws[i].m << ',' << s.draws[i].l << '\n';
    }
  }
}

std::vector<ergm::SampleSeries> read_samples(const fs::path& path, int n, const ergm::TwoParam& p) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  if (line != "chain,step,m,ell") throw std::runtime_error(path.string() + ": expected header chain,step,m,ell");
  std::map<std::uint64_t, ergm::SampleSeries> by_chain;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::uint64_t chain = 0, step = 0;
    std::int64_t m = 0, l = 0;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(row >> chain >> c1 >> step >> c2 >> m >> c3 >> l) || c1 != ',' || c2 != ',' || c3 != ',') {
      throw std::runtime_error(path.string() + ": malformed row '" + line + "'");
    }
    auto& s = by_chain[chain];
    s.n = n;
    s.chain = chain;
    s.params = p;
    s.draws.push_back({m, l});
  }
  std::vector<ergm::SampleSeries> out;
  for (auto& [c, s] : by_chain) out.push_back(std::move(s));
  if (out.empty()) throw std::runtime_error(path.string() + ": no draws");
  return out;
}

void cmd_clt_check(Run& run, const SampleFlags& f, bool burn_given, bool thin_given,
                   const std::string& input, const std::string& cdf_path) {
  const ergm::TwoParam p{f.alpha, f.h};
  std::vector<ergm::SampleSeries> series;
  if (!input.empty()) {
    run.params = {{"n", f.n}, {"alpha", f.alpha}, {"h", f.h}, {"input", input}};
    run.inputs.emplace_back(input);
    series = read_samples(input, f.n, p);
  } else {
    series = run_sampler(run, f, burn_given, thin_given);
  }
  const double v = ergm::clt_variance_2p(p);
  const auto r = ergm::normality_report(series, v);
  const auto pooled = ergm::pooled_draws(series);
  const auto frac = ergm::fractional_part_report(pooled, f.n, f.alpha);
  json report = {{"n", r.n},
                 {"params", params_json(p)},
                 {"draws", r.draws},
                 {"v_theory", r.v_theory},
                 {"v_empirical", r.v_empirical},
                 {"v_empirical_floor", r.v_empirical_floor},
                 {"variance_ratio", r.variance_ratio},
                 {"ks_distance", r.ks_distance},
                 {"ess", r.ess},
                 {"ks_threshold_99", r.ks_threshold_99},
                 {"ks_pass", r.ks_distance < r.ks_threshold_99},
                 {"frac_mean", r.frac_mean},
                 {"frac_var", r.frac_var},
                 {"frac_histogram", frac.histogram},
                 {"frac_exp_moment", frac.exp_moment},
                 {"frac_exp_moment_bound", frac.exp_moment_bound},
                 {"max_decomposition_error", r.max_decomposition_error}};
  if (run.results.contains("chains")) report["chains"] = run.results["chains"];
  Output out(run);
  out.stream() << report.dump(2) << '\n';
  run.results = report;

  if (!cdf_path.empty()) {
    auto w = r.w_values;
    std::sort(w.begin(), w.end());
    std::ofstream csv(cdf_path);
    precise(csv) << "w,ecdf,normal_cdf\n";
    const double sd = std::sqrt(v);
    for (std::size_t i = 0; i < w.size(); ++i) {
      csv << w[i] << ',' << static_cast<double>(i + 1) / static_cast<double>(w.size()) << ','
          << ergm::standard_normal_cdf(w[i] / sd) << '\n';
    }
    run.outputs.emplace_back(cdf_path);
  }
}

void cmd_c2_seq(Run& run, double alpha, double h, double t, int n_min, int n_max) {
  run.params = {{"alpha", alpha}, {"h", h}, {"t", t}, {"n_min", n_min}, {"n_max", n_max}};
  if (n_min < 3 || n_max < n_min) throw ergm::DomainError("c2-seq needs 3 <= n-min <= n-max");
  const auto rows = ergm::c2_sequence({alpha, h}, t, n_min, n_max, [&](int n) { return run.table(n); });
  Output out(run);
  auto& os = precise(out.stream());
  os << "n,t_n,c1_at_zero,u3_limit,c2,v_limit\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.t_n << ',' << r.c1_at_zero << ',' << r.u3_limit << ',' << r.c2 << ','
       << r.v_limit << '\n';
  }
  run.results = {{"rows", rows.size()}};
}

void cmd_conjecture(Run& run, double alpha, double h) {
  run.params = {{"alpha", alpha}, {"h", h}};
  const auto c = ergm::conjecture_check({alpha, h});
  json body = {{"alpha", alpha},          {"h", h},
               {"u_star", c.u_star},      {"v_theorem", c.v_theorem},
               {"v_conjecture", c.v_conjecture}, {"ratio", c.ratio}};
  Output out(run);
  out.stream() << body.dump(2) << '\n';
  run.results = body;
}

// ---------------------------------------------------------------- driver

void write_manifest(const Run& run, double seconds) {
  std::string path = run.manifest_path;
  if (path.empty() && !run.out_path.empty()) path = run.out_path + ".manifest.json";
  if (path.empty()) return;
  auto digests = [](const std::vector<fs::path>& files) {
    json a = json::array();
    for (const auto& f : files) a.push_back({{"path", f.string()}, {"sha256", sha256_file(f)}});
    return a;
  };
  json m = {{"tool", "ergm"},
            {"version", ERGM_VERSION},
            {"subcommand", run.subcommand},
            {"argv", run.argv},
            {"params", run.params},
            {"threads", run.worker_count()},
            {"wall_time_seconds", seconds},
            {"inputs", digests(run.inputs)},
            {"outputs", digests(run.outputs)},
            {"results", run.results},
            {"warnings", run.warnings}};
  std::ofstream os(path);
  os << m.dump(2) << '\n';
}

int dispatch(std::vector<std::string> args) {
  CLI::App app{"Exact, mean-field and Monte Carlo tools for the edge-triangle random graph model",
               "ergm"};
  // "-h" stays free for the edge parameter --h.
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", std::string(ERGM_VERSION));
  Run run;
  run.argv = args;
  std::string replay;
  app.add_option("--threads", run.threads, "Worker threads (0 = all cores); never changes results");
  app.add_option("--replay", replay, "Repeat the run recorded in a manifest")->check(CLI::ExistingFile);
  app.require_subcommand(0, 1);

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", run.out_path, "Output file (default: stdout)");
    sub->add_option("--manifest", run.manifest_path, "Manifest path (default: <out>.manifest.json)");
  };

  int n = 0, n_max = ergm::EnumerationOptions{}.n_max;
  auto* enumerate = app.add_subcommand("enumerate", "Coefficient table G[m,l] as CSV");
  enumerate->add_option("--n", n, "Vertices")->required();
  enumerate->add_option("--n-max", n_max, "Capacity bound (hard limit 10)");
  add_output(enumerate);

  double h = 0.0, alpha_lo = -1.0, alpha_hi = 1.0;
  std::string summary;
  auto* zeros = app.add_subcommand("zeros", "Zeros of the partition polynomial in e^alpha");
  zeros->add_option("--n", n, "Vertices")->required();
  zeros->add_option("--h", h, "Edge parameter")->required();
  zeros->add_option("--alpha-min", alpha_lo, "Clearance segment start, in alpha");
  zeros->add_option("--alpha-max", alpha_hi, "Clearance segment end, in alpha");
  zeros->add_option("--summary", summary, "Also write the residual summary JSON here");
  add_output(zeros);

  double alpha = 0.0;
  ergm::ThreeParam three{0.0, 0.0, 0.0, 2, 3};
  auto* meanfield = app.add_subcommand("meanfield", "Fixed points, free energy and CLT variance");
  auto* o_alpha = meanfield->add_option("--alpha", alpha, "Triangle parameter");
  auto* o_h = meanfield->add_option("--h", h, "Edge parameter");
  auto* o_b1 = meanfield->add_option("--beta1", three.beta1, "Edge parameter (three-parameter model)");
  auto* o_b2 = meanfield->add_option("--beta2", three.beta2, "Triangle-type parameter");
  auto* o_b3 = meanfield->add_option("--beta3", three.beta3, "Third subgraph parameter");
  meanfield->add_option("--p", three.p, "Edges of H2");
  meanfield->add_option("--q", three.q, "Edges of H3");
  o_alpha->excludes(o_b1)->excludes(o_b2)->excludes(o_b3);
  o_h->excludes(o_b1)->excludes(o_b2)->excludes(o_b3);
  add_output(meanfield);

  double alpha_max = 0.0;
  int steps = 0;
  auto* curve = app.add_subcommand("critical-curve", "First-order transition curve h = q(alpha)");
  curve->add_option("--alpha-max", alpha_max, "Last alpha of the grid")->required();
  curve->add_option("--steps", steps, "Grid points above alpha_c")->required();
  add_output(curve);

  int p = 2, q = 3, points = 50;
  auto* c3 = app.add_subcommand("c3", "Parametric critical curve of the three-parameter model");
  c3->add_option("--p", p, "Edges of H2")->required();
  c3->add_option("--q", q, "Edges of H3")->required();
  c3->add_option("--points", points, "Intervals on the u range");
  add_output(c3);

  SampleFlags sf;
  CLI::Option* o_burn = nullptr;
  CLI::Option* o_thin = nullptr;
  auto sampler_flags = [&](CLI::App* sub, bool required) {
    auto* on = sub->add_option("--n", sf.n, "Vertices");
    auto* oa = sub->add_option("--alpha", sf.alpha, "Triangle parameter");
    auto* oh = sub->add_option("--h", sf.h, "Edge parameter");
    if (required) {
      on->required();
      oa->required();
      oh->required();
    }
    sub->add_option("--seed", sf.seed, "Base seed");
    o_burn = sub->add_option("--burnin", sf.burn_in, "Steps discarded per chain (default 50 sweeps)");
    sub->add_option("--samples", sf.samples, "Draws per chain");
    o_thin = sub->add_option("--thin", sf.thin, "Steps between draws (default 1 sweep)");
    sub->add_option("--chains", sf.chains, "Independent chains");
    sub->add_option("--audit-interval", sf.audit_interval, "Steps between cache recounts");
  };
  auto* sample = app.add_subcommand("sample", "Metropolis edge-flip chains; CSV chain,step,m,ell");
  sampler_flags(sample, true);
  CLI::Option* o_burn_sample = o_burn;
  CLI::Option* o_thin_sample = o_thin;
  add_output(sample);

  std::string input, cdf;
  auto* clt = app.add_subcommand("clt-check", "Gaussianity of the standardized triangle count");
  sampler_flags(clt, true);
  clt->add_option("--input", input, "Read draws from a sample CSV instead of sampling")
      ->check(CLI::ExistingFile);
  clt->add_option("--cdf-csv", cdf, "Write sorted W with empirical and normal CDF");
  add_output(clt);

  double t = 0.0;
  int n_min = 4;
  int n_hi = 8;
  auto* c2 = app.add_subcommand("c2-seq", "Exact c''_n(sqrt(6) t / n) beside the mean-field limit");
  c2->add_option("--alpha", alpha, "Triangle parameter")->required();
  c2->add_option("--h", h, "Edge parameter")->required();
  c2->add_option("--t", t, "Shift t");
  c2->add_option("--n-min", n_min, "Smallest n");
  c2->add_option("--n-max", n_hi, "Largest n");
  add_output(c2);

  auto* conj = app.add_subcommand("conjecture", "Compare the two CLT variance forms");
  conj->add_option("--alpha", alpha, "Triangle parameter")->required();
  conj->add_option("--h", h, "Edge parameter")->required();
  add_output(conj);

  try {
    std::vector<const char*> cargv{"ergm"};
    for (const auto& a : args) cargv.push_back(a.c_str());
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (!replay.empty()) {
    if (app.get_subcommands().size() != 0) {
      std::cerr << "error: --replay takes no subcommand\n";
      return 1;
    }
    std::ifstream in(replay);
    const auto m = json::parse(in);
    return dispatch(m.at("argv").get<std::vector<std::string>>());
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 1;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    auto* sub = app.get_subcommands().front();
    run.subcommand = sub->get_name();
    if (sub == enumerate) {
      cmd_enumerate(run, n, n_max);
    } else if (sub == zeros) {
      cmd_zeros(run, n, h, alpha_lo, alpha_hi, summary);
    } else if (sub == meanfield) {
      const bool three_mode = o_b1->count() + o_b2->count() + o_b3->count() > 0;
      if (!three_mode && (o_alpha->count() == 0 || o_h->count() == 0)) {
        std::cerr << "error: meanfield needs --alpha and --h, or --beta1/--beta2/--beta3\n";
        return 1;
      }
      if (three_mode) {
        cmd_meanfield(run, three);
      } else {
        cmd_meanfield(run, ergm::TwoParam{alpha, h});
      }
    } else if (sub == curve) {
      cmd_critical_curve(run, alpha_max, steps);
    } else if (sub == c3) {
      cmd_c3(run, p, q, points);
    } else if (sub == sample) {
      cmd_sample(run, sf, o_burn_sample->count() > 0, o_thin_sample->count() > 0);
    } else if (sub == clt) {
      cmd_clt_check(run, sf, o_burn->count() > 0, o_thin->count() > 0, input, cdf);
    } else if (sub == c2) {
      cmd_c2_seq(run, alpha, h, t, n_min, n_hi);
    } else if (sub == conj) {
      cmd_conjecture(run, alpha, h);
    }
  } catch (const ergm::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return 3;
  } catch (const ergm::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << " (best residual " << e.best_residual() << ")\n";
    return 2;
  } catch (const ergm::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ergm::AuditError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(run, seconds);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::cout.sync_with_stdio(false);
  return dispatch(std::vector<std::string>(argv + 1, argv + argc));
}
