#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracspec/counting.hpp"
#include "fracspec/errors.hpp"
#include "fracspec/horn.hpp"
#include "fracspec/minkowski.hpp"
#include "fracspec/parallel.hpp"
#include "fracspec/summation.hpp"

namespace {

using nlohmann::ordered_json;

struct JobSpec {
  std::string command;
  std::string string_spec;  // e.g. "power:d=0.5"
  double L = 1.0;
  std::vector<double> prefix;
  std::string mode = "exact";
  double c1 = 1.0;
  double c2 = 1.0;
  double p = 2.0;
  std::vector<double> lambda_grid;
  std::vector<double> eps_grid;
  std::vector<double> d_grid;
  double probe_d = 0.0;  // 0 = take the tail dimension
  std::string algo = "naive";
  std::int64_t m = 4;
  std::int64_t n = 2;
  double zeta_d = 2.0;
  double tol = 1e-10;
  std::string out = "json";
  int threads = 0;  // 0 = auto
};

// 17 significant digits: full binary64 round trip, the CSV convention.
std::string fmt17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Shortest decimal that parses back to the same double, for plain output.
std::string fmt_shortest(double v) {
  char buf[48];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

[[noreturn]] void usage_error(const std::string& msg) {
  throw CLI::ValidationError(msg);
}

fracspec::DimensionFunction parse_family(const std::string& spec) {
  auto colon = spec.find(':');
  std::string family = spec.substr(0, colon);
  double d = 0.0;
  double a = 0.0;
  bool have_d = false;
  if (colon != std::string::npos) {
    std::string params = spec.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < params.size()) {
      auto next = params.find(',', pos);
      std::string kv = params.substr(pos, next - pos);
      auto eq = kv.find('=');
      if (eq == std::string::npos) usage_error("bad family parameter '" + kv + "'");
      std::string key = kv.substr(0, eq);
      char* end = nullptr;
      double val = std::strtod(kv.c_str() + eq + 1, &end);
      if (end == kv.c_str() + eq + 1) usage_error("bad number in '" + kv + "'");
      if (key == "d") {
        d = val;
        have_d = true;
      } else if (key == "a") {
        a = val;
      } else {
        usage_error("unknown family parameter '" + key + "'");
      }
      if (next == std::string::npos) break;
      pos = next + 1;
    }
  }
  if (!have_d) usage_error("family spec needs d, e.g. power:d=0.5");
  if (family == "power") return fracspec::DimensionFunction::pure_power(d);
  if (family == "powerlog") return fracspec::DimensionFunction::power_log(d, a);
  if (family == "powerloglog") return fracspec::DimensionFunction::power_log_log(d, a);
  usage_error("unknown family '" + family + "' (power, powerlog, powerloglog)");
}

fracspec::TailMode parse_mode(const std::string& mode) {
  if (mode == "exact") return fracspec::TailMode::Exact;
  if (mode == "asymptotic") return fracspec::TailMode::Asymptotic;
  if (mode == "twosided") return fracspec::TailMode::TwoSided;
  usage_error("unknown tail mode '" + mode + "' (exact, asymptotic, twosided)");
}

fracspec::FractalString build_string(const JobSpec& job) {
  if (job.string_spec.empty()) {
    if (job.prefix.empty()) usage_error("need --string and/or --prefix");
    return fracspec::FractalString(job.prefix);
  }
  fracspec::TailLaw law{parse_family(job.string_spec)};
  law.mode = parse_mode(job.mode);
  law.L = job.L;
  law.lower_const = job.c1;
  law.upper_const = job.c2;
  return fracspec::FractalString(job.prefix, law);
}

const char* algo_name(fracspec::CountAlgorithm a) {
  switch (a) {
    case fracspec::CountAlgorithm::Naive: return "naive";
    case fracspec::CountAlgorithm::Hyperbola: return "hyperbola";
    case fracspec::CountAlgorithm::AsymptoticOnly: return "asymptotic";
  }
  return "?";
}

void require_grid(const std::vector<double>& grid, const char* name,
                  bool decreasing = false) {
  if (grid.empty()) usage_error(std::string(name) + " grid must be nonempty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0)) usage_error(std::string(name) + " values must be nonnegative");
    if (i > 0) {
      bool ok = decreasing ? grid[i] < grid[i - 1] : grid[i] >= grid[i - 1];
      if (!ok) {
        usage_error(std::string(name) + " grid must be sorted " +
                    (decreasing ? "decreasing" : "ascending"));
      }
    }
  }
}

void emit_count_rows(const JobSpec& job, std::string& out) {
  fracspec::FractalString s = build_string(job);
  bool csv = job.out == "csv";
  if (csv) {
    out += "lambda,p,spec,algorithm,exact,weyl,boundary,residual,cutoff_j\n";
  }
  for (double lambda : job.lambda_grid) {
    fracspec::CountBreakdown b;
    if (job.algo == "naive") {
      b = fracspec::count_naive(s, job.p, lambda);
    } else if (job.algo == "hyperbola") {
      b = fracspec::count_hyperbola(s, job.p, lambda);
    } else if (job.algo == "asym") {
      b = fracspec::asymptotic_count(s, job.p, lambda);
    } else {
      usage_error("unknown --algo '" + job.algo + "' (naive, hyperbola, asym)");
    }
    if (csv) {
      out += fmt17(b.lambda);
      out += ',';
      out += fmt17(b.p);
      out += ',';
      out += csv_quote(job.string_spec);
      out += ',';
      out += algo_name(b.algorithm);
      out += ',';
      if (b.exact) out += std::to_string(*b.exact);
      out += ',';
      if (b.weyl_term) out += fmt17(*b.weyl_term);
      out += ',';
      out += fmt17(b.boundary_term);
      out += ',';
      if (b.residual) out += fmt17(*b.residual);
      out += ',';
      out += std::to_string(b.cutoff_j);
      out += '\n';
    } else {
      ordered_json row;
      row["lambda"] = b.lambda;
      row["p"] = b.p;
      row["spec"] = job.string_spec;
      row["L"] = job.L;
      row["algorithm"] = algo_name(b.algorithm);
      if (b.exact) row["exact"] = *b.exact;
      if (b.weyl_term) row["weyl"] = *b.weyl_term;
      row["boundary"] = b.boundary_term;
      if (b.residual) row["residual"] = *b.residual;
      if (b.bound_lower) row["bound_lower"] = *b.bound_lower;
      if (b.bound_upper) row["bound_upper"] = *b.bound_upper;
      row["cutoff_j"] = b.cutoff_j;
      out += row.dump();
      out += '\n';
    }
  }
}

void emit_content_rows(const JobSpec& job, std::string& out) {
  fracspec::FractalString s = build_string(job);
  double probe = job.probe_d;
  if (probe == 0.0) {
    if (!s.tail()) usage_error("content needs --probe-d for a prefix-only string");
    probe = s.tail()->df.d();
  }
  fracspec::ContentEstimate est = fracspec::minkowski_content(s, probe, job.eps_grid);
  if (job.out == "csv") {
    out += "eps,tubular_measure,scaled_value\n";
    for (std::size_t i = 0; i < est.eps_grid.size(); ++i) {
      double tub = fracspec::tubular_measure(s, est.eps_grid[i]);
      out += fmt17(est.eps_grid[i]);
      out += ',';
      out += fmt17(tub);
      out += ',';
      out += fmt17(est.values[i]);
      out += '\n';
    }
  } else {
    for (std::size_t i = 0; i < est.eps_grid.size(); ++i) {
      double tub = fracspec::tubular_measure(s, est.eps_grid[i]);
      ordered_json row;
      row["eps"] = est.eps_grid[i];
      row["spec"] = job.string_spec;
      row["probe_d"] = probe;
      row["tubular"] = tub;
      row["value"] = est.values[i];
      out += row.dump();
      out += '\n';
    }
    ordered_json tailrow;
    tailrow["upper"] = est.upper;
    tailrow["lower"] = est.lower;
    tailrow["measurable"] = est.measurable;
    out += tailrow.dump();
    out += '\n';
  }
}

void emit_dimension_row(const JobSpec& job, std::string& out) {
  fracspec::FractalString s = build_string(job);
  std::vector<double> d_grid = job.d_grid;
  if (d_grid.empty()) d_grid = {0.05, 0.95};
  double dim = fracspec::dimension_scan(s, d_grid, job.eps_grid);
  if (job.out == "csv") {
    out += "spec,dimension\n";
    out += csv_quote(job.string_spec);
    out += ',';
    out += fmt17(dim);
    out += '\n';
  } else {
    ordered_json row;
    row["spec"] = job.string_spec;
    row["dimension"] = dim;
    out += row.dump();
    out += '\n';
  }
}

void emit_horn_rows(const JobSpec& job, std::string& out) {
  fracspec::HornDomain horn(parse_family(job.string_spec), job.L);
  bool csv = job.out == "csv";
  if (csv) out += "lambda,lower,upper,lower_pred,upper_pred\n";
  for (double lambda : job.lambda_grid) {
    fracspec::BracketResult r = fracspec::horn_bracket(horn, lambda);
    fracspec::HornBounds bounds = fracspec::horn_asymptotic_bounds(horn, lambda);
    if (csv) {
      out += fmt17(lambda);
      out += ',';
      out += std::to_string(r.lower);
      out += ',';
      out += std::to_string(r.upper);
      out += ',';
      out += fmt17(bounds.lower_pred);
      out += ',';
      out += fmt17(bounds.upper_pred);
      out += '\n';
    } else {
      ordered_json row;
      row["lambda"] = lambda;
      row["spec"] = job.string_spec;
      row["L"] = job.L;
      row["lower"] = r.lower;
      row["upper"] = r.upper;
      row["lower_pred"] = bounds.lower_pred;
      row["upper_pred"] = bounds.upper_pred;
      row["j_max_lower"] = r.j_max_lower;
      row["j_max_upper"] = r.j_max_upper;
      out += row.dump();
      out += '\n';
    }
  }
}

void emit_oscillate_rows(const JobSpec& job, std::string& out) {
  bool csv = job.out == "csv";
  if (csv) out += "lambda,m,n,p,exact,s_value\n";
  for (double lambda : job.lambda_grid) {
    fracspec::OscillationSample sample =
        fracspec::oscillating_count(job.m, job.n, job.p, lambda);
    if (csv) {
      out += fmt17(lambda);
      out += ',';
      out += std::to_string(job.m);
      out += ',';
      out += std::to_string(job.n);
      out += ',';
      out += fmt17(job.p);
      out += ',';
      out += std::to_string(sample.exact);
      out += ',';
      out += fmt17(sample.s_value);
      out += '\n';
    } else {
      ordered_json row;
      row["lambda"] = lambda;
      row["m"] = job.m;
      row["n"] = job.n;
      row["p"] = job.p;
      row["exact"] = sample.exact;
      row["s_value"] = sample.s_value;
      out += row.dump();
      out += '\n';
    }
  }
}

void execute(const JobSpec& job, std::string& out) {
  fracspec::set_thread_count(job.threads);
  if (job.command == "count" || job.command == "asym") {
    require_grid(job.lambda_grid, "lambda");
    JobSpec j = job;
    if (job.command == "asym") j.algo = "asym";
    emit_count_rows(j, out);
  } else if (job.command == "content") {
    require_grid(job.eps_grid, "eps", /*decreasing=*/true);
    emit_content_rows(job, out);
  } else if (job.command == "dimension") {
    require_grid(job.eps_grid, "eps", /*decreasing=*/true);
    emit_dimension_row(job, out);
  } else if (job.command == "horn") {
    require_grid(job.lambda_grid, "lambda");
    emit_horn_rows(job, out);
  } else if (job.command == "oscillate") {
    require_grid(job.lambda_grid, "lambda");
    emit_oscillate_rows(job, out);
  } else if (job.command == "zeta") {
    out += fmt_shortest(fracspec::zeta_extended(job.zeta_d, job.tol));
    out += '\n';
  } else if (job.command == "pip") {
    out += fmt_shortest(fracspec::pi_p(job.p));
    out += '\n';
  } else {
    usage_error("no command given");
  }
}

void load_job_file(const std::string& path, JobSpec& job) {
  std::ifstream in(path);
  if (!in) usage_error("cannot open job file '" + path + "'");
  ordered_json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    usage_error(std::string("bad job file: ") + e.what());
  }
  auto get = [&doc](const char* key, auto& field) {
    if (doc.contains(key)) field = doc[key].template get<std::decay_t<decltype(field)>>();
  };
  get("command", job.command);
  get("string", job.string_spec);
  get("L", job.L);
  get("prefix", job.prefix);
  get("mode", job.mode);
  get("c1", job.c1);
  get("c2", job.c2);
  get("p", job.p);
  get("lambda_grid", job.lambda_grid);
  get("eps_grid", job.eps_grid);
  get("d_grid", job.d_grid);
  get("probe_d", job.probe_d);
  get("algo", job.algo);
  get("m", job.m);
  get("n", job.n);
  get("d", job.zeta_d);
  get("tol", job.tol);
  get("output", job.out);
  get("threads", job.threads);
  if (job.command.empty()) usage_error("job file needs a \"command\"");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fracspec: eigenvalue counting for fractal strings and 2D horns\n"
      "Families: power:d=0.5 | powerlog:d=0.5,a=1 | powerloglog:d=0.5,a=2"};
  app.require_subcommand(0, 1);

  JobSpec job;
  std::string job_file;
  app.add_option("--job", job_file, "JSON job file describing the run");
  app.add_option("--threads", job.threads, "worker threads (0 = auto)");

  auto add_string_opts = [&](CLI::App* cmd) {
    cmd->add_option("--string", job.string_spec, "tail family, e.g. power:d=0.5");
    cmd->add_option("--L", job.L, "tail scale: l_j = L g(j)");
    cmd->add_option("--prefix", job.prefix, "explicit leading lengths");
    cmd->add_option("--mode", job.mode, "tail mode: exact|asymptotic|twosided");
    cmd->add_option("--c1", job.c1, "twosided lower constant");
    cmd->add_option("--c2", job.c2, "twosided upper constant");
  };
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", job.out, "output format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--tol", job.tol, "tolerance where applicable");
    cmd->add_option("--threads", job.threads, "worker threads (0 = auto)");
  };

  CLI::App* count = app.add_subcommand("count", "exact eigenvalue counts");
  add_string_opts(count);
  count->add_option("--p", job.p, "p-Laplacian exponent (p > 1)");
  count->add_option("--lambda", job.lambda_grid, "spectral thresholds")
      ->check(CLI::NonNegativeNumber);
  count->add_option("--algo", job.algo, "naive|hyperbola|asym");
  add_common(count);
  count->callback([&] { job.command = "count"; });

  CLI::App* asym = app.add_subcommand("asym", "asymptotic count laws");
  add_string_opts(asym);
  asym->add_option("--p", job.p, "p-Laplacian exponent (p > 1)");
  asym->add_option("--lambda", job.lambda_grid, "spectral thresholds")
      ->check(CLI::PositiveNumber);
  add_common(asym);
  asym->callback([&] { job.command = "asym"; });

  CLI::App* content = app.add_subcommand("content", "tube volumes and scaled content");
  add_string_opts(content);
  content->add_option("--eps", job.eps_grid, "decreasing collar widths")
      ->check(CLI::PositiveNumber);
  content->add_option("--probe-d", job.probe_d, "probe exponent (default: tail d)");
  add_common(content);
  content->callback([&] { job.command = "content"; });

  CLI::App* dimension = app.add_subcommand("dimension", "boundary dimension scan");
  add_string_opts(dimension);
  dimension->add_option("--eps", job.eps_grid, "decreasing collar widths")
      ->check(CLI::PositiveNumber);
  dimension->add_option("--d-grid", job.d_grid, "probe range in (0,1)");
  add_common(dimension);
  dimension->callback([&] { job.command = "dimension"; });

  CLI::App* horn = app.add_subcommand("horn", "2D horn bracket counts");
  horn->add_option("--string", job.string_spec, "profile family with d > 1");
  horn->add_option("--L", job.L, "profile scale");
  horn->add_option("--lambda", job.lambda_grid, "spectral thresholds")
      ->check(CLI::PositiveNumber);
  add_common(horn);
  horn->callback([&] { job.command = "horn"; });

  CLI::App* oscillate = app.add_subcommand("oscillate", "self-similar oscillating counts");
  oscillate->add_option("--m", job.m, "intervals per level (m > n)");
  oscillate->add_option("--n", job.n, "length shrink base (n >= 2)");
  oscillate->add_option("--p", job.p, "p-Laplacian exponent (p > 1)");
  oscillate->add_option("--lambda", job.lambda_grid, "spectral thresholds")
      ->check(CLI::PositiveNumber);
  add_common(oscillate);
  oscillate->callback([&] { job.command = "oscillate"; });

  CLI::App* zeta = app.add_subcommand("zeta", "Riemann zeta on (0,1) or (1,inf)");
  zeta->add_option("d", job.zeta_d, "argument (d > 0, d != 1)")->required();
  add_common(zeta);
  zeta->callback([&] { job.command = "zeta"; });

  CLI::App* pip = app.add_subcommand("pip", "the p-sine half period");
  pip->add_option("--p", job.p, "exponent (p > 1)");
  add_common(pip);
  pip->callback([&] { job.command = "pip"; });

  std::string out;
  try {
    app.parse(argc, argv);
    if (!job_file.empty()) load_job_file(job_file, job);
    if (job.command.empty()) usage_error("no command given");
    execute(job, out);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const fracspec::Error& e) {
    std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::fwrite(out.data(), 1, out.size(), stdout);
  return 0;
}
