#include "dp5/cli.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "dp5/density.hpp"
#include "dp5/dirichlet.hpp"
#include "dp5/enumerate.hpp"
#include "dp5/torsor.hpp"

namespace dp5 {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string num(double v, int digits = 12) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

std::vector<i64> default_B(const std::string& sub) {
  if (sub == "predict") return {1000, 10000, 100000};
  return {100};
}

Vertex parse_vertex(const std::string& s) {
  static const char* names[kVertexCount] = {"E1", "E2", "E3", "E4", "E5", "E6", "A1", "A2"};
  for (int i = 0; i < kVertexCount; ++i)
    if (s == names[i]) return static_cast<Vertex>(i);
  throw std::invalid_argument("unknown vertex '" + s + "' (expected E1..E6, A1, A2)");
}

CoprimalityGraph graph_for(const std::string& fault) {
  if (fault.empty()) return CoprimalityGraph::standard();
  const auto dash = fault.find('-');
  if (dash == std::string::npos) throw std::invalid_argument("--inject-fault expects U-V, e.g. A1-E1");
  const Vertex u = parse_vertex(fault.substr(0, dash));
  const Vertex v = parse_vertex(fault.substr(dash + 1));
  if (!CoprimalityGraph::standard().adjacent(u, v))
    throw std::invalid_argument("--inject-fault: " + fault + " is not an edge");
  return CoprimalityGraph::standard().without(u, v);
}

CountOptions count_options(const RunConfig& cfg) {
  CountOptions o;
  o.workers = cfg.workers;
  o.retention_cap = cfg.retention_cap;
  return o;
}

void print_reports(const RunConfig& cfg, const std::vector<CountReport>& rows, std::ostream& out) {
  if (cfg.format == "csv") {
    out << csv_header() << '\n';
    for (const auto& r : rows) out << to_csv_row(r) << '\n';
    return;
  }
  if (cfg.format == "json") {
    out << "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i) out << "  " << to_json(rows[i]) << (i + 1 < rows.size() ? ",\n" : "\n");
    out << "]\n";
    return;
  }
  out << std::left << std::setw(10) << "B" << std::setw(8) << "method" << std::right << std::setw(12) << "count";
  if (cfg.split) out << std::setw(12) << "N_a" << std::setw(12) << "N_b1" << std::setw(12) << "N_b2";
  if (cfg.main_term) out << std::setw(16) << "main_term" << std::setw(10) << "ratio";
  if (cfg.timing) out << std::setw(10) << "seconds";
  out << '\n';
  for (const auto& r : rows) {
    out << std::left << std::setw(10) << r.B << std::setw(8) << r.method << std::right << std::setw(12) << r.count;
    if (cfg.split) {
      if (r.split)
        out << std::setw(12) << r.split->na << std::setw(12) << r.split->nb1 << std::setw(12) << r.split->nb2;
      else
        out << std::setw(36) << "";
    }
    if (cfg.main_term) {
      out << std::setw(16) << (r.main_term ? num(*r.main_term, 8) : "");
      out << std::setw(10) << (r.ratio() ? num(*r.ratio(), 5) : "");
    }
    if (cfg.timing) out << std::setw(10) << (r.seconds ? num(*r.seconds, 3) : "");
    out << '\n';
  }
}

}  // namespace

void RunConfig::validate() const {
  if (B.empty()) throw std::invalid_argument("no B given");
  for (i64 b : B)
    if (b < 1) throw std::invalid_argument("B must be >= 1");
  if (method != "naive" && method != "torsor" && method != "both")
    throw std::invalid_argument("--method must be naive, torsor or both");
  if (method != "torsor")
    for (i64 b : B)
      if (b > kNaiveFeasibilityBound)
        throw std::invalid_argument("naive counting is limited to B <= " + std::to_string(kNaiveFeasibilityBound));
  if (!(tol > 0)) throw std::invalid_argument("--tol must be > 0");
  if (!(A > 0)) throw std::invalid_argument("--A must be > 0");
  if (split)
    for (i64 b : B)
      if (b < 3) throw std::invalid_argument("--split needs B >= 3");
  if (p_max < 2) throw std::invalid_argument("--p-max must be >= 2");
  if (format != "text" && format != "csv" && format != "json")
    throw std::invalid_argument("--format must be text, csv or json");
  if (workers < 1) throw std::invalid_argument("--workers must be >= 1");
  if (box < 1 || theta_bound < 1) throw std::invalid_argument("--box and --theta-bound must be >= 1");
  if (subcommand == "verify")
    for (i64 b : B)
      if (b > kNaiveFeasibilityBound)
        throw std::invalid_argument("verify runs the naive count; B <= " + std::to_string(kNaiveFeasibilityBound));
  if (!inject_fault.empty()) graph_for(inject_fault);
}

int cmd_count(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const CountOptions opts = count_options(cfg);
  std::optional<double> omega;
  if (cfg.main_term) omega = omega_infty(cfg.tol).value;

  std::vector<CountReport> rows;
  bool agree = true;
  for (i64 B : cfg.B) {
    std::optional<u64> naive_count;
    if (cfg.method != "torsor") {
      const auto t = Clock::now();
      const CountResult r = count_naive(B, opts);
      CountReport rep;
      rep.B = B;
      rep.method = "naive";
      rep.count = r.count;
      if (cfg.timing) rep.seconds = since(t);
      naive_count = r.count;
      rows.push_back(rep);
    }
    if (cfg.method != "naive") {
      const auto t = Clock::now();
      CountReport rep;
      rep.B = B;
      rep.method = "torsor";
      if (cfg.split) {
        rep.split = count_split(B, cfg.A, opts);
        rep.count = rep.split->total();
      } else {
        rep.count = count_torsor(B, opts).count;
      }
      if (cfg.timing) rep.seconds = since(t);
      if (naive_count && *naive_count != rep.count) {
        agree = false;
        err << "B=" << B << ": naive count " << *naive_count << " != torsor count " << rep.count << '\n';
      }
      rows.push_back(rep);
    }
  }
  if (omega)
    for (auto& r : rows) r.main_term = predicted_main_term(static_cast<u64>(r.B), *omega).value;
  print_reports(cfg, rows, out);
  return agree ? kExitOk : kExitVerification;
}

int cmd_constant(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const PeyreConstant c = peyre_constant(cfg.tol, cfg.p_max);
  if (cfg.format == "json") {
    json j;
    j["alpha"] = c.alpha.str();
    j["euler_product"] = c.euler.value;
    j["euler_tail_bound"] = c.euler.tail_bound;
    j["p_max"] = c.euler.p_max;
    j["omega_infty"] = c.omega.value;
    j["omega_infty_error"] = c.omega.error;
    j["c"] = c.value;
    j["c_error"] = c.error;
    j["tol"] = cfg.tol;
    out << j.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    out << "alpha,euler_product,euler_tail_bound,p_max,omega_infty,omega_infty_error,c,c_error\n";
    out << c.alpha.str() << ',' << num(c.euler.value) << ',' << num(c.euler.tail_bound) << ',' << c.euler.p_max << ','
        << num(c.omega.value) << ',' << num(c.omega.error) << ',' << num(c.value) << ',' << num(c.error) << '\n';
  } else {
    out << "alpha         " << c.alpha << '\n';
    out << "euler product " << num(c.euler.value) << "  (primes <= " << c.euler.p_max << ", tail <= "
        << num(c.euler.tail_bound, 3) << ")\n";
    out << "omega_infty   " << num(c.omega.value) << " +- " << num(c.omega.error, 3) << '\n';
    out << "c             " << num(c.value) << " +- " << num(c.error, 3) << '\n';
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  struct Check {
    std::string name;
    bool pass;
    std::string detail;
  };
  std::vector<Check> checks;
  const CountOptions opts = count_options(cfg);

  for (i64 B : cfg.B) {
    const BijectionReport b = verify_bijection(B, opts);
    checks.push_back({"bijection B=" + std::to_string(B), b.ok,
                      "naive " + std::to_string(b.naive_count) + ", torsor " + std::to_string(b.torsor_count) +
                          (b.message.empty() ? "" : ", " + b.message)});
  }
  {
    const EquivalenceReport e = check_coprimality_equivalence(cfg.box, graph_for(cfg.inject_fault));
    std::string d = std::to_string(e.solutions) + " solutions, " + std::to_string(e.mismatches) + " mismatches";
    if (e.first_mismatch) {
      const TorsorPoint& t = *e.first_mismatch;
      std::ostringstream os;
      os << ", first (" << t.eta1 << ',' << t.eta2 << ',' << t.eta3 << ',' << t.eta4 << ',' << t.eta5 << ',' << t.eta6
         << ';' << t.alpha1 << ',' << t.alpha2 << ')';
      d += os.str();
    }
    checks.push_back({"coprimality box=" + std::to_string(cfg.box), e.mismatches == 0, d});
  }
  for (i64 B : cfg.B) {
    const HeightBoundReport h = check_height_bounds(B, opts);
    checks.push_back({"height bounds B=" + std::to_string(B), h.violations == 0,
                      std::to_string(h.solutions) + " solutions, " + std::to_string(h.violations) + " violations"});
  }
  {
    const ThetaConsistency t = check_theta_consistency(cfg.theta_bound);
    checks.push_back({"theta consistency eta<=" + std::to_string(cfg.theta_bound), t.mismatches == 0,
                      std::to_string(t.checked) + " tuples, " + std::to_string(t.mismatches) + " mismatches"});
  }
  {
    double worst = 0;
    bool ok = true;
    for (const auto& c : check_local_factor_oracle()) {
      ok = ok && c.ok();
      worst = std::max(worst, std::abs(c.brute.value - c.closed));
    }
    checks.push_back({"local factor oracle", ok, "max |brute - closed| = " + num(worst, 3)});
  }
  {
    const ScalingCheck s = check_G2_scaling(cfg.tol);
    checks.push_back({"G2 scaling", s.ok(), "spread " + num(s.spread, 3) + ", |omega - G2(1)| = " + num(s.omega_gap, 3) +
                                                " (allowed " + num(s.omega_allowed, 3) + ")"});
  }

  bool all = true;
  for (const auto& c : checks) all = all && c.pass;
  if (cfg.format == "json") {
    json j;
    j["pass"] = all;
    j["checks"] = json::array();
    for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    out << j.dump(2) << '\n';
  } else {
    for (const auto& c : checks) out << (c.pass ? "PASS  " : "FAIL  ") << c.name << ": " << c.detail << '\n';
    out << (all ? "all checks passed" : "verification FAILED") << '\n';
  }
  return all ? kExitOk : kExitVerification;
}

int cmd_predict(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const QuadratureResult omega = omega_infty(cfg.tol);
  const EulerProduct euler = euler_product(cfg.p_max);
  const double c = alpha_constant().to_double() * euler.value * omega.value;
  const CountOptions opts = count_options(cfg);

  struct Row {
    i64 B;
    u64 count;
    double main_term, asymptote, seconds;
  };
  std::vector<Row> rows;
  for (i64 B : cfg.B) {
    const auto t = Clock::now();
    const u64 n = count_torsor(B, opts).count;
    const double mt = predicted_main_term(static_cast<u64>(B), omega.value, B <= 10000).value;
    const double L = std::log(static_cast<double>(B));
    rows.push_back({B, n, mt, c * static_cast<double>(B) * L * L * L * L, since(t)});
  }
  auto ratio = [](double n, double d) { return d > 0 ? num(n / d) : std::string(); };
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      json j;
      j["B"] = r.B;
      j["count"] = r.count;
      j["main_term"] = r.main_term;
      j["ratio"] = r.main_term > 0 ? json(r.count / r.main_term) : json(nullptr);
      j["asymptote"] = r.asymptote;
      j["asymptote_ratio"] = r.asymptote > 0 ? json(r.count / r.asymptote) : json(nullptr);
      j["seconds"] = cfg.timing ? json(r.seconds) : json(nullptr);
      arr.push_back(j);
    }
    out << arr.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    out << "B,count,main_term,ratio,asymptote,asymptote_ratio,seconds\n";
    for (const auto& r : rows)
      out << r.B << ',' << r.count << ',' << num(r.main_term) << ',' << ratio(r.count, r.main_term) << ','
          << num(r.asymptote) << ',' << ratio(r.count, r.asymptote) << ',' << (cfg.timing ? num(r.seconds) : "")
          << '\n';
  } else {
    out << "omega_infty = " << num(omega.value, 8) << ", c = " << num(c, 8) << '\n';
    out << std::setw(10) << "B" << std::setw(14) << "count" << std::setw(16) << "main_term" << std::setw(10) << "ratio"
        << std::setw(16) << "cB(logB)^4" << std::setw(10) << "ratio" << '\n';
    for (const auto& r : rows)
      out << std::setw(10) << r.B << std::setw(14) << r.count << std::setw(16) << num(r.main_term, 8) << std::setw(10)
          << num(r.count / r.main_term, 5) << std::setw(16) << num(r.asymptote, 8) << std::setw(10)
          << num(r.count / r.asymptote, 5) << '\n';
  }
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rational points of bounded height on a quintic del Pezzo surface"};
  app.set_config("--config", "", "key=value file with option defaults");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  cfg.workers = default_workers();
  std::vector<std::string> b_args;
  bool json_flag = false;
  bool no_timing = false;

  app.add_option("--B", b_args, "height bound(s); repeat or comma-separate")->delimiter(',');
  app.add_option("--method", cfg.method, "naive, torsor or both")->capture_default_str();
  app.add_option("--A", cfg.A, "exponent A of the N_b1/N_b2 split")->capture_default_str();
  app.add_flag("--split", cfg.split, "report N_a, N_b1, N_b2");
  app.add_flag("--main-term", cfg.main_term, "add the predicted main term and ratio");
  app.add_option("--tol", cfg.tol, "relative quadrature tolerance")->capture_default_str();
  app.add_option("--p-max", cfg.p_max, "Euler product prime cutoff")->capture_default_str();
  app.add_option("--format", cfg.format, "text, csv or json")->capture_default_str();
  app.add_flag("--json", json_flag, "same as --format json");
  app.add_option("--workers", cfg.workers, "worker threads (env DP5_WORKERS)")->capture_default_str();
  app.add_option("--retention-cap", cfg.retention_cap, "max points kept in memory")->capture_default_str();
  app.add_flag("--no-timing", no_timing, "leave the seconds column empty");
  app.add_option("--box", cfg.box, "coprimality check box size")->capture_default_str();
  app.add_option("--theta-bound", cfg.theta_bound, "theta consistency bound")->capture_default_str();
  app.add_option("--inject-fault", cfg.inject_fault, "test mode: drop edge U-V from the coprimality graph");

  app.add_subcommand("count", "count points of height <= B");
  app.add_subcommand("constant", "alpha, Euler product, omega_infty and c");
  app.add_subcommand("verify", "run the consistency checks");
  app.add_subcommand("predict", "counts against the predicted main term");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (json_flag) cfg.format = "json";
  cfg.timing = !no_timing;
  try {
    for (const auto& s : b_args) {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size() || v != std::floor(v) || v < 1 || v > 1e15) throw std::invalid_argument("bad B: " + s);
      cfg.B.push_back(static_cast<i64>(v));
    }
    if (cfg.B.empty()) cfg.B = default_B(cfg.subcommand);
    cfg.validate();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (cfg.subcommand == "count") return cmd_count(cfg, out, err);
    if (cfg.subcommand == "constant") return cmd_constant(cfg, out, err);
    if (cfg.subcommand == "verify") return cmd_verify(cfg, out, err);
    return cmd_predict(cfg, out, err);
  } catch (const NonConvergence& e) {
    err << "quadrature did not converge: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const std::logic_error& e) {
    err << "consistency failure: " << e.what() << '\n';
    return kExitVerification;
  }
}

}  // namespace dp5
