#include "dp5/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace dp5 {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i64 ceil_div(i64 a, i64 b) { return -floor_div(-a, b); }

i64 isqrt(i64 n) {
  if (n <= 0) return 0;
  auto r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Inverse of a modulo m for coprime a, m >= 1.
i64 mod_inverse(i64 a, i64 m) {
  if (m == 1) return 0;
  i64 old_r = ((a % m) + m) % m, r = m;
  i64 old_s = 1, s = 0;
  while (r != 0) {
    const i64 q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  return ((old_s % m) + m) % m;
}

// A block of work: fixed eta1..eta4 and a range of eta5.
struct WorkItem {
  EtaTuple eta;
  i64 e5_begin;
  i64 e5_end;  // inclusive
};

std::vector<WorkItem> torsor_work_items(i64 B) {
  std::vector<WorkItem> items;
  for (i64 e1 = 1; e1 * e1 <= B; ++e1) {
    for (i64 e2 = 1; e1 * e1 * e2 * e2 <= B; ++e2) {
      if (std::gcd(e1, e2) != 1) continue;
      for (i64 e3 = 1; e1 * e1 * e2 * e2 * e3 * e3 * e3 <= B; ++e3) {
        const i64 base3 = e1 * e1 * e2 * e2 * e3 * e3 * e3;
        for (i64 e4 = 1; base3 * e4 * e4 <= B; ++e4) {
          if (std::gcd(e1, e4) != 1 || std::gcd(e2, e4) != 1) continue;
          const i64 e5_max = B / (base3 * e4 * e4);
          // Dyadic eta5 blocks; the work per eta5 decays quickly.
          for (i64 lo = 1; lo <= e5_max; lo *= 2) {
            items.push_back({{e1, e2, e3, e4}, lo, std::min(e5_max, 2 * lo - 1)});
          }
        }
      }
    }
  }
  return items;
}

// Enumerates every torsor point with H(psi) <= B satisfying the reduced
// coprimality conditions. With tight_eta6 the eta6 range is cut by the two
// necessary bounds e1e2e3^2e4^2e5^2|e6| <= 2B and e3e4^2e5^3e6^2 <= 2B;
// otherwise only by |e6| <= B / (e3 e4 e5 min(e1, e2)) from x3 and x5.
template <class Visit>
void scan_item(const WorkItem& item, i64 B, bool tight_eta6, Visit&& visit) {
  const auto [e1, e2, e3, e4] = item.eta;
  const i64 inv_e1 = mod_inverse(e1, e2);
  const i64 e123 = e1 * e2 * e3;
  const i64 e1234 = e123 * e4;
  const i64 l1_base = B / (e1 * e1 * e2 * e3 * e3 * e4);
  const i64 l2_base = B / (e1 * e2 * e2 * e3 * e3 * e4);
  TorsorPoint t{e1, e2, e3, e4, 1, 1, 0, 0};

  for (i64 e5 = item.e5_begin; e5 <= item.e5_end; ++e5) {
    if (std::gcd(e5, e123) != 1) continue;
    i64 e6_max;
    if (tight_eta6) {
      const i128 k1 = static_cast<i128>(e1 * e2 * e3 * e3 * e4 * e4) * e5 * e5;
      const i128 k2 = static_cast<i128>(e3 * e4 * e4) * e5 * e5 * e5;
      if (k1 > 2 * B || k2 > 2 * B) continue;
      e6_max = std::min(2 * B / static_cast<i64>(k1), isqrt(2 * B / static_cast<i64>(k2)));
    } else {
      e6_max = B / (e3 * e4 * e5 * std::min(e1, e2));
    }
    const i64 x3_base = e1 * e3 * e4 * e5;
    const i64 x5_base = e2 * e3 * e4 * e5;
    for (i64 e6 = -e6_max; e6 <= e6_max; ++e6) {
      if (e6 == 0 || std::gcd(e6, e1234) != 1) continue;
      const i64 abs6 = std::abs(e6);
      const i64 l1 = std::min(l1_base, B / (x3_base * abs6));
      const i64 l2 = std::min(l2_base, B / (x5_base * abs6));
      const i64 p = e4 * e5 * e5 * e6;
      // |alpha1| <= l1 and |p + e1 alpha1| <= e2 l2
      const i64 lo = std::max(-l1, ceil_div(-e2 * l2 - p, e1));
      const i64 hi = std::min(l1, floor_div(e2 * l2 - p, e1));
      if (lo > hi) continue;
      // e1 alpha1 = -p (mod e2)
      const i64 residue = static_cast<i64>((static_cast<i128>(((-p) % e2 + e2) % e2) * inv_e1) % e2);
      i64 a1 = lo + ((residue - lo) % e2 + e2) % e2;
      for (; a1 <= hi; a1 += e2) {
        const i64 a2 = -(p + e1 * a1) / e2;
        const i128 x2 = static_cast<i128>(e6) * a1 * a2;
        if (x2 > B || x2 < -B) continue;
        if (std::gcd(a2, e3 * e5) != 1 || std::gcd(a1, e3 * e4) != 1) continue;
        t.eta5 = e5;
        t.eta6 = e6;
        t.alpha1 = a1;
        t.alpha2 = a2;
        visit(t);
      }
    }
  }
}

// Runs fn(worker, item_index) over [0, n) with a shared work counter.
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  std::atomic<std::size_t> next{0};
  auto run = [&](unsigned w) {
    for (std::size_t i = next++; i < n; i = next++) fn(w, i);
  };
  if (workers == 1) {
    run(0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  for (auto& th : pool) th.join();
}

template <class Visit>
void scan_torsor(i64 B, unsigned workers, bool tight_eta6, Visit&& visit) {
  const auto items = torsor_work_items(B);
  parallel_for(items.size(), workers, [&](unsigned w, std::size_t i) {
    scan_item(items[i], B, tight_eta6, [&](const TorsorPoint& t) { visit(w, t); });
  });
}

// Per-worker accumulation of counts and retained points.
struct PointSink {
  u64 count = 0;
  std::vector<ProjectivePoint> points;
  bool overflow = false;
};

CountResult merge(std::vector<PointSink>& sinks, bool retain, std::size_t cap) {
  CountResult r;
  std::size_t kept = 0;
  bool overflow = false;
  for (const auto& s : sinks) {
    r.count += s.count;
    kept += s.points.size();
    overflow = overflow || s.overflow;
  }
  if (retain && !overflow && kept <= cap) {
    r.points.reserve(kept);
    for (auto& s : sinks) r.points.insert(r.points.end(), s.points.begin(), s.points.end());
    std::sort(r.points.begin(), r.points.end());
    r.points_complete = true;
  }
  return r;
}

}  // namespace

unsigned default_workers() {
  if (const char* env = std::getenv("DP5_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

CountResult count_naive(i64 B, const CountOptions& opts) {
  if (B < 1 || B > kNaiveFeasibilityBound) {
    throw std::invalid_argument("count_naive: B must lie in [1, " + std::to_string(kNaiveFeasibilityBound) + "]");
  }
  const auto start = Clock::now();
  for (const auto& p : surface_points_at_infinity(B)) {
    if (!on_some_line(p.coords())) {
      std::ostringstream msg;
      msg << "count_naive: point " << p << " with x0 = 0 is not on a line";
      throw std::logic_error(msg.str());
    }
  }
  const unsigned workers = std::max(1u, opts.workers);
  std::vector<PointSink> sinks(workers);
  parallel_for(static_cast<std::size_t>(B), workers, [&](unsigned w, std::size_t i) {
    auto& sink = sinks[w];
    scan_affine_slice(static_cast<i64>(i) + 1, B, [&](const Coords& x) {
      if (on_some_line(x)) return;
      ++sink.count;
      if (opts.retain_points && !sink.overflow) {
        if (sink.points.size() >= opts.retention_cap) {
          sink.overflow = true;
        } else {
          sink.points.push_back(normalize(x));
        }
      }
    });
  });
  auto r = merge(sinks, opts.retain_points, opts.retention_cap);
  r.seconds = seconds_since(start);
  return r;
}

CountResult count_torsor(i64 B, const CountOptions& opts) {
  if (B < 1) throw std::invalid_argument("count_torsor: B must be >= 1");
  const auto start = Clock::now();
  const unsigned workers = std::max(1u, opts.workers);
  std::vector<PointSink> sinks(workers);
  scan_torsor(B, workers, true, [&](unsigned w, const TorsorPoint& t) {
    auto& sink = sinks[w];
    ++sink.count;
    if (opts.retain_points && !sink.overflow) {
      if (sink.points.size() >= opts.retention_cap) {
        sink.overflow = true;
      } else {
        sink.points.push_back(psi(t));
      }
    }
  });
  auto r = merge(sinks, opts.retain_points, opts.retention_cap);
  r.seconds = seconds_since(start);
  return r;
}

SplitCounts count_split(i64 B, double A, const CountOptions& opts) {
  if (B < 3) throw std::invalid_argument("count_split: B must be >= 3");
  if (!(A > 0)) throw std::invalid_argument("count_split: A must be positive");
  const double threshold = static_cast<double>(B) / std::pow(std::log(static_cast<double>(B)), A);
  const unsigned workers = std::max(1u, opts.workers);
  std::vector<SplitCounts> parts(workers);
  scan_torsor(B, workers, true, [&](unsigned w, const TorsorPoint& t) {
    auto& s = parts[w];
    if (t.eta5 >= std::abs(t.eta6)) {
      ++s.na;
      return;
    }
    const double base = static_cast<double>(t.eta1 * t.eta1 * t.eta2 * t.eta2) *
                        static_cast<double>(t.eta3 * t.eta3 * t.eta3 * t.eta4 * t.eta4);
    if (base <= threshold) {
      ++s.nb1;
    } else {
      ++s.nb2;
    }
  });
  SplitCounts total;
  for (const auto& s : parts) {
    total.na += s.na;
    total.nb1 += s.nb1;
    total.nb2 += s.nb2;
  }
  return total;
}

BijectionReport verify_bijection(i64 B, const CountOptions& opts) {
  CountOptions keep = opts;
  keep.retain_points = true;
  const auto naive = count_naive(B, keep);
  const auto torsor = count_torsor(B, keep);
  BijectionReport rep;
  rep.naive_count = naive.count;
  rep.torsor_count = torsor.count;
  if (!naive.points_complete || !torsor.points_complete) {
    rep.message = "point retention cap exceeded";
    return rep;
  }
  const auto dup = std::adjacent_find(torsor.points.begin(), torsor.points.end());
  if (dup != torsor.points.end()) {
    std::ostringstream msg;
    msg << "torsor image " << *dup << " is hit twice";
    rep.message = msg.str();
    return rep;
  }
  const auto [n_it, t_it] = std::mismatch(naive.points.begin(), naive.points.end(), torsor.points.begin(),
                                          torsor.points.end());
  if (n_it != naive.points.end() || t_it != torsor.points.end()) {
    std::ostringstream msg;
    if (n_it != naive.points.end() && (t_it == torsor.points.end() || *n_it < *t_it)) {
      msg << "point " << *n_it << " found only by the direct search";
    } else {
      msg << "point " << *t_it << " found only on the torsor";
    }
    rep.message = msg.str();
    return rep;
  }
  rep.ok = true;
  return rep;
}

HeightBoundReport check_height_bounds(i64 B, const CountOptions& opts) {
  if (B < 1) throw std::invalid_argument("check_height_bounds: B must be >= 1");
  const unsigned workers = std::max(1u, opts.workers);
  std::vector<HeightBoundReport> parts(workers);
  scan_torsor(B, workers, false, [&](unsigned w, const TorsorPoint& t) {
    auto& r = parts[w];
    ++r.solutions;
    const i128 e6 = std::abs(t.eta6);
    const i128 first = static_cast<i128>(t.eta1) * t.eta2 * t.eta3 * t.eta3 * t.eta4 * t.eta4 * t.eta5 * t.eta5 * e6;
    const i128 second = static_cast<i128>(t.eta3) * t.eta4 * t.eta4 * t.eta5 * t.eta5 * t.eta5 * e6 * e6;
    if (first > 2 * static_cast<i128>(B) || second > 2 * static_cast<i128>(B)) ++r.violations;
  });
  HeightBoundReport total;
  for (const auto& r : parts) {
    total.solutions += r.solutions;
    total.violations += r.violations;
  }
  return total;
}

void for_each_torsor_solution(i64 B, unsigned workers,
                              const std::function<void(unsigned, const TorsorPoint&)>& visit) {
  if (B < 1) throw std::invalid_argument("for_each_torsor_solution: B must be >= 1");
  scan_torsor(B, std::max(1u, workers), true, visit);
}

std::optional<double> CountReport::ratio() const {
  if (!main_term || *main_term <= 0) return std::nullopt;
  return static_cast<double>(count) / *main_term;
}

std::string csv_header() { return "B,method,count,na,nb1,nb2,main_term,ratio,seconds"; }

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

}  // namespace

std::string to_csv_row(const CountReport& r) {
  std::ostringstream os;
  os << r.B << ',' << r.method << ',' << r.count << ',';
  if (r.split) {
    os << r.split->na << ',' << r.split->nb1 << ',' << r.split->nb2 << ',';
  } else {
    os << ",,,";
  }
  os << (r.main_term ? fmt_double(*r.main_term) : "") << ',';
  const auto ratio = r.ratio();
  os << (ratio ? fmt_double(*ratio) : "") << ',';
  os << (r.seconds ? fmt_double(*r.seconds) : "");
  return os.str();
}

std::string to_json(const CountReport& r) {
  nlohmann::ordered_json j;
  j["B"] = r.B;
  j["method"] = r.method;
  j["count"] = r.count;
  j["na"] = r.split ? nlohmann::ordered_json(r.split->na) : nullptr;
  j["nb1"] = r.split ? nlohmann::ordered_json(r.split->nb1) : nullptr;
  j["nb2"] = r.split ? nlohmann::ordered_json(r.split->nb2) : nullptr;
  j["main_term"] = r.main_term ? nlohmann::ordered_json(*r.main_term) : nullptr;
  const auto ratio = r.ratio();
  j["ratio"] = ratio ? nlohmann::ordered_json(*ratio) : nullptr;
  j["seconds"] = r.seconds ? nlohmann::ordered_json(*r.seconds) : nullptr;
  return j.dump();
}

}  // namespace dp5
