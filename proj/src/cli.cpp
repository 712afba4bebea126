#include "d3/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "d3/arith.hpp"
#include "d3/convolution.hpp"
#include "d3/csv.hpp"
#include "d3/jets.hpp"
#include "d3/parallel.hpp"
#include "d3/real.hpp"
#include "d3/sieve.hpp"
#include "d3/singular.hpp"
#include "d3/verify.hpp"

namespace d3::cli {

namespace {

using arith::u64;

struct GlobalOpts {
  int digits = 30;
  unsigned threads = 0;  // 0 = hardware
  std::string cache_dir;
  std::string out = "-";
  u64 seed = 20240612;
};

struct OutStream {
  std::ostream* os;
  std::ofstream file;
  explicit OutStream(const std::string& path) {
    if (path == "-" || path.empty()) {
      os = &std::cout;
    } else {
      file.open(path, std::ios::binary);
      if (!file) throw std::runtime_error("cannot open output file: " + path);
      os = &file;
    }
  }
};

sieve::SieveConfig make_sieve_cfg(const GlobalOpts& g) {
  sieve::SieveConfig cfg;
  cfg.threads = g.threads ? g.threads : default_threads();
  cfg.cache_dir = g.cache_dir;
  return cfg;
}

void emit_suite(const verify::SuiteResult& res, std::ostream& os) {
  csv::Writer w(os);
  w.header(res.columns);
  for (const auto& row : res.rows) {
    for (const auto& f : row) w.field(f);
    w.end_row();
  }
  std::cerr << res.summary << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"shifted convolutions of d_3 and their singular-series main terms"};
  app.require_subcommand(1);

  GlobalOpts g;
  if (const char* env = std::getenv("D3CORR_CACHE_DIR")) g.cache_dir = env;
  app.add_option("--digits", g.digits, "working precision in decimal digits (>= 30)");
  app.add_option("--threads", g.threads, "worker threads (0 = hardware)");
  app.add_option("--cache-dir", g.cache_dir,
                 "segment cache directory (env D3CORR_CACHE_DIR; flag wins)");
  app.add_option("--out", g.out, "output CSV path ('-' = stdout)");
  app.add_option("--seed", g.seed, "seed for sampled suites");

  // sieve: CSV n,dk for n in (lo, hi]
  auto* c_sieve = app.add_subcommand("sieve", "exact d_k values on an interval (CSV: n,dk)");
  unsigned sieve_k = 3;
  u64 sieve_lo = 0, sieve_hi = 0;
  c_sieve->add_option("--k", sieve_k, "which divisor function")->required();
  c_sieve->add_option("--lo", sieve_lo, "interval start (exclusive)")->required();
  c_sieve->add_option("--hi", sieve_hi, "interval end (inclusive)")->required();

  // dsum: CSV k,N,h,D
  auto* c_dsum = app.add_subcommand("dsum", "exact shifted sum D_k(N,h) (CSV: k,N,h,D)");
  unsigned dsum_k = 3;
  u64 dsum_n = 0, dsum_h = 1;
  c_dsum->add_option("--k", dsum_k, "k in {1,2,3}")->required();
  c_dsum->add_option("--n", dsum_n, "N")->required();
  c_dsum->add_option("--h", dsum_h, "shift h")->required();

  // pseries: CSV q,b0,b1,b2
  auto* c_pseries = app.add_subcommand(
      "pseries", "P(x,q) polynomial coefficients in log(x/q) (CSV: q,b0,b1,b2)");
  u64 ps_qmin = 1, ps_qmax = 1;
  c_pseries->add_option("--qmin", ps_qmin, "first q");
  c_pseries->add_option("--qmax", ps_qmax, "last q")->required();

  // singular: CSV x,h,q_max,value,tail_estimate,terms_used
  auto* c_sing = app.add_subcommand(
      "singular", "truncated singular series (CSV: x,h,q_max,value,tail_estimate,terms_used)");
  double sg_x = 0;
  u64 sg_h = 1, sg_qmax = 0;
  double sg_rtol = 1e-3;
  c_sing->add_option("--x", sg_x, "evaluation point x > 1")->required();
  c_sing->add_option("--h", sg_h, "shift h")->required();
  c_sing->add_option("--qmax", sg_qmax, "truncation point (0 = auto)");
  c_sing->add_option("--rtol", sg_rtol, "auto-mode relative tolerance");

  // delta: CSV N,h,D,main_term,delta,q_max
  auto* c_delta = app.add_subcommand(
      "delta", "discrepancy D(N,h) - main term integral (CSV: N,h,D,main_term,delta,q_max)");
  u64 dl_n = 0, dl_h = 1, dl_qmax = 0;
  double dl_rtol = 1e-3;
  bool dl_large_h = false;
  c_delta->add_option("--n", dl_n, "N")->required();
  c_delta->add_option("--h", dl_h, "shift h")->required();
  c_delta->add_option("--qmax", dl_qmax, "singular series truncation (0 = auto)");
  c_delta->add_option("--rtol", dl_rtol, "auto-mode relative tolerance");
  c_delta->add_flag("--allow-large-h", dl_large_h, "lift the h <= sqrt(N) guard");

  // moment1 / moment2: CSV N,H,q_max,sum_delta,sum_delta_sq,ratio1,ratio2,wall_ms
  auto add_moment = [&](const char* name, const char* desc) {
    auto* c = app.add_subcommand(name, desc);
    return c;
  };
  auto* c_m1 = add_moment("moment1",
                          "first-moment experiment over h <= H "
                          "(CSV: N,H,q_max,sum_delta,sum_delta_sq,ratio1,ratio2,wall_ms)");
  auto* c_m2 = add_moment("moment2",
                          "second-moment experiment with H = floor(N^theta) "
                          "(CSV: N,H,q_max,sum_delta,sum_delta_sq,ratio1,ratio2,wall_ms)");
  u64 m1_n = 0, m1_h = 0, m1_qmax = 1 << 14;
  bool m1_timings = false;
  std::string m1_perh;
  c_m1->add_option("--n", m1_n, "N")->required();
  c_m1->add_option("--bigh", m1_h, "H (default floor(sqrt N))");
  c_m1->add_option("--qmax", m1_qmax, "shared singular-series truncation (0 = auto)");
  c_m1->add_flag("--timings", m1_timings, "report wall time (breaks byte determinism)");
  c_m1->add_option("--per-h", m1_perh, "also write per-h CSV (h,D,main,delta) to this path");
  u64 m2_n = 0, m2_qmax = 1 << 14;
  double m2_theta = 0.4;
  bool m2_timings = false;
  std::string m2_perh;
  c_m2->add_option("--n", m2_n, "N")->required();
  c_m2->add_option("--theta", m2_theta, "H = floor(N^theta), theta in (1/3, 1)");
  c_m2->add_option("--qmax", m2_qmax, "shared singular-series truncation (0 = auto)");
  c_m2->add_flag("--timings", m2_timings, "report wall time (breaks byte determinism)");
  c_m2->add_option("--per-h", m2_perh, "also write per-h CSV (h,D,main,delta) to this path");

  // ingham: CSV N,h,D2,predicted,ratio
  auto* c_ing = app.add_subcommand(
      "ingham", "D_2(N,h) against (6/pi^2) sigma_{-1}(h) N log^2 N (CSV: N,h,D2,predicted,ratio)");
  u64 in_n = 0, in_h = 1;
  c_ing->add_option("--n", in_n, "N >= 1e3")->required();
  c_ing->add_option("--h", in_h, "shift h")->required();

  // verify
  auto* c_ver = app.add_subcommand("verify", "run a verification suite (CSV per suite)");
  std::string ver_suite;
  u64 ver_qmax = 2000, ver_n = 2000, ver_h = 200, ver_tmax = 10'000'000, ver_count = 100;
  c_ver->add_option("--suite", ver_suite,
                    "one of: dual-identity, prime-power, carmichael, contour, voronoi, "
                    "correlation, ingham")
      ->required();
  c_ver->add_option("--qmax", ver_qmax, "q range for dual-identity/carmichael");
  c_ver->add_option("--n", ver_n, "N for correlation/ingham");
  c_ver->add_option("--bigh", ver_h, "H for correlation");
  c_ver->add_option("--tmax", ver_tmax, "t range for voronoi");
  c_ver->add_option("--count", ver_count, "sample count for contour/voronoi");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());  // CLI11 pops from the back
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      std::cout << app.help();
      return 0;
    }
    std::cerr << app.help() << "\n" << e.what() << "\n";
    return 1;
  }

  try {
    if (g.digits < 30) {
      std::cerr << "--digits must be >= 30\n";
      return 1;
    }
    Real::set_working_digits(g.digits);
    unsigned threads = g.threads ? g.threads : default_threads();
    OutStream out(g.out);
    csv::Writer w(*out.os);

    if (*c_sieve) {
      sieve::SieveSegment seg = sieve::dk_segment(sieve_k, sieve_lo, sieve_hi, make_sieve_cfg(g));
      w.header({"n", "dk"});
      for (u64 i = 0; i < seg.hi - seg.lo; ++i)
        w.field(seg.lo + 1 + i).field(seg.values[i]), w.end_row();
    } else if (*c_dsum) {
      u64 d = conv::dk_shifted_sum(dsum_k, dsum_n, dsum_h, make_sieve_cfg(g));
      w.header({"k", "N", "h", "D"});
      w.field(static_cast<u64>(dsum_k)).field(dsum_n).field(dsum_h).field(d);
      w.end_row();
    } else if (*c_pseries) {
      w.header({"q", "b0", "b1", "b2"});
      for (u64 q = ps_qmin; q <= ps_qmax; ++q) {
        singular::LogPolynomial p = singular::p_polynomial(q);
        w.field(q).field(p.b[0]).field(p.b[1]).field(p.b[2]);
        w.end_row();
      }
    } else if (*c_sing) {
      if (!(sg_x > 1)) { std::cerr << "singular: require x > 1\n"; return 1; }
      singular::SingularOpts so;
      so.q_max = sg_qmax;
      so.rel_tol = Real(sg_rtol);
      so.threads = threads;
      singular::SingularValue v = singular::singular_series(Real(sg_x), sg_h, so);
      w.header({"x", "h", "q_max", "value", "tail_estimate", "terms_used"});
      w.field(Real(sg_x)).field(sg_h).field(v.q_max).field(v.value).field(v.tail_estimate)
          .field(v.terms_used);
      w.end_row();
    } else if (*c_delta) {
      conv::DeltaOpts dop;
      dop.singular.q_max = dl_qmax;
      dop.singular.rel_tol = Real(dl_rtol);
      dop.singular.threads = threads;
      dop.sieve = make_sieve_cfg(g);
      dop.allow_large_h = dl_large_h;
      conv::DeltaValue dv = conv::delta(dl_n, dl_h, dop);
      w.header({"N", "h", "D", "main_term", "delta", "q_max"});
      w.field(dl_n).field(dl_h).field(dv.d_value).field(dv.main_term.value).field(dv.delta)
          .field(dv.main_term.q_max);
      w.end_row();
    } else if (*c_m1 || *c_m2) {
      u64 N = *c_m1 ? m1_n : m2_n;
      u64 H;
      if (*c_m1) {
        H = m1_h ? m1_h : static_cast<u64>(std::sqrt(static_cast<double>(m1_n)));
      } else {
        if (!(m2_theta > 1.0 / 3.0 && m2_theta < 1.0)) {
          std::cerr << "moment2: theta must lie in (1/3, 1)\n";
          return 1;
        }
        H = static_cast<u64>(std::pow(static_cast<double>(m2_n), m2_theta));
      }
      conv::MomentOpts mo;
      mo.q_max = *c_m1 ? m1_qmax : m2_qmax;
      mo.threads = threads;
      mo.sieve = make_sieve_cfg(g);
      mo.timings = *c_m1 ? m1_timings : m2_timings;
      std::string perh_path = *c_m1 ? m1_perh : m2_perh;
      mo.keep_per_h = !perh_path.empty();
      conv::MomentReport rep = conv::moment_report(N, H, *c_m1 ? 1 : 2, mo);
      w.header({"N", "H", "q_max", "sum_delta", "sum_delta_sq", "ratio1", "ratio2", "wall_ms"});
      w.field(rep.N).field(rep.H).field(rep.q_max).field(rep.sum_delta).field(rep.sum_delta_sq)
          .field(rep.ratio1).field(rep.ratio2).field(rep.wall_ms);
      w.end_row();
      if (mo.keep_per_h) {
        OutStream ph(perh_path);
        csv::Writer pw(*ph.os);
        pw.header({"h", "D", "main", "delta"});
        for (const auto& r : rep.per_h) {
          pw.field(r.h).field(r.d_value).field(r.main_term).field(r.delta);
          pw.end_row();
        }
      }
      if (rep.q_max_saturated) {
        std::cerr << "moment: q_max saturated before meeting the tail tolerance\n";
        return 2;
      }
    } else if (*c_ing) {
      Real r = conv::ingham_ratio(in_n, in_h, make_sieve_cfg(g));
      u64 d2 = conv::dk_shifted_sum(2, in_n, in_h, make_sieve_cfg(g));
      w.header({"N", "h", "D2", "predicted", "ratio"});
      Real predicted = Real(d2) / r;
      w.field(in_n).field(in_h).field(d2).field(predicted).field(r);
      w.end_row();
    } else if (*c_ver) {
      verify::SuiteResult res;
      if (ver_suite == "dual-identity") {
        res = verify::dual_identity(ver_qmax, threads);
      } else if (ver_suite == "prime-power") {
        res = verify::prime_power_cases(threads);
      } else if (ver_suite == "carmichael") {
        res = verify::carmichael_zero_sum(ver_qmax);
      } else if (ver_suite == "contour") {
        res = verify::contour_agreement(static_cast<int>(ver_count), g.seed, threads);
      } else if (ver_suite == "voronoi") {
        res = verify::voronoi_envelope(ver_tmax, static_cast<int>(ver_count), g.seed,
                                       make_sieve_cfg(g));
      } else if (ver_suite == "correlation") {
        res = verify::correlation_exactness(ver_n, ver_h, threads);
      } else if (ver_suite == "ingham") {
        res = verify::ingham_window(ver_n, make_sieve_cfg(g));
      } else {
        std::cerr << "unknown suite: " << ver_suite << "\n";
        return 1;
      }
      emit_suite(res, *out.os);
      if (!res.pass) return 2;
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace d3::cli
