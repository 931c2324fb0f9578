// Command-line front end for the relaybounds library.
//
// Subcommands:
//   bounds        evaluate the four capacity upper bounds for one channel
//   sweep-bounds  sweep the bounds over relay rates on a binary symmetric link
//   sweep-cover   sweep the distributed-covering rate bounds over crossovers
//   example-bac   reproduce the binary asymmetric reference computation
//   verify        run the built-in self-check suites
//
// Exit codes: 0 success, 1 usage or input error, 2 verification failure.
//
// The CLI is a thin wrapper: every number printed is a library result,
// formatted with nine significant digits so repeated runs are byte-identical.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "relaybounds/relaybounds.hpp"

namespace rb = relaybounds;
using nlohmann::ordered_json;

namespace {

std::string fmt9(double v) { return rb::detail::fmt9(v); }

std::string fmt_dist(const rb::Dist& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += fmt9(p[i]);
  }
  return s + "]";
}

rb::SweepRange parse_range(const std::string& text, const char* flag) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw std::invalid_argument(std::string(flag) + ": expected lo:hi:step, got '" + text + "'");
  rb::SweepRange r;
  try {
    r.lo = std::stod(text.substr(0, c1));
    r.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    r.step = std::stod(text.substr(c2 + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(flag) + ": expected numeric lo:hi:step, got '" + text +
                                "'");
  }
  return r;
}

std::string bound_line(const char* name, const rb::BoundEvaluation& b) {
  std::string s = std::string(name) + ": value " + fmt9(b.value);
  if (b.witness_a) s += ", a " + fmt9(*b.witness_a);
  s += std::string(", active ") + rb::to_string(b.active_constraint);
  return s + ", px " + fmt_dist(b.witness_px);
}

ordered_json bound_json(const rb::BoundEvaluation& b) {
  ordered_json j;
  j["value"] = b.value;
  if (b.witness_a)
    j["witness_a"] = *b.witness_a;
  else
    j["witness_a"] = nullptr;
  j["active"] = rb::to_string(b.active_constraint);
  j["witness_px"] = b.witness_px;
  return j;
}

// Plot script with the data inlined so the file stands alone.
void write_gnuplot(const std::string& path, const std::string& title, const std::string& xlabel,
                   const std::vector<std::string>& series,
                   const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open gnuplot output file: " + path);
  out << "# " << title << "\n";
  out << "set title \"" << title << "\"\n";
  out << "set xlabel \"" << xlabel << "\"\n";
  out << "set ylabel \"rate (bits per channel use)\"\n";
  out << "set key bottom right\n";
  out << "set grid\n";
  out << "$data << EOD\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ' ';
      out << fmt9(row[i]);
    }
    out << '\n';
  }
  out << "EOD\n";
  out << "plot ";
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i) out << ", \\\n     ";
    out << "$data using 1:" << i + 2 << " with lines lw 2 title \"" << series[i] << "\"";
  }
  out << '\n';
  if (!out) throw std::runtime_error("failed while writing gnuplot script: " + path);
}

struct BoundsArgs {
  CLI::Option* o_bsc = nullptr;
  CLI::Option* o_bac = nullptr;
  CLI::Option* o_spec = nullptr;
  CLI::Option* o_r0 = nullptr;
  double bsc_p = 0.0;
  std::vector<double> bac_p;
  std::string spec_path;
  double r0 = 0.0;
  std::string format = "table";
};

int run_bounds(const BoundsArgs& a) {
  const int sources = (a.o_bsc->count() ? 1 : 0) + (a.o_bac->count() ? 1 : 0) +
                      (a.o_spec->count() ? 1 : 0);
  if (sources != 1) {
    std::cerr << "error: bounds needs exactly one of --bsc, --bac, --spec\n";
    return 1;
  }
  if (!a.o_spec->count() && !a.o_r0->count()) {
    std::cerr << "error: bounds needs --r0 with --bsc or --bac\n";
    return 1;
  }

  ordered_json channel_desc;
  double c_xy = 0.0, c_xyz = 0.0, r0 = 0.0;
  rb::BoundEvaluation cs, t1, t2;
  std::optional<rb::BoundEvaluation> xe;
  const char* method = nullptr;
  std::string channel_line;

  if (a.o_bsc->count()) {
    const rb::BscBounds sb = rb::bsc_suite(a.bsc_p, a.r0);
    channel_line = "channel: bsc p " + fmt9(sb.p);
    channel_desc = {{"kind", "bsc"}, {"p", sb.p}};
    c_xy = sb.c_xy;
    c_xyz = sb.c_xyz;
    r0 = sb.r0;
    cs = sb.cutset;
    xe = sb.xue;
    t1 = sb.theorem1;
    t2 = sb.theorem2;
    method = rb::to_string(sb.cutset.method);
  } else {
    rb::RelayChannelSpec spec;
    if (a.o_bac->count()) {
      spec = rb::make_bac(a.bac_p[0], a.bac_p[1], a.r0);
      channel_line = "channel: bac p1 " + fmt9(a.bac_p[0]) + " p2 " + fmt9(a.bac_p[1]);
      channel_desc = {{"kind", "bac"}, {"p1", a.bac_p[0]}, {"p2", a.bac_p[1]}};
    } else {
      spec = rb::load_relay_spec(a.spec_path);
      if (a.o_r0->count()) spec = rb::make_relay_spec(spec.link, a.r0);
      channel_line = "channel: spec " + a.spec_path + " (" + std::to_string(spec.input_size) +
                     "x" + std::to_string(spec.output_size) + ")";
      channel_desc = {{"kind", "spec"},
                      {"path", a.spec_path},
                      {"input_size", spec.input_size},
                      {"output_size", spec.output_size}};
    }
    c_xy = rb::capacity_xy(spec).value;
    c_xyz = rb::capacity_xyz(spec).value;
    r0 = spec.r0;
    cs = rb::cutset(spec);
    t1 = rb::theorem1(spec);
    t2 = rb::theorem2(spec);
    if (spec.input_size == 2) xe = rb::xue(spec);
    method = rb::to_string(cs.method);
  }

  if (a.format == "json") {
    ordered_json j;
    j["channel"] = channel_desc;
    j["r0"] = r0;
    j["method"] = method;
    j["c_xy"] = c_xy;
    j["c_xyz"] = c_xyz;
    j["bounds"] = ordered_json::object();
    j["bounds"]["cutset"] = bound_json(cs);
    if (xe)
      j["bounds"]["xue"] = bound_json(*xe);
    else
      j["bounds"]["xue"] = nullptr;
    j["bounds"]["theorem1"] = bound_json(t1);
    j["bounds"]["theorem2"] = bound_json(t2);
    if (!xe) j["note"] = "xue bound requires a binary input alphabet";
    std::cout << j.dump(2) << '\n';
    return 0;
  }

  std::cout << channel_line << '\n';
  std::cout << "r0: " << fmt9(r0) << '\n';
  std::cout << "method: " << method << '\n';
  std::cout << "c_xy: " << fmt9(c_xy) << '\n';
  std::cout << "c_xyz: " << fmt9(c_xyz) << '\n';
  std::cout << bound_line("cutset", cs) << '\n';
  if (xe)
    std::cout << bound_line("xue", *xe) << '\n';
  else
    std::cout << "xue: skipped (requires a binary input alphabet)\n";
  std::cout << bound_line("theorem1", t1) << '\n';
  std::cout << bound_line("theorem2", t2) << '\n';
  return 0;
}

struct SweepBoundsArgs {
  double bsc_p = 0.0;
  std::string range_text;
  std::string format = "csv";
  std::string gnuplot_path;
};

int run_sweep_bounds(const SweepBoundsArgs& a) {
  const rb::SweepRange range = parse_range(a.range_text, "--r0-range");
  const std::vector<double> r0s = rb::sweep_points(range);
  const std::vector<rb::BscBounds> rows = rb::sweep_bsc_bounds(a.bsc_p, r0s);

  if (a.format == "json") {
    ordered_json arr = ordered_json::array();
    for (const rb::BscBounds& row : rows) {
      ordered_json j;
      j["r0"] = row.r0;
      j["cutset"] = row.cutset.value;
      j["xue"] = row.xue.value;
      j["thm1"] = row.theorem1.value;
      j["thm2"] = row.theorem2.value;
      arr.push_back(std::move(j));
    }
    std::cout << arr.dump(2) << '\n';
  } else {
    std::cout << "r0,cutset,xue,thm1,thm2\n";
    for (const rb::BscBounds& row : rows)
      std::cout << fmt9(row.r0) << ',' << fmt9(row.cutset.value) << ',' << fmt9(row.xue.value)
                << ',' << fmt9(row.theorem1.value) << ',' << fmt9(row.theorem2.value) << '\n';
  }

  if (!a.gnuplot_path.empty()) {
    std::vector<std::vector<double>> data;
    data.reserve(rows.size());
    for (const rb::BscBounds& row : rows)
      data.push_back(
          {row.r0, row.cutset.value, row.xue.value, row.theorem1.value, row.theorem2.value});
    write_gnuplot(a.gnuplot_path, "capacity upper bounds, bsc p = " + fmt9(a.bsc_p),
                  "relay link rate r0 (bits)", {"cut-set", "xue", "theorem 1", "theorem 2"}, data);
  }
  return 0;
}

struct SweepCoverArgs {
  std::string range_text = "0.01:0.49:0.01";
  std::string format = "csv";
  std::string gnuplot_path;
};

int run_sweep_cover(const SweepCoverArgs& a) {
  const rb::SweepRange range = parse_range(a.range_text, "--p-range");
  const std::vector<rb::CoverBounds> rows = rb::sweep_cover(range);

  if (a.format == "json") {
    ordered_json arr = ordered_json::array();
    for (const rb::CoverBounds& row : rows) {
      ordered_json j;
      j["p"] = row.p;
      j["hf_upper"] = row.hf_upper;
      j["cutset_lower"] = row.cutset_lower;
      j["thm1_lower"] = row.thm1_lower;
      j["thm2_lower"] = row.thm2_lower;
      j["thm3_lower"] = row.thm3_lower;
      j["hf_cs_ratio"] = row.ratio;
      arr.push_back(std::move(j));
    }
    std::cout << arr.dump(2) << '\n';
  } else {
    std::cout << "p,hf_upper,cutset_lower,thm1_lower,thm2_lower,thm3_lower\n";
    for (const rb::CoverBounds& row : rows)
      std::cout << fmt9(row.p) << ',' << fmt9(row.hf_upper) << ',' << fmt9(row.cutset_lower)
                << ',' << fmt9(row.thm1_lower) << ',' << fmt9(row.thm2_lower) << ','
                << fmt9(row.thm3_lower) << '\n';
  }

  if (!a.gnuplot_path.empty()) {
    std::vector<std::vector<double>> data;
    data.reserve(rows.size());
    for (const rb::CoverBounds& row : rows)
      data.push_back(
          {row.p, row.hf_upper, row.cutset_lower, row.thm1_lower, row.thm2_lower, row.thm3_lower});
    write_gnuplot(a.gnuplot_path, "relay rate needed to lift a bsc to full capacity",
                  "crossover probability p",
                  {"entropy upper", "cut-set lower", "theorem 1 lower", "theorem 2 lower",
                   "theorem 3 lower"},
                  data);
  }
  return 0;
}

// Reference computation on the binary asymmetric link with flip probabilities
// 0.01 and 0.3: both capacities, the strong-converse exponent at the full
// capacity, and the minimal relay rates implied by the exponent-based and the
// sharpened requirement.  Reference values are quoted to five decimals, so
// small deviations are expected; the acceptance tolerance is 5e-4.
int run_example_bac() {
  const rb::RelayChannelSpec spec = rb::make_bac(0.01, 0.3, 0.0);
  const rb::CapacityResult cxy = rb::capacity_xy(spec);
  const rb::CapacityResult cxyz = rb::capacity_xyz(spec);
  const rb::ExponentCurve curve(spec.link);
  const double target = cxyz.value;
  const rb::XueRequirement xr = rb::xue_rate_requirement(spec, target, curve);
  const rb::Theorem1Requirement tr = rb::theorem1_rate_requirement(spec, target);

  std::cout << "binary asymmetric link: flip probability 0.01 at x = 0, 0.3 at x = 1\n";
  std::cout << "alpha denotes P(X = 0); reference values are quoted to five decimals\n\n";

  auto row = [](const char* name, double got, double ref) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-28s %-16s %-12s %s", name, fmt9(got).c_str(),
                  fmt9(ref).c_str(), fmt9(std::fabs(got - ref)).c_str());
    std::cout << buf << '\n';
  };
  {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-28s %-16s %-12s %s", "quantity", "computed", "reference",
                  "|deviation|");
    std::cout << buf << '\n';
  }
  row("c_xy", cxy.value, 0.46432);
  row("c_xy witness alpha", cxy.argmax_input[0], 0.58);
  row("c_xyz", cxyz.value, 0.72022);
  row("c_xyz witness alpha", cxyz.argmax_input[0], 0.54);
  row("exponent at c_xyz", xr.exponent_at_target, 0.05951);
  row("xue minimal a", xr.min_a, 0.00008);
  row("xue implied minimal r0", xr.required_r0, 0.25598);
  row("theorem1 constrained i_xy", tr.constrained_ixy, 0.46223);
  row("theorem1 minimal a", tr.min_a, 0.00546);
  row("theorem1 implied minimal r0", tr.required_r0, 0.26345);

  // The reference witnesses sit on a 0.01 grid.  Evaluating both adjacent
  // grid points shows the quoted values coincide with the 0.57 / 0.53 points,
  // one hundredth below the quoted alphas, and bracket the refined optima.
  const rb::Matrix joint = rb::product_channel(spec.link);
  auto i_xy = [&](double al) { return rb::mutual_information({al, 1.0 - al}, spec.link); };
  auto i_xyz = [&](double al) { return rb::mutual_information({al, 1.0 - al}, joint); };
  std::cout << "\nhundredth-grid values near each optimum:\n";
  std::cout << "  i_xy  at alpha 0.57: " << fmt9(i_xy(0.57)) << "   at alpha 0.58: "
            << fmt9(i_xy(0.58)) << '\n';
  std::cout << "  i_xyz at alpha 0.53: " << fmt9(i_xyz(0.53)) << "   at alpha 0.54: "
            << fmt9(i_xyz(0.54)) << '\n';
  std::cout << "  i_xy  at alpha 0.53: " << fmt9(i_xy(0.53)) << "   at alpha 0.54: "
            << fmt9(i_xy(0.54)) << '\n';
  std::cout << "the reference capacities and constrained rate match the 0.57 / 0.53 points\n";
  return 0;
}

int run_verify(const std::string& suite) {
  std::vector<rb::SuiteResult> results;
  if (suite.empty()) {
    results = rb::run_all_selftests();
  } else {
    try {
      results.push_back(rb::run_selftest_suite(suite));
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << "\nknown suites:";
      for (const std::string& n : rb::selftest_suite_names()) std::cerr << ' ' << n;
      std::cerr << '\n';
      return 1;
    }
  }

  std::size_t total = 0, failed = 0;
  for (const rb::SuiteResult& r : results) {
    std::size_t bad = 0;
    for (const rb::CheckResult& c : r.checks)
      if (!c.ok) ++bad;
    total += r.checks.size();
    failed += bad;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "suite %-16s %s (%zu checks)", r.name.c_str(),
                  bad == 0 ? "pass" : "FAIL", r.checks.size());
    std::cout << buf << '\n';
    for (const rb::CheckResult& c : r.checks)
      if (!c.ok) std::cout << "  FAIL " << c.label << ": " << c.detail << '\n';
  }
  if (failed == 0) {
    std::cout << "verification passed (" << results.size() << " suites, " << total
              << " checks)\n";
    return 0;
  }
  std::cout << "verification failed (" << failed << " of " << total << " checks)\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capacity bounds for the discrete memoryless symmetric primitive relay channel"};
  app.require_subcommand(1);

  BoundsArgs ba;
  CLI::App* c_bounds =
      app.add_subcommand("bounds", "evaluate the cut-set, xue, theorem-1 and theorem-2 bounds");
  ba.o_bsc = c_bounds->add_option("--bsc", ba.bsc_p, "binary symmetric link crossover");
  ba.o_bac = c_bounds->add_option("--bac", ba.bac_p, "binary asymmetric link flips p1 p2")
                 ->expected(2);
  ba.o_spec = c_bounds->add_option("--spec", ba.spec_path, "channel spec JSON file");
  ba.o_r0 = c_bounds->add_option("--r0", ba.r0, "relay link rate in bits");
  c_bounds->add_option("--format", ba.format, "output format")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();

  SweepBoundsArgs sba;
  CLI::App* c_sb = app.add_subcommand(
      "sweep-bounds", "sweep the four upper bounds over relay rates on a binary symmetric link");
  c_sb->add_option("--bsc", sba.bsc_p, "binary symmetric link crossover")->required();
  c_sb->add_option("--r0-range", sba.range_text, "relay rate range lo:hi:step")->required();
  c_sb->add_option("--format", sba.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  c_sb->add_option("--emit-gnuplot", sba.gnuplot_path,
                   "also write a self-contained gnuplot script to this path");

  SweepCoverArgs sca;
  CLI::App* c_sc = app.add_subcommand(
      "sweep-cover", "sweep the distributed-covering rate bounds over crossover probabilities");
  c_sc->add_option("--p-range", sca.range_text, "crossover range lo:hi:step")
      ->capture_default_str();
  c_sc->add_option("--format", sca.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  c_sc->add_option("--emit-gnuplot", sca.gnuplot_path,
                   "also write a self-contained gnuplot script to this path");

  CLI::App* c_ex = app.add_subcommand(
      "example-bac", "reproduce the reference computation on the binary asymmetric link");

  std::string suite;
  CLI::App* c_v = app.add_subcommand("verify", "run the built-in self-check suites");
  c_v->add_option("--suite", suite, "run a single suite by name (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (c_bounds->parsed()) return run_bounds(ba);
    if (c_sb->parsed()) return run_sweep_bounds(sba);
    if (c_sc->parsed()) return run_sweep_cover(sca);
    if (c_ex->parsed()) return run_example_bac();
    if (c_v->parsed()) return run_verify(suite);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  std::cerr << "error: no subcommand\n";
  return 1;
}
