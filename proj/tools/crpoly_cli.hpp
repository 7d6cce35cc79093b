#pragma once

// Command-line front end. run() takes the argument list and the two output
// streams so that it can be driven in-process by the tests.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crpoly/crpoly.hpp"

namespace crpoly::cli {

enum exit_code : int { ok = 0, verify_failed = 1, usage = 2, numeric = 3 };

namespace detail {

using nlohmann::json;

inline json to_json(complex z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

// nlohmann prints the shortest string that reads back to the same double
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline Eigen::VectorXd parse_coords(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (item.empty() || used != item.size()) throw invalid_argument("bad coordinate '" + item + "'");
    values.push_back(v);
  }
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

inline unsigned default_streams() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Options {
  int n = 0;
  std::uint64_t seed = 0;
  bool json = false;
  double omega_arg = 0.0;
  std::string coords;
  double tol = 0.0;
  double cluster_angle = 0.0;
  int count = 1;
  std::string format;
  std::string method = "closed-form";
  std::int64_t samples = 100000;
  unsigned streams = 0;
  int points = 1000;
};

inline ToleranceBundle tolerances(const Options& o) {
  ToleranceBundle t = ToleranceBundle::from_env();
  if (o.tol > 0.0) t.base = o.tol;
  if (o.cluster_angle > 0.0) t.cluster_angle = o.cluster_angle;
  return t;
}

inline int cmd_basis(const Options& o, std::ostream& out) {
  const BasisMatrix b = build_basis(o.n, std::polar(1.0, o.omega_arg));
  const Eigen::MatrixXcd& m = b.entries();
  if (o.json) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
      rows.push_back(row);
    }
    out << dump({{"command", "basis"},
                 {"degree", o.n},
                 {"omega", to_json(b.omega())},
                 {"matrix", rows},
                 {"unitarity_residual", unitarity_residual(b)}});
    return ok;
  }
  out << std::setprecision(6);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      if (k) out << "  ";
      out << std::setw(10) << m(i, k).real() << (m(i, k).imag() < 0 ? " - " : " + ") << std::setw(8)
          << std::abs(m(i, k).imag()) << "i";
    }
    out << "\n";
  }
  return ok;
}

inline int cmd_classify(const Options& o, std::ostream& out) {
  const RealCoeffVector a(o.n, parse_coords(o.coords));
  const MembershipVerdict v = classify(a, tolerances(o));
  if (o.json) {
    json roots = json::array();
    for (const complex& z : v.roots) roots.push_back(to_json(z));
    json partition = nullptr;
    if (v.partition) partition = v.partition->canonical();
    out << dump({{"command", "classify"},
                 {"degree", o.n},
                 {"coords", to_json(a.coords())},
                 {"status", to_string(v.status)},
                 {"partition", partition},
                 {"unit_residual", v.unit_residual},
                 {"disc_magnitude", v.disc_magnitude},
                 {"roots", roots},
                 {"diagnostic", v.diagnostic}});
    return ok;
  }
  out << std::setprecision(6);
  out << to_string(v.status);
  if (v.partition) out << " " << v.partition->to_string();
  out << "\nunit_residual " << v.unit_residual << "\ndisc_magnitude " << v.disc_magnitude << "\n";
  if (!v.diagnostic.empty()) out << "diagnostic " << v.diagnostic << "\n";
  return ok;
}

inline int cmd_sample(const Options& o, std::ostream& out) {
  if (o.count < 1) throw invalid_argument("--count must be at least 1");
  const std::string fmt = o.format.empty() ? "csv" : o.format;
  rng_stream rng(o.seed, 0);
  const BasisMatrix basis = build_basis(o.n);
  json rows = json::array();
  if (fmt == "csv") {
    for (int k = 1; k <= o.n; ++k) out << "theta_" << k << ",";
    for (int k = 1; k < o.n; ++k) out << "a_" << k << (k + 1 < o.n ? "," : "\n");
    out << std::setprecision(17);
  }
  for (int i = 0; i < o.count; ++i) {
    const RootVector rv = sample_root_vector(o.n, rng);
    const RealCoeffVector a = point_from_roots(rv, basis);
    const std::vector<double> th = rv.thetas();
    if (fmt == "csv") {
      for (double t : th) out << t << ",";
      for (Eigen::Index k = 0; k < a.coords().size(); ++k) out << a[k] << (k + 1 < a.coords().size() ? "," : "\n");
    } else {
      rows.push_back({{"thetas", th}, {"coords", to_json(a.coords())}});
    }
  }
  if (fmt == "json") out << dump({{"command", "sample"}, {"degree", o.n}, {"seed", o.seed}, {"samples", rows}});
  return ok;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  const std::vector<CheckResult> rows = verify_all(o.n, o.seed);
  const bool pass = all_passed(rows);
  if (o.json) {
    json checks = json::array();
    for (const CheckResult& r : rows)
      checks.push_back({{"name", r.name},
                        {"residual", r.residual},
                        {"threshold", r.threshold},
                        {"pass", r.pass},
                        {"informational", r.informational}});
    out << dump({{"command", "verify"}, {"degree", o.n}, {"seed", o.seed}, {"pass", pass}, {"checks", checks}});
    return pass ? ok : verify_failed;
  }
  std::size_t width = 0;
  for (const CheckResult& r : rows) width = std::max(width, r.name.size());
  out << std::setprecision(6);
  for (const CheckResult& r : rows) {
    const char* tag = r.pass ? "PASS" : (r.informational ? "INFO" : "FAIL");
    out << tag << "  " << std::left << std::setw(static_cast<int>(width)) << r.name << std::right << "  "
        << std::setw(12) << r.residual << "  <= " << r.threshold << "\n";
  }
  out << (pass ? "all checks passed" : "some checks failed") << " (N = " << o.n << ", seed = " << o.seed << ")\n";
  return pass ? ok : verify_failed;
}

inline int cmd_volume(const Options& o, std::ostream& out) {
  if (o.samples < 1) throw invalid_argument("--samples must be at least 1");
  const unsigned streams = o.streams > 0 ? o.streams : default_streams();
  const auto t0 = std::chrono::steady_clock::now();
  VolumeEstimate v;
  if (o.method == "closed-form")
    v = volume_closed_form(o.n);
  else if (o.method == "mc-jacobian")
    v = volume_mc_jacobian(o.n, o.samples, o.seed, streams);
  else if (o.method == "mc-hit")
    v = volume_mc_hit(o.n, o.samples, o.seed, streams, tolerances(o));
  else
    throw invalid_argument("unknown method '" + o.method + "'");
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.json) {
    json j = {{"command", "volume"}, {"degree", v.degree},       {"method", to_string(v.method)},
              {"value", v.value},    {"std_error", v.std_error}, {"samples", v.samples},
              {"seed", v.seed},      {"streams", v.streams},     {"seconds", seconds}};
    if (v.method == VolumeMethod::MCHit) j["hit_fraction"] = v.hit_fraction;
    out << dump(j);
    return ok;
  }
  out << std::setprecision(6) << to_string(v.method) << " N=" << v.degree << "\nvalue " << v.value << "\nstd_error "
      << v.std_error << "\nsamples " << v.samples << "\nseconds " << seconds << "\n";
  return ok;
}

inline void write_svg(const BoundaryCurve& c, std::ostream& out) {
  const double d = bounding_half_width(c.degree);
  const double size = 1000.0;
  auto px = [&](double x) { return (x + d) / (2.0 * d) * size; };
  auto py = [&](double y) { return (d - y) / (2.0 * d) * size; };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" viewBox=\"0 0 1000 1000\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"white\" stroke=\"black\"/>\n";
  out << "<path fill=\"none\" stroke=\"black\" stroke-width=\"1\" d=\"";
  out << std::fixed << std::setprecision(3);
  for (std::size_t i = 0; i < c.projection.size(); ++i)
    out << (i ? " L" : "M") << px(c.projection[i][0]) << "," << py(c.projection[i][1]);
  out << " Z\"/>\n</svg>\n";
}

inline int cmd_boundary(const Options& o, std::ostream& out) {
  const BoundaryCurve c = boundary_curve(o.n, o.points);
  const std::string fmt = o.format.empty() ? "csv" : o.format;
  if (fmt == "svg") {
    write_svg(c, out);
    return ok;
  }
  out << "phi";
  for (int k = 1; k < c.degree; ++k) out << ",a_" << k;
  out << "\n" << std::setprecision(17);
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    out << c.phis[i];
    for (Eigen::Index k = 0; k < c.points[i].coords().size(); ++k) out << "," << c.points[i][k];
    out << "\n";
  }
  return ok;
}

}  // namespace detail

/// Parses `args` (without the program name) and runs the chosen subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  detail::Options o;
  CLI::App app{"Conjugate-reciprocal polynomials with unit-circle roots", "crpoly"};
  app.require_subcommand(1);

  auto* basis = app.add_subcommand("basis", "print the basis matrix X_N");
  basis->add_option("--n", o.n, "degree N")->required();
  basis->add_option("--omega-arg", o.omega_arg, "omega = exp(i * arg)");
  basis->add_flag("--json", o.json);

  auto* cls = app.add_subcommand("classify", "Interior / Boundary / Exterior verdict for a point");
  cls->add_option("--n", o.n, "degree N")->required();
  cls->add_option("--coords", o.coords, "a_1,...,a_{N-1}")->required()->allow_extra_args(false);
  cls->add_option("--tol", o.tol, "unit-circle tolerance for a simple root");
  cls->add_option("--cluster-angle", o.cluster_angle, "distance below which roots count as repeated");
  cls->add_flag("--json", o.json);

  auto* smp = app.add_subcommand("sample", "random points of W_N with their roots");
  smp->add_option("--n", o.n, "degree N")->required();
  smp->add_option("--count", o.count, "number of samples");
  smp->add_option("--seed", o.seed);
  smp->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));

  auto* ver = app.add_subcommand("verify", "run the invariant suite for one degree");
  ver->add_option("--n", o.n, "degree N")->required();
  ver->add_option("--seed", o.seed);
  ver->add_flag("--json", o.json);

  auto* vol = app.add_subcommand("volume", "volume of W_N");
  vol->add_option("--n", o.n, "degree N")->required();
  vol->add_option("--method", o.method)->check(CLI::IsMember({"closed-form", "mc-jacobian", "mc-hit"}));
  vol->add_option("--samples", o.samples);
  vol->add_option("--seed", o.seed);
  vol->add_option("--streams", o.streams, "worker streams (default: hardware threads)");
  vol->add_option("--tol", o.tol, "unit-circle tolerance for mc-hit");
  vol->add_flag("--json", o.json);

  auto* bnd = app.add_subcommand("boundary", "boundary curve of W_3, or the (w_1, w_3) projection for W_4");
  bnd->add_option("--n", o.n, "degree N (3 or 4)")->required();
  bnd->add_option("--points", o.points);
  bnd->add_option("--format", o.format)->check(CLI::IsMember({"csv", "svg"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "crpoly: " << e.what() << "\n";
    return usage;
  }

  try {
    if (basis->parsed()) return detail::cmd_basis(o, out);
    if (cls->parsed()) return detail::cmd_classify(o, out);
    if (smp->parsed()) return detail::cmd_sample(o, out);
    if (ver->parsed()) return detail::cmd_verify(o, out);
    if (vol->parsed()) return detail::cmd_volume(o, out);
    if (bnd->parsed()) return detail::cmd_boundary(o, out);
  } catch (const invalid_argument& e) {
    err << "crpoly: " << e.what() << "\n";
    return usage;
  } catch (const not_cr_error& e) {
    err << "crpoly: " << e.what() << "\n";
    return usage;
  } catch (const error& e) {
    err << "crpoly: " << e.what() << "\n";
    return numeric;
  }
  return usage;
}

}  // namespace crpoly::cli
