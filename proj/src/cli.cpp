#include "leab/cli.hpp"

#include "leab/analysis.hpp"
#include "leab/mesh_io.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace leab::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string level_file_name(int k) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "level_%03d.json", k);
  return buf;
}

std::string num(double v) { return format_double(v); }

std::string fixed(double v, int digits = 9) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

void check_steps(int steps, std::size_t seed_triangles) {
  if (steps < 0 || steps > kMaxSteps) {
    throw UsageError("--steps must be in [0, " + std::to_string(kMaxSteps) + "]");
  }
  if (seed_triangles > (kMaxElements >> steps)) {
    throw UsageError("refinement would exceed " + std::to_string(kMaxElements) + " elements");
  }
}

void require_path(const fs::path& p, const char* flag) {
  if (p.empty()) throw UsageError(std::string(flag) + " is required");
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path.string());
  f << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

TriMeshq load_seed(const fs::path& path) {
  TriMeshq mesh = mesh_cast<Quad>(read_mesh_file(path));
  mesh.level = 0;
  for (auto& t : mesh.triangles) t.level = 0;
  return mesh;
}

void warn_hanging(const TriMeshq& mesh, const Quad& tol, std::ostream& err) {
  const auto hanging = find_hanging_nodes(mesh, tol);
  if (hanging.empty()) return;
  err << "warning: level " << mesh.level << " is non-conforming: " << hanging.size()
      << " hanging node(s)\n";
  constexpr std::size_t kListed = 10;
  for (std::size_t i = 0; i < hanging.size() && i < kListed; ++i) {
    const auto& h = hanging[i];
    const auto& p = mesh.vertices[h.vertex];
    err << "  vertex " << h.vertex << " (" << num(static_cast<double>(p.x())) << ", "
        << num(static_cast<double>(p.y())) << ") on edge " << h.edge << " of triangle " << h.triangle
        << '\n';
  }
  if (hanging.size() > kListed) err << "  ...\n";
}

void print_report(const BoundsReport<Quad>& r, std::ostream& out) {
  out << "alpha0 = " << num(static_cast<double>(r.alpha0)) << " deg\n"
      << "alpha1 = " << num(static_cast<double>(r.alpha1)) << " deg\n"
      << "alpha1 >= alpha0/2: " << (r.angle_halving_pass ? "pass" : "FAIL") << '\n'
      << "c = " << num(static_cast<double>(r.c)) << ", C = " << num(static_cast<double>(r.C)) << '\n'
      << "k min_diam max_diam lower upper pass\n";
  for (const auto& lb : r.levels) {
    out << lb.k << ' ' << num(static_cast<double>(lb.observed_min)) << ' '
        << num(static_cast<double>(lb.observed_max)) << ' ' << num(static_cast<double>(lb.lower)) << ' '
        << num(static_cast<double>(lb.upper)) << ' ' << (lb.pass ? "pass" : "FAIL") << '\n';
  }
  out << "result: " << (r.pass ? "pass" : "FAIL") << '\n';
}

void write_csv(const fs::path& path, const std::vector<LevelStats<Quad>>& stats,
               const BoundsReport<Quad>* report) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path.string());
  write_stats_csv<Quad>(f, stats, report);
}

std::string orbit_table(const OrbitTrace& trace) {
  std::string t = "step letter re im gamma_residual raw_re raw_im\n";
  t += "0 - " + fixed(trace.start.re()) + ' ' + fixed(trace.start.im()) + ' ' +
       sci(gamma_residual(trace.start.value())) + " - -\n";
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    t += std::to_string(i + 1) + ' ' + static_cast<char>(s.letter) + ' ' + fixed(s.point.re()) + ' ' +
         fixed(s.point.im()) + ' ' + sci(trace.residuals[i]) + ' ' + fixed(s.raw.real()) + ' ' +
         fixed(s.raw.imag()) + '\n';
  }
  return t;
}

double parse_decimal(std::string_view text, std::string_view whole) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("malformed complex number \"" + std::string(whole) + "\" (expected a+bi)");
  }
  return v;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  if (text.size() < 2 || text.back() != 'i') {
    throw ParseError("malformed complex number \"" + std::string(text) + "\" (expected a+bi)");
  }
  const std::string_view body = text.substr(0, text.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) {
    throw ParseError("malformed complex number \"" + std::string(text) + "\" (expected a+bi)");
  }
  const double re = parse_decimal(body.substr(0, split), text);
  std::string_view im_text = body.substr(split);
  if (im_text.front() == '+') im_text.remove_prefix(1);
  return {re, parse_decimal(im_text, text)};
}

std::vector<svg::LabeledPoint> parse_points(std::string_view text) {
  std::vector<svg::LabeledPoint> points;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string z;
    if (!(fields >> z) || z.front() == '#') continue;
    std::string label;
    std::getline(fields >> std::ws, label);
    try {
      points.push_back({parse_complex(z), label});
    } catch (const ParseError& e) {
      throw ParseError("points line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return points;
}

int cmd_refine(const RunConfig& config, std::ostream& out, std::ostream& err) {
  require_path(config.input, "--input");
  require_path(config.output, "--output");
  TriMeshq mesh = load_seed(config.input);
  check_steps(config.steps, mesh.triangles.size());
  fs::create_directories(config.output);

  const Quad tol = config.tol ? Quad(*config.tol) : Quad(1e-12) * bounding_box_diagonal(mesh);
  std::vector<LevelStats<Quad>> stats;
  BoundsChecker<Quad> checker;
  for (int k = 0; k <= config.steps; ++k) {
    if (k > 0) mesh = refine_once(mesh, config.method);
    write_mesh_file(config.output / level_file_name(k), mesh_cast<double>(mesh));
    stats.push_back(level_stats(mesh));
    if (config.method == Method::LEAB) checker.add_level(mesh);
    warn_hanging(mesh, tol, err);
    const auto& s = stats.back();
    out << "level " << k << ": " << s.n << " triangles, diameter ["
        << num(static_cast<double>(s.min_diam)) << ", " << num(static_cast<double>(s.max_diam))
        << "], min angle " << num(static_cast<double>(s.min_angle)) << " deg\n";
  }
  const bool bounded = config.method == Method::LEAB && checker.levels_seen() >= 2;
  write_csv(config.output / "stats.csv", stats, bounded ? &checker.report() : nullptr);
  return kSuccess;
}

int cmd_orbit(const RunConfig& config, std::ostream& out, std::ostream&) {
  if (config.z.empty()) throw UsageError("--z is required");
  const ShapePoint start = make_shape_point(parse_complex(config.z));
  const OrbitTrace trace = orbit(start, Word::parse(config.word));
  const std::string table = orbit_table(trace);
  out << table;
  if (!config.output.empty()) {
    fs::create_directories(config.output);
    write_text(config.output / "orbit.txt", table);
    std::vector<svg::LabeledPoint> points{{start.value(), "z"}};
    std::string prefix;
    for (const auto& s : trace.steps) {
      prefix += static_cast<char>(s.letter);
      points.push_back({s.point.value(), prefix});
    }
    write_text(config.output / "orbit.svg", svg::shape_space(points));
  }
  return kSuccess;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  require_path(config.input, "--input");
  BoundsChecker<Quad> checker(config.tol.value_or(tolerance::kBoundSlack));
  std::vector<LevelStats<Quad>> stats;

  if (fs::is_directory(config.input)) {
    for (int k = 0;; ++k) {
      const fs::path file = config.input / level_file_name(k);
      if (!fs::exists(file)) break;
      TriMeshq mesh = mesh_cast<Quad>(read_mesh_file(file));
      mesh.level = k;
      stats.push_back(level_stats(mesh));
      checker.add_level(mesh);
    }
  } else {
    TriMeshq mesh = load_seed(config.input);
    if (config.steps < 1) throw UsageError("verify needs --steps >= 1");
    check_steps(config.steps, mesh.triangles.size());
    for (int k = 0; k <= config.steps; ++k) {
      if (k > 0) mesh = refine_once(mesh, config.method);
      stats.push_back(level_stats(mesh));
      checker.add_level(mesh);
    }
  }

  const BoundsReport<Quad>& report = checker.report();
  print_report(report, out);
  if (!config.output.empty()) {
    fs::create_directories(config.output);
    write_csv(config.output / "bounds.csv", stats, &report);
  }
  if (report.pass) return kSuccess;

  if (const auto& v = report.first_violation) {
    err << "verification failed: level " << v->k << ", triangle " << v->triangle << ": diameter "
        << num(static_cast<double>(v->observed)) << (v->below_lower ? " below lower" : " above upper")
        << " bound " << num(static_cast<double>(v->bound)) << '\n';
  } else {
    err << "verification failed: alpha1 = " << num(static_cast<double>(report.alpha1))
        << " deg < alpha0/2 = " << num(static_cast<double>(report.alpha0 / 2)) << " deg\n";
  }
  return kVerificationFailed;
}

int cmd_plot(const RunConfig& config, std::ostream& out, std::ostream&) {
  require_path(config.output, "--output");
  fs::create_directories(config.output);
  if (!config.input.empty()) {
    TriMeshq mesh = load_seed(config.input);
    check_steps(config.steps, mesh.triangles.size());
    for (int k = 0; k < config.steps; ++k) mesh = refine_once(mesh, config.method);
    write_text(config.output / "mesh.svg", svg::mesh(mesh_cast<double>(mesh)));
    out << "wrote " << (config.output / "mesh.svg").string() << " (" << mesh.triangles.size()
        << " triangles)\n";
  }
  if (!config.points.empty() || config.input.empty()) {
    const auto points =
        config.points.empty() ? std::vector<svg::LabeledPoint>{} : parse_points(read_text(config.points));
    write_text(config.output / "shape_space.svg", svg::shape_space(points));
    out << "wrote " << (config.output / "shape_space.svg").string() << " (" << points.size()
        << " points)\n";
  }
  return kSuccess;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Longest-edge altitude bisection: refinement, shape-space orbits, bound checks"};
  app.name(args.empty() ? "leab" : args.front());
  app.require_subcommand(1);

  RunConfig config;
  std::string method = "leab";
  double tol = 0.0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", tol, "Tolerance override");
  };
  auto* refine = app.add_subcommand("refine", "Global refinement; writes level files and stats.csv");
  refine->add_option("--input", config.input, "Seed mesh JSON")->required();
  refine->add_option("--output", config.output, "Output directory")->required();
  refine->add_option("--steps", config.steps, "Refinement steps")->required();
  refine->add_option("--method", method, "leab or leb")->check(CLI::IsMember({"leab", "leb"}));
  add_common(refine);

  auto* orbit_cmd = app.add_subcommand("orbit", "Trace a shape point under a word over {L, R}");
  orbit_cmd->add_option("--z", config.z, "Start point a+bi")->required();
  orbit_cmd->add_option("--word", config.word, "Word over {L, R}");
  orbit_cmd->add_option("--output", config.output, "Directory for orbit.txt and orbit.svg");

  auto* verify = app.add_subcommand("verify", "Check the two-sided diameter bounds");
  verify->add_option("--input", config.input, "Seed mesh JSON, or a directory of level files")
      ->required();
  verify->add_option("--steps", config.steps, "Refinement steps (seed mode)");
  verify->add_option("--method", method, "leab or leb")->check(CLI::IsMember({"leab", "leb"}));
  verify->add_option("--output", config.output, "Directory for bounds.csv");
  add_common(verify);

  auto* plot = app.add_subcommand("plot", "Emit SVG figures");
  plot->add_option("--input", config.input, "Mesh JSON to draw");
  plot->add_option("--steps", config.steps, "Refine the mesh this many steps before drawing");
  plot->add_option("--method", method, "leab or leb")->check(CLI::IsMember({"leab", "leb"}));
  plot->add_option("--points", config.points, "Shape-space points file");
  plot->add_option("--output", config.output, "Output directory")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  config.method = method == "leb" ? Method::LEB : Method::LEAB;
  for (auto* sub : {refine, verify}) {
    if (sub->parsed() && sub->count("--tol") > 0) config.tol = tol;
  }

  try {
    if (refine->parsed()) return cmd_refine(config, out, err);
    if (orbit_cmd->parsed()) return cmd_orbit(config, out, err);
    if (verify->parsed()) return cmd_verify(config, out, err);
    return cmd_plot(config, out, err);
  } catch (const DegeneracyError& e) {
    err << "degeneracy error: " << e.what() << '\n';
    return kDegeneracy;
  } catch (const DegenerateShapeError& e) {
    err << "degeneracy error: " << e.what() << '\n';
    return kDegeneracy;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

int run(int argc, char** argv) {
  return run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

}  // namespace leab::cli
