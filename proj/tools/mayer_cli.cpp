// mayer: command-line front end.
//
//   mayer betti    <input> [options]
//   mayer spectra  <input> [options]
//   mayer diagram  <input> [options]
//   mayer distance <input> <input> [options]
//
// Exit codes: 0 ok, 1 usage or parse error, 2 internal cross-check failure.

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mayer/io.hpp"
#include "mayer/metrics.hpp"
#include "mayer/pipeline.hpp"

namespace fs = std::filesystem;
using namespace mayer;

namespace {

enum class InputKind { Detect, Complex, Points, Xyz };

struct Options {
  RunConfig config;
  std::vector<std::string> inputs;
  std::string complex_path, points_path, xyz_path;
  std::string format = "table";
  std::string out_path;
  std::string backend = "auto";
  std::string max_radius = "inf";
  double wasserstein_r = 2.0;
  bool eigen_on = false;
  bool eigen_off = false;
};

struct Loaded {
  FilteredComplex complex;
  std::string name;
};

double parse_radius(const std::string& text) {
  if (text == "inf" || text == "unbounded") return kUnbounded;
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size() || std::isnan(v) || v < 0) throw CLI::ValidationError("--max-radius", "bad radius " + text);
  return v;
}

Loaded load(const std::string& path, InputKind kind, const RunConfig& config) {
  if (kind == InputKind::Detect) {
    const std::string ext = fs::path(path).extension().string();
    if (ext == ".xyz") kind = InputKind::Xyz;
    else if (ext == ".cplx" || ext == ".complex") kind = InputKind::Complex;
    else kind = InputKind::Points;
  }
  if (kind == InputKind::Complex) return {parse_complex(fs::path(path)), path};
  const PointCloud cloud = kind == InputKind::Xyz ? parse_xyz(fs::path(path)) : parse_points(fs::path(path));
  return {vr_filtration(cloud, config.max_dim, config.max_radius), path};
}

std::vector<Loaded> load_inputs(const Options& o) {
  std::vector<Loaded> out;
  if (!o.complex_path.empty()) out.push_back(load(o.complex_path, InputKind::Complex, o.config));
  if (!o.points_path.empty()) out.push_back(load(o.points_path, InputKind::Points, o.config));
  if (!o.xyz_path.empty()) out.push_back(load(o.xyz_path, InputKind::Xyz, o.config));
  for (const auto& p : o.inputs) out.push_back(load(p, InputKind::Detect, o.config));
  return out;
}

void emit(const Options& o, const std::string& text) {
  if (o.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(o.out_path);
  if (!file) throw ParseError("cannot write " + o.out_path);
  file << text;
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::string betti_table(const PipelineResult& r) {
  std::ostringstream out;
  out << std::left << std::setw(12) << "value";
  for (const auto& c : r.channels) {
    out << std::setw(10) << ("b" + std::to_string(c.channel.n) + "," + std::to_string(c.channel.q));
  }
  out << '\n';
  for (std::size_t i = 0; i < r.critical_values.size(); ++i) {
    out << std::setw(12) << format_value(r.critical_values[i]);
    for (const auto& c : r.channels) out << std::setw(10) << c.betti[i];
    out << '\n';
  }
  return out.str();
}

std::string spectra_table(const PipelineResult& r) {
  std::ostringstream out;
  for (const auto& c : r.channels) {
    out << "n=" << c.channel.n << " q=" << c.channel.q << " N=" << c.channel.order << '\n';
    for (const auto& p : c.spectra) {
      out << "  r=" << format_value(p.a);
      if (p.b != p.a) out << ".." << format_value(p.b);
      out << "  betti=" << p.expected_zero << "  zeros=" << p.zero_count
          << "  lambda1=" << (p.lambda1 ? fixed(*p.lambda1, 4) : std::string("-")) << "  eigenvalues:";
      for (double v : p.eigenvalues) out << ' ' << fixed(std::abs(v) < p.lambda_max * 1e-12 ? 0.0 : v, 4);
      out << '\n';
    }
  }
  return out.str();
}

std::string diagram_table(const PipelineResult& r) {
  std::ostringstream out;
  for (const auto& c : r.channels) {
    out << "n=" << c.channel.n << " q=" << c.channel.q << " N=" << c.channel.order << '\n';
    if (!c.diagram) continue;
    for (const auto& p : c.diagram->points) {
      out << "  (" << format_value(p.birth) << ", " << (p.essential() ? "inf" : format_value(p.death)) << ")";
      if (p.multiplicity > 1) out << " x" << p.multiplicity;
      out << '\n';
    }
  }
  return out.str();
}

int report_cross_check(const PipelineResult& r) {
  int code = 0;
  for (const auto& c : r.channels) {
    for (std::size_t i : c.cross_check_failures()) {
      std::cerr << "cross-check failed: channel n=" << c.channel.n << " q=" << c.channel.q << " N=" << c.channel.order
                << " at r=" << format_value(r.critical_values[i]) << ": " << c.spectra[i].zero_count
                << " zero eigenvalues, Betti " << c.betti[i] << '\n';
      code = 2;
    }
  }
  return code;
}

int run_single(Options& o, const std::string& command) {
  auto inputs = load_inputs(o);
  if (inputs.size() != 1) throw CLI::ValidationError("input", command + " takes exactly one input");
  RunConfig& c = o.config;
  c.eigen = o.eigen_on || (!o.eigen_off && command == "spectra");
  c.diagrams = command == "diagram" || o.format == "json";
  c.keep_eigenvalues = command == "spectra" && o.format == "table";
  const PipelineResult r = run_pipeline(c, inputs.front().complex, inputs.front().name);
  if (o.format == "json") emit(o, to_json(r));
  else if (o.format == "csv") emit(o, to_csv(r));
  else if (command == "spectra") emit(o, c.eigen ? spectra_table(r) : betti_table(r));
  else if (command == "diagram") emit(o, diagram_table(r));
  else emit(o, betti_table(r));
  return report_cross_check(r);
}

int run_distance(Options& o) {
  auto inputs = load_inputs(o);
  if (inputs.size() != 2) throw CLI::ValidationError("input", "distance takes exactly two inputs");
  o.config.validate();
  MayerPersistence e1(inputs[0].complex, o.config.order, o.config.engine);
  MayerPersistence e2(inputs[1].complex, o.config.order, o.config.engine);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::ostringstream table;
  table << std::left << std::setw(6) << "n" << std::setw(20) << ("W_" + format_value(o.wasserstein_r)) << "bottleneck\n";
  for (int n : o.config.dims) {
    const DiagramFamily f1 = diagram_family(e1, n), f2 = diagram_family(e2, n);
    const double w = family_wasserstein(f1, f2, o.wasserstein_r);
    const double b = family_bottleneck(f1, f2);
    rows.push_back({{"n", n}, {"wasserstein", std::isinf(w) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(w)},
                    {"bottleneck", std::isinf(b) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(b)}});
    table << std::setw(6) << n << std::setw(20) << format_value(w) << format_value(b) << '\n';
  }
  if (o.format == "json") {
    nlohmann::ordered_json root;
    root["meta"] = {{"N", o.config.order},
                    {"dims", o.config.dims},
                    {"inputs", {inputs[0].name, inputs[1].name}},
                    {"r", o.wasserstein_r},
                    {"tool_version", kToolVersion}};
    root["distances"] = rows;
    emit(o, root.dump(2) + "\n");
  } else if (o.format == "csv") {
    std::ostringstream csv;
    csv << "n,wasserstein,bottleneck\n";
    for (const auto& row : rows) {
      csv << row["n"].get<int>() << ',' << (row["wasserstein"].is_null() ? "inf" : format_value(row["wasserstein"]))
          << ',' << (row["bottleneck"].is_null() ? "inf" : format_value(row["bottleneck"])) << '\n';
    }
    emit(o, csv.str());
  } else {
    emit(o, table.str());
  }
  return 0;
}

void add_common(CLI::App* app, Options& o, bool two_inputs) {
  app->add_option("inputs", o.inputs, two_inputs ? "Two inputs (.xyz, .cplx, or CSV points)" : "Input file")
      ->check(CLI::ExistingFile);
  app->add_option("--complex", o.complex_path, "Explicit complex file")->check(CLI::ExistingFile);
  app->add_option("--points", o.points_path, "CSV point list")->check(CLI::ExistingFile);
  app->add_option("--xyz", o.xyz_path, "XYZ molecule")->check(CLI::ExistingFile);
  app->add_option("-N,--n-differential", o.config.order, "Prime N with d^N = 0")->default_val(3);
  app->add_option("--stages", o.config.stages, "Stages q (default 1..N-1)")->delimiter(',');
  app->add_option("--dims", o.config.dims, "Homological dimensions")->delimiter(',')->default_str("0,1");
  app->add_option("--max-dim", o.config.max_dim, "Skeleton cap for Vietoris-Rips")->default_val(3);
  app->add_option("--max-radius", o.max_radius, "Largest edge length kept (or inf)")->default_val("inf");
  auto* on = app->add_flag("--eigen", o.eigen_on, "Compute Laplacian spectra");
  app->add_flag("--no-eigen", o.eigen_off, "Skip Laplacian spectra")->excludes(on);
  app->add_option("--tolerance", o.config.zero_tolerance, "Relative zero-eigenvalue threshold")
      ->default_val(kZeroTolerance);
  app->add_option("--persistence-step", o.config.persistence_step, "Evaluate spectra at (r_i, r_{i+k})")
      ->default_val(0);
  app->add_option("--wasserstein-r", o.wasserstein_r, "Wasserstein exponent")->default_val(2.0);
  app->add_option("--format", o.format, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->default_val("table");
  app->add_option("--out", o.out_path, "Write the report here instead of stdout");
  app->add_option("--rank-backend", o.backend, "exact, modular or auto")
      ->check(CLI::IsMember({"exact", "modular", "auto"}))
      ->default_val("auto");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persistent Mayer homology and Mayer Laplacians"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  Options o;
  auto* betti = app.add_subcommand("betti", "Persistent Mayer Betti curves");
  auto* spectra = app.add_subcommand("spectra", "Mayer Laplacian spectra and Betti curves");
  auto* diagram = app.add_subcommand("diagram", "Persistence diagrams per channel");
  auto* distance = app.add_subcommand("distance", "Family Wasserstein and bottleneck distances");
  for (auto* sub : {betti, spectra, diagram}) add_common(sub, o, false);
  add_common(distance, o, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    o.config.max_radius = parse_radius(o.max_radius);
    o.config.eigen_method = EigenMethod::Auto;
    o.config.engine.backend = o.backend == "exact"     ? RankBackend::Exact
                              : o.backend == "modular" ? RankBackend::Modular
                                                       : RankBackend::Auto;
    if (distance->parsed()) return run_distance(o);
    const std::string command = betti->parsed() ? "betti" : spectra->parsed() ? "spectra" : "diagram";
    return run_single(o, command);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ConsistencyError& e) {
    std::cerr << "cross-check failed: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "cross-check failed: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
