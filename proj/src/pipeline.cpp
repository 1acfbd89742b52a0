#include "mayer/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include "json.hpp"
#include "mayer/io.hpp"

namespace mayer {

std::vector<int> RunConfig::resolved_stages() const {
  if (!stages.empty()) return stages;
  std::vector<int> all;
  for (int q = 1; q < order; ++q) all.push_back(q);
  return all;
}

void RunConfig::validate() const {
  require_prime_order(order);
  for (int q : stages) {
    if (q < 1 || q >= order) throw std::invalid_argument("stage " + std::to_string(q) + " is outside 1..N-1");
  }
  if (max_dim < 0) throw std::invalid_argument("max-dim must be non-negative");
  if (dims.empty()) throw std::invalid_argument("no dimensions requested");
  for (int n : dims) {
    if (n < 0 || n > max_dim) throw std::invalid_argument("dimension " + std::to_string(n) + " is outside 0..max-dim");
  }
  if (persistence_step < 0) throw std::invalid_argument("persistence step must be non-negative");
  if (!(zero_tolerance > 0.0)) throw std::invalid_argument("zero tolerance must be positive");
  if (max_radius < 0) throw std::invalid_argument("max-radius must be non-negative");
}

std::vector<std::size_t> ChannelReport::cross_check_failures() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < spectra.size(); ++i) {
    if (spectra[i].zero_count != spectra[i].expected_zero || spectra[i].zero_count != betti[i]) out.push_back(i);
  }
  return out;
}

bool PipelineResult::cross_check_ok() const {
  return std::all_of(channels.begin(), channels.end(),
                     [](const ChannelReport& c) { return c.cross_check_failures().empty(); });
}

unsigned thread_limit() {
  if (const char* env = std::getenv("MAYER_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

namespace {

ChannelReport run_channel(const RunConfig& config, const MayerPersistence& engine, const std::vector<double>& crit,
                          Channel channel) {
  ChannelReport report{channel, {}, {}, {}};
  const std::size_t m = crit.size();
  const auto step = static_cast<std::size_t>(config.persistence_step);
  for (std::size_t i = 0; i < m; ++i) {
    const double a = crit[i];
    const double b = crit[std::min(i + step, m - 1)];
    const std::size_t beta = engine.persistent_betti(channel.n, channel.q, a, b);
    report.betti.push_back(beta);
    if (!config.eigen) continue;
    const HermitianMatrix l = persistent_laplacian(engine, channel.n, channel.q, a, b);
    const auto eigs = hermitian_eigenvalues(l, config.eigen_method);
    const SpectrumReport s = spectral_summary(eigs, beta, config.zero_tolerance);
    SpectrumPoint p;
    p.a = a;
    p.b = b;
    p.order = l.order();
    p.zero_count = s.zero_count;
    p.lambda1 = s.lambda1;
    p.lambda_max = s.lambda_max;
    p.mean_positive = s.mean_positive;
    p.expected_zero = beta;
    if (config.keep_eigenvalues) p.eigenvalues = eigs;
    report.spectra.push_back(std::move(p));
  }
  if (config.diagrams) report.diagram = engine.diagram(channel.n, channel.q);
  return report;
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& config, const FilteredComplex& k, const std::string& input_name) {
  config.validate();
  PipelineResult result{config, input_name, k.critical_values(), {}};
  MayerPersistence engine(k, config.order, config.engine);

  std::vector<Channel> channels;
  for (int n : config.dims) {
    for (int q : config.resolved_stages()) channels.push_back({n, q, config.order});
  }
  result.channels.resize(channels.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < channels.size(); i = next++) {
      try {
        result.channels[i] = run_channel(config, engine, result.critical_values, channels[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min<std::size_t>(thread_limit(), channels.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

namespace {

using Json = nlohmann::ordered_json;

Json number_or_null(double v) { return std::isinf(v) ? Json(nullptr) : Json(v); }

}  // namespace

std::string to_json(const PipelineResult& r) {
  Json root;
  root["meta"] = {{"N", r.config.order},
                  {"dims", r.config.dims},
                  {"stages", r.config.resolved_stages()},
                  {"input", r.input},
                  {"tool_version", kToolVersion}};
  if (r.config.persistence_step > 0) root["meta"]["persistence_step"] = r.config.persistence_step;
  root["critical_values"] = r.critical_values;
  Json channels = Json::array();
  for (const auto& c : r.channels) {
    Json ch;
    ch["n"] = c.channel.n;
    ch["q"] = c.channel.q;
    ch["betti"] = c.betti;
    if (r.config.eigen) {
      Json zero = Json::array(), lambda1 = Json::array(), lmax = Json::array(), mean = Json::array();
      for (const auto& p : c.spectra) {
        zero.push_back(p.zero_count);
        lambda1.push_back(p.lambda1 ? Json(*p.lambda1) : Json(nullptr));
        lmax.push_back(p.lambda_max);
        mean.push_back(p.mean_positive);
      }
      ch["zero_count"] = zero;
      ch["lambda1"] = lambda1;
      ch["lambda_max"] = lmax;
      ch["mean_positive"] = mean;
    }
    if (c.diagram) {
      Json points = Json::array();
      for (const auto& p : c.diagram->points) points.push_back(Json::array({p.birth, number_or_null(p.death), p.multiplicity}));
      ch["diagram"] = points;
    }
    channels.push_back(std::move(ch));
  }
  root["channels"] = std::move(channels);
  return root.dump(2) + "\n";
}

std::string to_csv(const PipelineResult& r) {
  std::ostringstream out;
  out << "value";
  for (const auto& c : r.channels) {
    const std::string tag = "_" + std::to_string(c.channel.n) + "_" + std::to_string(c.channel.q);
    out << ",betti" << tag;
    if (r.config.eigen) out << ",zero_count" << tag << ",lambda1" << tag << ",lambda_max" << tag << ",mean_positive" << tag;
  }
  out << '\n';
  for (std::size_t i = 0; i < r.critical_values.size(); ++i) {
    out << format_value(r.critical_values[i]);
    for (const auto& c : r.channels) {
      out << ',' << c.betti[i];
      if (r.config.eigen) {
        const auto& p = c.spectra[i];
        out << ',' << p.zero_count << ',' << (p.lambda1 ? format_value(*p.lambda1) : "") << ','
            << format_value(p.lambda_max) << ',' << format_value(p.mean_positive);
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace mayer
