// Command-line surface for the Doeblin-coupling simulator.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "doeblin/bridge.hpp"
#include "doeblin/chain.hpp"
#include "doeblin/eft.hpp"
#include "doeblin/errors.hpp"
#include "doeblin/estimators.hpp"
#include "doeblin/measure.hpp"
#include "doeblin/sampler.hpp"

namespace {

constexpr const char* kVersion = "doeblin 0.1.0";

using namespace doeblin;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct Output {
  std::string path;  // empty = stdout
  std::string format = "csv";
  std::ostringstream header;  // '# key=value' lines (csv) / object fields (json)
  std::vector<std::pair<std::string, std::string>> meta;

  void add_meta(const std::string& k, const std::string& v) { meta.emplace_back(k, v); }

  void write(const std::string& csv_body, const std::string& json_body) const {
    std::ostringstream os;
    if (format == "json") {
      os << "{\"version\":\"" << kVersion << "\"";
      for (auto& [k, v] : meta) os << ",\"" << k << "\":\"" << v << "\"";
      os << ",\"data\":" << json_body << "}\n";
    } else {
      os << "# version=" << kVersion << '\n';
      for (auto& [k, v] : meta) os << "# " << k << '=' << v << '\n';
      os << csv_body;
    }
    if (path.empty()) {
      std::cout << os.str();
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << os.str();
  }
};

std::string resolve_out(const std::string& out) {
  if (out.empty()) return out;
  std::filesystem::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("DOEBLIN_OUT_DIR")) p = std::filesystem::path(dir) / p;
  }
  return p.string();
}

// One taboo/potential sample; monotone chains use the record sampler, the
// renewal chain its windowed axis-skip sampler.
PPSample one_sample(const ChainModel& model, Coupling coupling, std::uint64_t seed, State K,
                    std::int64_t max_n, PPKind kind, Strategy strategy) {
  const NoiseField noise = make_noise(model, seed, coupling);
  if (model.monotone() && noise.common_mode()) {
    return kind == PPKind::taboo ? sample_taboo_pp(model, noise, K, max_n)
                                 : sample_potential_pp(model, noise, K, max_n, strategy);
  }
  if (model.kind() == ChainModel::Kind::renewal)
    return renewal_windowed_sample(model, noise, K, max_n, kind);
  throw UsageError("no sampler for model '" + model.name() + "' under coupling '" +
                   coupling_name(coupling) + "'");
}

std::vector<CountingMeasure> parallel_samples(const ChainModel& model, Coupling coupling,
                                              std::uint64_t seed, std::int64_t reps, State K,
                                              std::int64_t max_n, PPKind kind, int threads,
                                              std::int64_t* censored_out) {
  std::vector<CountingMeasure> samples{size_t(reps)};
  std::atomic<std::int64_t> censored{0};
  auto work = [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t i = lo; i < hi; ++i) {
      PPSample s = one_sample(model, coupling, seed + std::uint64_t(i), K, max_n, kind,
                              Strategy::exponential_search);
      if (s.status == SampleStatus::censored) ++censored;
      samples[size_t(i)] = std::move(s.atoms);
    }
  };
  if (threads <= 1) {
    work(0, reps);
  } else {
    std::vector<std::thread> pool;
    const std::int64_t chunk = (reps + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const std::int64_t lo = w * chunk, hi = std::min<std::int64_t>(reps, lo + chunk);
      if (lo < hi) pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  if (censored_out) *censored_out = censored.load();
  return samples;
}

struct CommonOpts {
  std::string model_spec;
  std::string coupling_str = "common";
  std::uint64_t seed = 1;
  std::int64_t reps = 1000;
  State region = 100;
  std::int64_t max_n = 1 << 20;
  int threads = 1;
  std::string out;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_model = true) {
  if (with_model) cmd->add_option("--model", o.model_spec, "model spec")->required();
  cmd->add_option("--coupling", o.coupling_str, "independent|common|maximal_shift");
  cmd->add_option("--seed", o.seed, "master seed")->check(CLI::PositiveNumber);
  cmd->add_option("--reps", o.reps, "replications")->check(CLI::PositiveNumber);
  cmd->add_option("--region,--K", o.region, "state region bound K");
  cmd->add_option("--max-n", o.max_n, "backward depth cap / window");
  cmd->add_option("--threads", o.threads, "worker threads");
  cmd->add_option("--out", o.out, "output path (default stdout)");
  cmd->add_option("--format", o.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
}

Output make_output(const CommonOpts& o) {
  Output out;
  out.path = resolve_out(o.out);
  out.format = o.format;
  return out;
}

int cmd_sample_pp(const CommonOpts& o, PPKind kind) {
  const ChainModel model = ChainModel::parse(o.model_spec);
  const Coupling coupling = parse_coupling(o.coupling_str);
  const PPSample s = one_sample(model, coupling, o.seed, o.region, o.max_n, kind,
                                Strategy::exponential_search);
  Output out = make_output(o);
  out.add_meta("command", kind == PPKind::taboo ? "sample-taboo" : "sample-potential");
  out.add_meta("model", model.name());
  out.add_meta("coupling", coupling_name(coupling));
  out.add_meta("seed", std::to_string(o.seed));
  out.add_meta("region", std::to_string(o.region));
  out.add_meta("max_n", std::to_string(o.max_n));
  out.add_meta("status", s.status == SampleStatus::exact ? "exact" : "censored");
  out.add_meta("depth_used", std::to_string(s.depth_used));
  out.write(s.atoms.to_csv(), s.to_json());
  return 0;
}

int cmd_mean_measure(const CommonOpts& o, const std::string& kind_str) {
  const ChainModel model = ChainModel::parse(o.model_spec);
  const Coupling coupling = parse_coupling(o.coupling_str);
  const PPKind kind = kind_str == "potential" ? PPKind::potential : PPKind::taboo;
  std::int64_t censored = 0;
  const auto samples = parallel_samples(model, coupling, o.seed, o.reps, o.region, o.max_n, kind,
                                        o.threads, &censored);
  EstimatorReport rep = mean_measure(samples, o.region);
  rep.censored_fraction = double(censored) / double(o.reps);
  Output out = make_output(o);
  out.add_meta("command", "mean-measure");
  out.add_meta("kind", kind_str);
  out.add_meta("model", model.name());
  out.add_meta("coupling", coupling_name(coupling));
  out.add_meta("seed", std::to_string(o.seed));
  out.add_meta("reps", std::to_string(o.reps));
  out.add_meta("censored", std::to_string(censored));
  out.write(rep.to_csv(), rep.to_json());
  return 0;
}

int cmd_invariant_oracle(const CommonOpts& o, std::int64_t n_excursions) {
  const ChainModel model = ChainModel::parse(o.model_spec);
  const EstimatorReport rep = invariant_measure_oracle(model, o.region, n_excursions, o.seed);
  Output out = make_output(o);
  out.add_meta("command", "invariant-oracle");
  out.add_meta("model", model.name());
  out.add_meta("seed", std::to_string(o.seed));
  out.add_meta("n_excursions", std::to_string(n_excursions));
  out.add_meta("censored_fraction", fmt(rep.censored_fraction));
  out.write(rep.to_csv(), rep.to_json());
  return 0;
}

int cmd_eft_connectivity(const CommonOpts& o, const std::string& dist_spec, std::int64_t z0,
                         std::int64_t horizon, std::int64_t trials) {
  const JumpDistribution dist = JumpDistribution::parse(dist_spec);
  const MeetingResult r = meeting_experiment(dist, z0, horizon, trials, o.seed);
  Output out = make_output(o);
  out.add_meta("command", "eft-connectivity");
  out.add_meta("dist", dist.spec_string());
  out.add_meta("seed", std::to_string(o.seed));
  std::ostringstream csv;
  csv << "dist,z0,horizon,trials,meeting_frequency,ci_low,ci_high\n"
      << dist.spec_string() << ',' << z0 << ',' << horizon << ',' << trials << ','
      << fmt(r.frequency) << ',' << fmt(r.ci_low) << ',' << fmt(r.ci_high) << '\n';
  std::ostringstream json;
  json << "{\"dist\":\"" << dist.spec_string() << "\",\"z0\":" << z0 << ",\"horizon\":" << horizon
       << ",\"trials\":" << trials << ",\"meeting_frequency\":" << fmt(r.frequency)
       << ",\"ci_low\":" << fmt(r.ci_low) << ",\"ci_high\":" << fmt(r.ci_high) << '}';
  out.write(csv.str(), json.str());
  return 0;
}

int cmd_k_function(const CommonOpts& o, State at, const std::vector<State>& radii) {
  const ChainModel model = ChainModel::parse(o.model_spec);
  const Coupling coupling = parse_coupling(o.coupling_str);
  std::int64_t censored = 0;
  const auto samples = parallel_samples(model, coupling, o.seed, o.reps, o.region, o.max_n,
                                        PPKind::taboo, o.threads, &censored);
  Output out = make_output(o);
  out.add_meta("command", "k-function");
  out.add_meta("model", model.name());
  out.add_meta("seed", std::to_string(o.seed));
  out.add_meta("reps", std::to_string(o.reps));
  out.add_meta("state", std::to_string(at));
  out.add_meta("censored", std::to_string(censored));
  std::ostringstream csv, json;
  csv << "radius,k_estimate,stderr,defined\n";
  json << '[';
  for (size_t idx = 0; idx < radii.size(); ++idx) {
    const KEstimate k = k_function(samples, at, radii[idx]);
    csv << radii[idx] << ',' << fmt(k.value) << ',' << fmt(k.stderr_) << ','
        << (k.defined ? 1 : 0) << '\n';
    if (idx) json << ',';
    json << "{\"radius\":" << radii[idx] << ",\"k\":" << fmt(k.value) << ",\"stderr\":"
         << fmt(k.stderr_) << ",\"defined\":" << (k.defined ? "true" : "false") << '}';
  }
  json << ']';
  out.write(csv.str(), json.str());
  return 0;
}

// Data behind the perfect-sample figures: atoms of taboo and potential
// samples of the critical queue, one row per (rep, kind, state, count).
int cmd_queue_demo(const CommonOpts& o) {
  const ChainModel model = ChainModel::parse(o.model_spec.empty() ? "queue:geo:0.2:geo:0.2"
                                                                  : o.model_spec);
  std::ostringstream csv, json;
  csv << "rep,kind,state,count,status\n";
  json << '[';
  std::int64_t censored = 0;
  for (std::int64_t rep = 0; rep < o.reps; ++rep) {
    for (PPKind kind : {PPKind::taboo, PPKind::potential}) {
      const PPSample s = one_sample(model, Coupling::common, o.seed + std::uint64_t(rep),
                                    o.region, o.max_n, kind, Strategy::exponential_search);
      const char* kname = kind == PPKind::taboo ? "taboo" : "potential";
      const char* status = s.status == SampleStatus::exact ? "exact" : "censored";
      if (s.status == SampleStatus::censored) ++censored;
      for (auto& [x, c] : s.atoms.counts())
        csv << rep << ',' << kname << ',' << x << ',' << c << ',' << status << '\n';
      if (rep || kind == PPKind::potential) json << ',';
      json << "{\"rep\":" << rep << ",\"kind\":\"" << kname << "\",\"sample\":" << s.to_json()
           << '}';
    }
  }
  json << ']';
  Output out = make_output(o);
  out.add_meta("command", "queue-demo");
  out.add_meta("model", model.name());
  out.add_meta("seed", std::to_string(o.seed));
  out.add_meta("reps", std::to_string(o.reps));
  out.add_meta("region", std::to_string(o.region));
  out.add_meta("censored", std::to_string(censored));
  out.write(csv.str(), json.str());
  return 0;
}

int cmd_bridge_dump(const CommonOpts& o, std::int64_t t_min, std::int64_t t_max) {
  const ChainModel model = ChainModel::parse(o.model_spec);
  const Coupling coupling = parse_coupling(o.coupling_str);
  const NoiseField noise = make_noise(model, o.seed, coupling);
  const BridgeGraph bridge = build_bridge(model, noise, t_min, t_max);
  Output out = make_output(o);
  out.add_meta("command", "bridge-dump");
  out.add_meta("model", model.name());
  out.add_meta("coupling", coupling_name(coupling));
  out.add_meta("seed", std::to_string(o.seed));
  out.add_meta("window", std::to_string(t_min) + ".." + std::to_string(t_max));
  std::ostringstream json;
  json << "{\"vertices\":" << bridge.vertex_count() << '}';
  out.write(bridge.export_csv(), json.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Doeblin coupling simulator: perfect samples of taboo/potential point processes"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string kind_str = "taboo";
  std::string dist_spec = "zeta:0.75";
  std::int64_t z0 = 1, horizon = 100000, trials = 1000, n_excursions = 100000;
  State at_state = 0;
  std::vector<State> radii{1, 2, 5, 10};
  std::int64_t t_min = -50, t_max = 1;

  auto* sc_taboo = app.add_subcommand("sample-taboo", "one taboo point process sample");
  add_common(sc_taboo, o);
  auto* sc_pot = app.add_subcommand("sample-potential", "one potential point process sample");
  add_common(sc_pot, o);
  auto* sc_mean = app.add_subcommand("mean-measure", "empirical mean measure over samples");
  add_common(sc_mean, o);
  sc_mean->add_option("--kind", kind_str, "taboo|potential")
      ->check(CLI::IsMember({"taboo", "potential"}));
  auto* sc_oracle = app.add_subcommand("invariant-oracle", "excursion occupation estimate");
  add_common(sc_oracle, o);
  sc_oracle->add_option("--n", n_excursions, "number of excursions");
  auto* sc_eft = app.add_subcommand("eft-connectivity", "oscillating-walk meeting experiment");
  add_common(sc_eft, o, /*with_model=*/false);
  sc_eft->add_option("--dist", dist_spec, "jump distribution spec")->required();
  sc_eft->add_option("--z0", z0, "initial separation");
  sc_eft->add_option("--horizon", horizon, "walk horizon");
  sc_eft->add_option("--trials", trials, "number of trials");
  auto* sc_k = app.add_subcommand("k-function", "K-function over taboo samples");
  add_common(sc_k, o);
  sc_k->add_option("--state", at_state, "conditioning state i")->required();
  sc_k->add_option("--radius", radii, "radii r");
  auto* sc_demo = app.add_subcommand("queue-demo", "perfect-sample figure data, critical queue");
  add_common(sc_demo, o, /*with_model=*/false);
  sc_demo->add_option("--model", o.model_spec, "queue model spec");
  auto* sc_dump = app.add_subcommand("bridge-dump", "bridge graph vertex dump");
  add_common(sc_dump, o);
  sc_dump->add_option("--from", t_min, "window start");
  sc_dump->add_option("--to", t_max, "window end (exclusive starts)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sc_taboo->parsed()) return cmd_sample_pp(o, PPKind::taboo);
    if (sc_pot->parsed()) return cmd_sample_pp(o, PPKind::potential);
    if (sc_mean->parsed()) return cmd_mean_measure(o, kind_str);
    if (sc_oracle->parsed()) return cmd_invariant_oracle(o, n_excursions);
    if (sc_eft->parsed()) return cmd_eft_connectivity(o, dist_spec, z0, horizon, trials);
    if (sc_k->parsed()) return cmd_k_function(o, at_state, radii);
    if (sc_demo->parsed()) return cmd_queue_demo(o);
    if (sc_dump->parsed()) return cmd_bridge_dump(o, t_min, t_max);
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
