// Command-line front end: distance | flow | mds | sample | bench.
// Reads a JSON config, writes a JSON report (or a point cloud for
// `sample`) to --output, defaulting to stdout.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hadsw/chsw.hpp"
#include "hadsw/errors.hpp"
#include "hadsw/exact.hpp"
#include "hadsw/flows.hpp"
#include "hadsw/io.hpp"
#include "hadsw/manifold.hpp"
#include "hadsw/mds.hpp"
#include "hadsw/sampling.hpp"

namespace {

using hadsw::MatrixXd;
using hadsw::VectorXd;
using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

struct Options {
  std::string config;
  std::string output;
  std::uint64_t seed = 0;
  int threads = 1;
};

json load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw hadsw::ConstraintViolation("cannot open config: " + path);
  return json::parse(is);
}

MatrixXd matrix_from_json(const json& j) {
  const auto rows = j.get<std::vector<std::vector<double>>>();
  if (rows.empty()) throw hadsw::ConstraintViolation("empty matrix");
  MatrixXd m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw hadsw::ConstraintViolation("ragged matrix");
    for (std::size_t k = 0; k < rows[i].size(); ++k) m(i, k) = rows[i][k];
  }
  return m;
}

VectorXd vector_from_json(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const VectorXd>(v.data(), v.size());
}

ordered_json matrix_to_json(const MatrixXd& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

void emit(const ordered_json& doc, const std::string& output) {
  if (output.empty()) {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream os(output);
  if (!os) throw hadsw::ConstraintViolation("cannot open output: " + output);
  os << doc.dump(2) << "\n";
}

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

hadsw::ChswParams chsw_params(const json& cfg, const Options& opt) {
  hadsw::ChswParams p;
  p.projection =
      hadsw::projection_from_name(cfg.value("projection", "geodesic"));
  p.p = cfg.value("p", 2.0);
  p.num_directions = cfg.value("num_directions", 64);
  p.seed = opt.seed;
  p.threads = opt.threads;
  return p;
}

ordered_json run_distance(const json& cfg, const Options& opt) {
  const Stopwatch timer;
  const auto paths = cfg.at("measures").get<std::vector<std::string>>();
  if (paths.size() != 2)
    throw hadsw::ConstraintViolation("distance needs exactly two measures");
  const auto mu = hadsw::read_measure_file(paths[0]);
  const auto nu = hadsw::read_measure_file(paths[1]);
  const auto params = chsw_params(cfg, opt);
  const auto res = hadsw::chsw(mu, nu, params);

  const int l = params.num_directions;
  const double mean = res.value_pp;
  const double var =
      l > 1 ? (res.per_direction.array() - mean).square().sum() / (l - 1)
            : 0.0;

  ordered_json doc;
  doc["command"] = "distance";
  doc["chsw_p"] = res.value_pp;  // Monte-Carlo mean of W_p^p
  doc["chsw"] = res.value;       // its p-th root, the estimated distance
  doc["L"] = l;
  doc["p"] = params.p;
  doc["projection"] = hadsw::projection_name(params.projection);
  doc["seed"] = params.seed;
  doc["per_direction_stats"] = {{"mean", mean}, {"std", std::sqrt(var)}};
  doc["mc_stderr"] = res.mc_stderr;
  if (cfg.value("exact_wp", false)) {
    const double wpp = hadsw::exact_wp(mu, nu, params.p);
    doc["exact_wp_pp"] = wpp;
    doc["exact_wp"] = std::pow(wpp, 1.0 / params.p);
  }
  doc["wall_time_ms"] = timer.ms();
  return doc;
}

ordered_json run_flow(const json& cfg, const Options& opt) {
  const Stopwatch timer;
  const auto mu0 = hadsw::read_measure_file(cfg.at("initial").get<std::string>());
  const auto target = hadsw::read_measure_file(cfg.at("target").get<std::string>());

  hadsw::FlowParams p;
  p.projection =
      hadsw::projection_from_name(cfg.value("projection", "horospherical"));
  p.num_directions = cfg.value("num_directions", 64);
  p.step_size = cfg.value("step_size", 0.1);
  p.num_steps = cfg.value("num_steps", 100);
  p.fresh_directions = cfg.value("fresh_directions", true);
  p.clip_norm = cfg.value("clip_norm", 10.0);
  p.history_every = cfg.value("history_every", 1);
  p.track_w2 = cfg.value("track_w2", false);
  p.seed = opt.seed;
  p.threads = opt.threads;

  const auto res = hadsw::run_flow(mu0, target, p);
  if (cfg.contains("points_output"))
    hadsw::write_measure_file(
        cfg.at("points_output").get<std::string>(),
        hadsw::DiscreteMeasure::weighted(mu0.manifold, res.points,
                                         mu0.weights));
  if (cfg.contains("history_output")) {
    std::ofstream hs(cfg.at("history_output").get<std::string>());
    if (!hs)
      throw hadsw::ConstraintViolation("cannot open history output");
    for (std::size_t k = 0; k < res.history.steps.size(); ++k) {
      ordered_json line;
      line["step"] = res.history.steps[k];
      line["chsw2"] = res.history.chsw2[k];
      if (p.track_w2) line["w2"] = res.history.w2[k];
      hs << line.dump() << "\n";
    }
  }

  ordered_json doc;
  doc["command"] = "flow";
  doc["projection"] = hadsw::projection_name(p.projection);
  doc["num_directions"] = p.num_directions;
  doc["step_size"] = p.step_size;
  doc["num_steps"] = p.num_steps;
  doc["seed"] = p.seed;
  doc["history"] = {{"steps", res.history.steps},
                    {"chsw2", res.history.chsw2}};
  if (p.track_w2) doc["history"]["w2"] = res.history.w2;
  if (!res.history.chsw2.empty())
    doc["final_chsw2"] = res.history.chsw2.back();
  if (mu0.size() <= 512 && target.size() <= 512) {
    const auto final_mu = hadsw::DiscreteMeasure::weighted(
        mu0.manifold, res.points, mu0.weights);
    doc["initial_w2"] = std::sqrt(hadsw::exact_wp(mu0, target, 2.0));
    doc["final_w2"] = std::sqrt(hadsw::exact_wp(final_mu, target, 2.0));
  }
  doc["wall_time_ms"] = timer.ms();
  return doc;
}

ordered_json run_mds(const json& cfg, const Options& opt) {
  const Stopwatch timer;
  MatrixXd delta;
  if (cfg.contains("dissimilarities")) {
    delta = matrix_from_json(cfg.at("dissimilarities"));
  } else if (cfg.contains("measure")) {
    // Pairwise geodesic distances of an existing cloud.
    const auto mu = hadsw::read_measure_file(cfg.at("measure").get<std::string>());
    const int n = mu.size();
    delta = MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        delta(i, j) = delta(j, i) = mu.manifold->dist(
            mu.points.row(i).transpose(), mu.points.row(j).transpose());
  } else {
    throw hadsw::ConstraintViolation(
        "mds config needs 'dissimilarities' or 'measure'");
  }

  hadsw::MdsParams p;
  p.embed_dim = cfg.value("embed_dim", 2);
  p.alpha = cfg.value("alpha", 1.0);
  p.max_iters = cfg.value("max_iters", 5000);
  p.restarts = cfg.value("restarts", 1);
  p.init_scale = cfg.value("init_scale", 0.1);
  p.seed = opt.seed;

  const auto res = hadsw::hyperbolic_mds(delta, p);
  if (cfg.contains("points_output"))
    hadsw::write_measure_file(
        cfg.at("points_output").get<std::string>(),
        hadsw::DiscreteMeasure::uniform(
            hadsw::make_manifold(
                hadsw::ManifoldDescriptor::lorentz(p.embed_dim, -1.0)),
            res.points));

  ordered_json doc;
  doc["command"] = "mds";
  doc["embed_dim"] = p.embed_dim;
  doc["alpha"] = p.alpha;
  doc["seed"] = p.seed;
  doc["stress"] = res.stress;
  doc["iterations"] = res.iterations;
  doc["points"] = matrix_to_json(res.points);
  doc["wall_time_ms"] = timer.ms();
  return doc;
}

ordered_json run_sample(const json& cfg, const Options& opt) {
  const Stopwatch timer;
  const auto desc = hadsw::descriptor_from_json(cfg.at("manifold").dump());
  auto manifold = hadsw::make_manifold(desc);
  const int count = cfg.at("count").get<int>();
  hadsw::RngStream rng(opt.seed);

  const json& dist = cfg.at("distribution");
  const std::string type = dist.at("type").get<std::string>();
  MatrixXd points;
  if (type == "wrapped_normal") {
    points = hadsw::sample_wrapped_normal(
        *manifold, vector_from_json(dist.at("mean")),
        matrix_from_json(dist.at("cov")), count, rng);
  } else if (type == "mixture") {
    std::vector<hadsw::MixtureComponent> comps;
    for (const auto& c : dist.at("components"))
      comps.push_back({c.at("weight").get<double>(),
                       vector_from_json(c.at("mean")),
                       matrix_from_json(c.at("cov"))});
    points = hadsw::sample_wrapped_mixture(*manifold, comps, count, rng);
  } else if (type == "gaussian") {
    points = hadsw::sample_gaussian(vector_from_json(dist.at("mean")),
                                    matrix_from_json(dist.at("cov")), count,
                                    rng);
  } else if (type == "spd_log_gaussian") {
    points = hadsw::sample_spd_log_gaussian(
        desc.dim, matrix_from_json(dist.at("mean_log")),
        dist.at("sigma").get<double>(), count, rng);
  } else {
    throw hadsw::ConstraintViolation("unknown distribution type: " + type);
  }

  const auto mu = hadsw::DiscreteMeasure::uniform(manifold, points);
  if (opt.output.empty()) {
    hadsw::write_measure(std::cout, mu);
  } else {
    hadsw::write_measure_file(opt.output, mu);
    ordered_json doc;
    doc["command"] = "sample";
    doc["count"] = count;
    doc["output"] = opt.output;
    doc["seed"] = opt.seed;
    doc["wall_time_ms"] = timer.ms();
    std::cout << doc.dump(2) << "\n";
  }
  return ordered_json();  // already emitted
}

// Timing grid over (manifold, n, L); one CSV row per combination.
void run_bench(const json& cfg, const Options& opt) {
  std::vector<hadsw::ManifoldDescriptor> descs;
  for (const auto& mj : cfg.at("manifolds"))
    descs.push_back(hadsw::descriptor_from_json(mj.dump()));
  const auto ns = cfg.value("n", std::vector<int>{128});
  const auto ls = cfg.value("num_directions", std::vector<int>{64});
  const double p = cfg.value("p", 2.0);
  const int repeat = cfg.value("repeat", 3);

  std::ostringstream csv;
  csv << "kind,projection,n,L,d,p,wall_time_ms,value\n";
  for (const auto& desc : descs) {
    auto manifold = hadsw::make_manifold(desc);
    auto projection = hadsw::projection_from_name(
        cfg.value("projection", "horospherical"));
    if (!hadsw::supports_projection(*manifold, projection))
      projection = hadsw::Projection::kHorospherical;
    for (int n : ns) {
      hadsw::RngStream rng(opt.seed);
      const MatrixXd cov =
          0.25 * MatrixXd::Identity(manifold->tangent_dim(),
                                    manifold->tangent_dim());
      const auto mu = hadsw::DiscreteMeasure::uniform(
          manifold, hadsw::sample_wrapped_normal(
                        *manifold, manifold->origin(), cov, n, rng));
      const auto nu = hadsw::DiscreteMeasure::uniform(
          manifold, hadsw::sample_wrapped_normal(
                        *manifold, manifold->origin(), cov, n, rng));
      for (int l : ls) {
        hadsw::ChswParams params;
        params.projection = projection;
        params.p = p;
        params.num_directions = l;
        params.seed = opt.seed;
        params.threads = opt.threads;
        double best_ms = 0.0, value = 0.0;
        for (int r = 0; r < repeat; ++r) {
          const Stopwatch timer;
          value = hadsw::chsw(mu, nu, params).value;
          const double ms = timer.ms();
          if (r == 0 || ms < best_ms) best_ms = ms;
        }
        csv << hadsw::kind_name(desc.kind) << ','
            << hadsw::projection_name(projection) << ',' << n << ',' << l
            << ',' << desc.dim << ',' << hadsw::format_double(p) << ','
            << best_ms << ',' << hadsw::format_double(value) << "\n";
      }
    }
  }

  if (opt.output.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream os(opt.output);
    if (!os)
      throw hadsw::ConstraintViolation("cannot open output: " + opt.output);
    os << csv.str();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sliced-Wasserstein distances on Hadamard manifolds"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--config", opt.config, "JSON configuration file")
      ->required();
  app.add_option("--seed", opt.seed, "Random seed");
  app.add_option("--threads", opt.threads, "Worker threads");
  app.add_option("--output", opt.output, "Output file (default stdout)");

  auto* distance = app.add_subcommand("distance", "Sliced distance");
  auto* flow = app.add_subcommand("flow", "Particle gradient flow");
  auto* mds = app.add_subcommand("mds", "Hyperbolic multidimensional scaling");
  auto* sample = app.add_subcommand("sample", "Draw a point cloud");
  auto* bench = app.add_subcommand("bench", "Time the sliced estimator");

  CLI11_PARSE(app, argc, argv);

  try {
    const json cfg = load_config(opt.config);
    if (distance->parsed()) {
      emit(run_distance(cfg, opt), opt.output);
    } else if (flow->parsed()) {
      emit(run_flow(cfg, opt), opt.output);
    } else if (mds->parsed()) {
      emit(run_mds(cfg, opt), opt.output);
    } else if (sample->parsed()) {
      run_sample(cfg, opt);
    } else if (bench->parsed()) {
      run_bench(cfg, opt);
    }
  } catch (const hadsw::DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return 5;
  } catch (const hadsw::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 4;
  } catch (const hadsw::DescriptorMismatch& e) {
    std::cerr << "descriptor mismatch: " << e.what() << "\n";
    return 3;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
