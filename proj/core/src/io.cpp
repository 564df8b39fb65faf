#include "hadsw/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace hadsw {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

ordered_json descriptor_json(const ManifoldDescriptor& d) {
  ordered_json j;
  j["kind"] = kind_name(d.kind);
  switch (d.kind) {
    case Kind::kMahalanobis: {
      std::vector<std::vector<double>> rows;
      for (int i = 0; i < d.metric.rows(); ++i)
        rows.emplace_back(d.metric.row(i).begin(), d.metric.row(i).end());
      j["metric"] = rows;
      break;
    }
    case Kind::kLorentz:
    case Kind::kPoincare:
      j["dim"] = d.dim;
      j["curvature"] = d.curvature;
      break;
    case Kind::kSpdOnq:
      j["dim"] = d.dim;
      j["p"] = d.onq_p;
      j["q"] = d.onq_q;
      break;
    case Kind::kProduct: {
      ordered_json comps = ordered_json::array();
      for (const auto& c : d.components) comps.push_back(descriptor_json(c));
      j["components"] = comps;
      break;
    }
    default:
      j["dim"] = d.dim;
  }
  return j;
}

ManifoldDescriptor descriptor_from(const json& j) {
  const Kind kind = kind_from_name(j.at("kind").get<std::string>());
  switch (kind) {
    case Kind::kEuclidean:
      return ManifoldDescriptor::euclidean(j.at("dim").get<int>());
    case Kind::kMahalanobis: {
      const auto rows = j.at("metric").get<std::vector<std::vector<double>>>();
      const int n = static_cast<int>(rows.size());
      MatrixXd a(n, n);
      for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
          throw ConstraintViolation("metric must be square");
        for (int k = 0; k < n; ++k) a(i, k) = rows[i][k];
      }
      return ManifoldDescriptor::mahalanobis(std::move(a));
    }
    case Kind::kLorentz:
      return ManifoldDescriptor::lorentz(j.at("dim").get<int>(),
                                         j.value("curvature", -1.0));
    case Kind::kPoincare:
      return ManifoldDescriptor::poincare(j.at("dim").get<int>(),
                                          j.value("curvature", -1.0));
    case Kind::kSpdLogEuclidean:
      return ManifoldDescriptor::spd_log_euclidean(j.at("dim").get<int>());
    case Kind::kSpdOnq:
      return ManifoldDescriptor::spd_onq(j.at("dim").get<int>(),
                                         j.at("p").get<double>(),
                                         j.at("q").get<double>());
    case Kind::kSpdLogCholesky:
      return ManifoldDescriptor::spd_log_cholesky(j.at("dim").get<int>());
    case Kind::kSpdAffineInvariant:
      return ManifoldDescriptor::spd_affine_invariant(j.at("dim").get<int>());
    case Kind::kProduct: {
      std::vector<ManifoldDescriptor> parts;
      for (const auto& c : j.at("components")) parts.push_back(descriptor_from(c));
      return ManifoldDescriptor::product(std::move(parts));
    }
  }
  throw std::logic_error("unknown kind");
}

// Re-raise nlohmann parse/type/missing-key errors as schema violations so
// callers see a single exception family for malformed input.
template <typename F>
auto json_guard(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ConstraintViolation(std::string("malformed document: ") + e.what());
  }
}

}  // namespace

std::string descriptor_to_json(const ManifoldDescriptor& d) {
  return descriptor_json(d).dump();
}

ManifoldDescriptor descriptor_from_json(const std::string& text) {
  return json_guard([&] { return descriptor_from(json::parse(text)); });
}

void write_measure(std::ostream& os, const DiscreteMeasure& mu) {
  ordered_json header;
  header["manifold"] = descriptor_json(mu.manifold->descriptor());
  if (mu.is_uniform()) {
    header["weights"] = "uniform";
  } else {
    // Serialize weights as round-trip strings inside the JSON array to keep
    // the file byte-deterministic and lossless.
    ordered_json w = ordered_json::array();
    for (int i = 0; i < mu.size(); ++i)
      w.push_back(format_double(mu.weights[i]));
    header["weights"] = w;
  }
  os << "# " << header.dump() << "\n";
  for (int i = 0; i < mu.points.rows(); ++i) {
    for (int k = 0; k < mu.points.cols(); ++k) {
      if (k) os << ' ';
      os << format_double(mu.points(i, k));
    }
    os << "\n";
  }
}

DiscreteMeasure read_measure(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# ", 0) != 0)
    throw ConstraintViolation("point cloud must start with a '# ' header");
  const json header =
      json_guard([&] { return json::parse(line.substr(2)); });
  const ManifoldDescriptor desc =
      json_guard([&] { return descriptor_from(header.at("manifold")); });
  auto manifold = make_manifold(desc);

  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (!ls.eof()) throw ConstraintViolation("malformed coordinate row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConstraintViolation("point cloud has no points");
  const int cols = static_cast<int>(rows[0].size());
  MatrixXd points(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != cols)
      throw ConstraintViolation("ragged coordinate rows");
    for (int k = 0; k < cols; ++k) points(i, k) = rows[i][k];
  }

  const auto& wj =
      json_guard([&]() -> const json& { return header.at("weights"); });
  if (wj.is_string() && wj.get<std::string>() == "uniform")
    return DiscreteMeasure::uniform(std::move(manifold), std::move(points));
  VectorXd weights(points.rows());
  if (!wj.is_array() || static_cast<int>(wj.size()) != weights.size())
    throw ConstraintViolation("weights do not match point count");
  for (int i = 0; i < weights.size(); ++i)
    weights[i] = wj[i].is_string() ? std::stod(wj[i].get<std::string>())
                                   : wj[i].get<double>();
  return DiscreteMeasure::weighted(std::move(manifold), std::move(points),
                                   std::move(weights));
}

void write_measure_file(const std::string& path, const DiscreteMeasure& mu) {
  std::ofstream os(path);
  if (!os) throw ConstraintViolation("cannot open for writing: " + path);
  write_measure(os, mu);
}

DiscreteMeasure read_measure_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConstraintViolation("cannot open for reading: " + path);
  return read_measure(is);
}

}  // namespace hadsw
