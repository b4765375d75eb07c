#include "moodsig/serialize.hpp"

#include <fstream>
#include <string>
#include <vector>

#include "moodsig/errors.hpp"

namespace moodsig {

using nlohmann::json;

namespace {

json vec(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json rows(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const Eigen::VectorXd r = m.row(i).transpose();
    out.push_back(vec(r));
  }
  return out;
}

Eigen::VectorXd read_vec(const json& j, Eigen::Index expected, const char* what) {
  const auto v = j.get<std::vector<double>>();
  if (expected >= 0 && static_cast<Eigen::Index>(v.size()) != expected)
    throw InputError(std::string("model json: '") + what + "' has wrong length");
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Eigen::MatrixXd read_rows(const json& j, Eigen::Index nrows, Eigen::Index ncols,
                          const char* what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != nrows)
    throw InputError(std::string("model json: '") + what + "' has wrong row count");
  Eigen::MatrixXd m(nrows, ncols);
  for (Eigen::Index i = 0; i < nrows; ++i)
    m.row(i) = read_vec(j[static_cast<std::size_t>(i)], ncols, what).transpose();
  return m;
}

void check_header(const json& j, const char* format) {
  if (!j.is_object() || j.value("format", std::string()) != format)
    throw InputError(std::string("model json: expected format '") + format + "'");
  if (j.value("version", 0) != kModelFormatVersion)
    throw InputError("model json: unsupported version");
}

json scaler_json(const ScalerParams& s) { return {{"mean", vec(s.mean)}, {"std", vec(s.std)}}; }

ScalerParams read_scaler(const json& j) {
  ScalerParams s;
  s.mean = read_vec(j.at("mean"), -1, "scaler.mean");
  s.std = read_vec(j.at("std"), s.mean.size(), "scaler.std");
  return s;
}

Cohort read_cohort(const json& j) {
  const auto c = parse_cohort(j.get<std::string>());
  if (!c) throw InputError("model json: unknown cohort '" + j.get<std::string>() + "'");
  return *c;
}

}  // namespace

json to_json(const Classifier& c) {
  json classes = json::array();
  for (Cohort k : kAllCohorts) classes.push_back(std::string(to_string(k)));
  return {
      {"format", "moodsig.classifier"},
      {"version", kModelFormatVersion},
      {"features", c.kind == FeatureKind::signature ? "signature" : "mean_scores"},
      {"order", c.order},
      {"classes", classes},
      {"scaler", scaler_json(c.scaler)},
      {"weights", rows(c.weights)},
      {"bias", vec(c.bias)},
      {"config",
       {{"l2", c.config.l2},
        {"tolerance", c.config.tolerance},
        {"max_iterations", c.config.max_iterations},
        {"seed", c.config.seed}}},
  };
}

Classifier classifier_from_json(const json& j) {
  try {
    check_header(j, "moodsig.classifier");
    Classifier c;
    const auto features = j.at("features").get<std::string>();
    if (features == "signature")
      c.kind = FeatureKind::signature;
    else if (features == "mean_scores")
      c.kind = FeatureKind::mean_scores;
    else
      throw InputError("model json: unknown feature kind '" + features + "'");
    c.order = j.at("order").get<std::size_t>();
    const auto& classes = j.at("classes");
    if (classes.size() != kNumCohorts) throw InputError("model json: expected three classes");
    for (std::size_t k = 0; k < kNumCohorts; ++k)
      if (read_cohort(classes[k]) != kAllCohorts[k])
        throw InputError("model json: class order must be bipolar, borderline, healthy");
    c.scaler = read_scaler(j.at("scaler"));
    c.weights = read_rows(j.at("weights"), kNumCohorts, c.scaler.dim(), "weights");
    c.bias = read_vec(j.at("bias"), kNumCohorts, "bias");
    const auto& cfg = j.at("config");
    c.config.l2 = cfg.at("l2").get<double>();
    c.config.tolerance = cfg.at("tolerance").get<double>();
    c.config.max_iterations = cfg.at("max_iterations").get<std::size_t>();
    c.config.seed = cfg.at("seed").get<std::uint64_t>();
    return c;
  } catch (const json::exception& e) {
    throw InputError(std::string("model json: ") + e.what());
  }
}

json to_json(const Regressor& r) {
  json categories = json::array();
  for (auto name : kCategoryNames) categories.push_back(std::string(name));
  return {
      {"format", "moodsig.regressor"},
      {"version", kModelFormatVersion},
      {"cohort", std::string(to_string(r.cohort))},
      {"order", r.order},
      {"ridge", r.ridge},
      {"categories", categories},
      {"scaler", scaler_json(r.scaler)},
      {"weights", rows(r.weights)},
      {"bias", vec(r.bias)},
  };
}

Regressor regressor_from_json(const json& j) {
  try {
    check_header(j, "moodsig.regressor");
    Regressor r;
    r.cohort = read_cohort(j.at("cohort"));
    r.order = j.at("order").get<std::size_t>();
    r.ridge = j.at("ridge").get<double>();
    r.scaler = read_scaler(j.at("scaler"));
    r.weights = read_rows(j.at("weights"), kNumCategories, r.scaler.dim(), "weights");
    r.bias = read_vec(j.at("bias"), kNumCategories, "bias");
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("model json: ") + e.what());
  }
}

void save_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
  if (!out) throw InputError("write failed for '" + path.string() + "'");
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("'" + path.string() + "': " + e.what());
  }
}

}  // namespace moodsig
