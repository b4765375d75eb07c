#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "moodsig/cohortdata.hpp"
#include "moodsig/errors.hpp"
#include "moodsig/evaluate.hpp"
#include "moodsig/learn.hpp"
#include "moodsig/pathprep.hpp"
#include "moodsig/serialize.hpp"
#include "moodsig/sigcore.hpp"

namespace py = pybind11;
using namespace moodsig;

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ScoreMatrix = Eigen::Matrix<int, Eigen::Dynamic, kNumCategories, Eigen::RowMajor>;

py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json from_python(const py::object& o) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

Cohort cohort_arg(const std::string& s) {
  if (auto c = parse_cohort(s)) return *c;
  throw InputError("unknown cohort '" + s + "'");
}

std::size_t category_arg(const std::string& s) {
  if (auto c = parse_category(s)) return *c;
  throw InputError("unknown category '" + s + "'");
}

std::vector<std::vector<double>> rows_of(const RowMatrix& m) {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    out[static_cast<std::size_t>(i)].assign(m.row(i).data(), m.row(i).data() + m.cols());
  return out;
}

std::vector<MoodReport> reports_of(const ScoreMatrix& s) {
  std::vector<MoodReport> out(static_cast<std::size_t>(s.rows()));
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    auto& r = out[static_cast<std::size_t>(i)];
    r.seq = static_cast<long>(i);
    for (std::size_t c = 0; c < kNumCategories; ++c) {
      const int v = s(i, static_cast<Eigen::Index>(c));
      if (v < kMinScore || v > kMaxScore) throw InputError("scores must lie in 1..7");
      r.scores[c] = v;
    }
  }
  return out;
}

ScoreMatrix scores_of(const std::vector<MoodReport>& reports) {
  ScoreMatrix m(static_cast<Eigen::Index>(reports.size()), kNumCategories);
  for (std::size_t i = 0; i < reports.size(); ++i)
    for (std::size_t c = 0; c < kNumCategories; ++c)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = reports[i].scores[c];
  return m;
}

StreamWindow window_of(const ScoreMatrix& s) {
  StreamWindow w;
  w.reports = reports_of(s);
  return w;
}

std::vector<Cohort> labels_of(const std::vector<std::string>& names) {
  std::vector<Cohort> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(cohort_arg(n));
  return out;
}

std::vector<std::string> names_of(std::span<const Cohort> labels) {
  std::vector<std::string> out;
  out.reserve(labels.size());
  for (auto c : labels) out.emplace_back(to_string(c));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Signature features and linear models for daily mood report streams.";

  auto base = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());

  m.attr("COHORTS") = py::make_tuple("bipolar", "borderline", "healthy");
  m.attr("CATEGORIES") =
      py::make_tuple("anxious", "elated", "sad", "angry", "irritable", "energetic");

  // Tensor algebra on flat coefficient vectors, level 0 first.
  m.def("tensor_dim", &tensor_dim, py::arg("d"), py::arg("n"));
  m.def(
      "signature",
      [](const RowMatrix& points, std::size_t order) {
        const auto rows = rows_of(points);
        const auto sig = path_signature(rows, order);
        return std::vector<double>(sig.data().begin(), sig.data().end());
      },
      py::arg("points"), py::arg("order"),
      "Full truncated signature of the piecewise-linear path through the rows of `points`.");
  m.def(
      "tensor_exp",
      [](const std::vector<double>& delta, std::size_t n) {
        const auto t = tensor_exp(delta, n);
        return std::vector<double>(t.data().begin(), t.data().end());
      },
      py::arg("delta"), py::arg("n"));
  m.def(
      "tensor_mul",
      [](const std::vector<double>& a, const std::vector<double>& b, std::size_t d,
         std::size_t n) {
        TruncatedTensor x(d, n), y(d, n);
        if (a.size() != x.size() || b.size() != y.size())
          throw ShapeError("coefficient vectors must have length tensor_dim(d, n)");
        std::copy(a.begin(), a.end(), x.data().begin());
        std::copy(b.begin(), b.end(), y.data().begin());
        const auto z = tensor_mul(x, y);
        return std::vector<double>(z.data().begin(), z.data().end());
      },
      py::arg("a"), py::arg("b"), py::arg("d"), py::arg("n"));
  m.def("shuffle_product", &shuffle_product, py::arg("u"), py::arg("v"));
  m.def("feature_names", &feature_names, py::arg("d"), py::arg("n"));

  // Windows and features.
  m.def(
      "normalize",
      [](const ScoreMatrix& scores) {
        const auto p = normalize(window_of(scores));
        RowMatrix out(static_cast<Eigen::Index>(p.points.size()), kPathDim);
        for (std::size_t i = 0; i < p.points.size(); ++i)
          for (std::size_t k = 0; k < kPathDim; ++k)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = p.points[i][k];
        return out;
      },
      py::arg("scores"), "Time-augmented cumulative path of an L x 6 window of scores.");
  m.def(
      "featurize",
      [](const ScoreMatrix& scores, std::size_t order) {
        return featurize(window_of(scores), order);
      },
      py::arg("scores"), py::arg("order") = 2);

  py::class_<ParticipantRecord>(m, "Participant")
      .def(py::init([](std::string id, const std::string& cohort, const ScoreMatrix& scores) {
             return ParticipantRecord{std::move(id), cohort_arg(cohort), reports_of(scores)};
           }),
           py::arg("participant_id"), py::arg("cohort"), py::arg("scores"))
      .def_readonly("participant_id", &ParticipantRecord::participant_id)
      .def_property_readonly("cohort",
                             [](const ParticipantRecord& r) { return std::string(to_string(r.cohort)); })
      .def_property_readonly("scores", [](const ParticipantRecord& r) { return scores_of(r.reports); })
      .def("__len__", [](const ParticipantRecord& r) { return r.reports.size(); })
      .def("__repr__", [](const ParticipantRecord& r) {
        return "<Participant " + r.participant_id + " " + std::string(to_string(r.cohort)) + " " +
               std::to_string(r.reports.size()) + " reports>";
      });

  m.def(
      "load_csv", [](const std::filesystem::path& p) { return load_csv(p); }, py::arg("path"));
  m.def(
      "write_csv",
      [](const std::filesystem::path& p, const std::vector<ParticipantRecord>& r) {
        write_csv(p, r);
      },
      py::arg("path"), py::arg("records"));
  m.def(
      "synthesize",
      [](std::uint64_t seed, std::optional<std::array<std::size_t, kNumCohorts>> participants,
         std::optional<std::size_t> reports) {
        auto sc = SynthConfig::study_default(seed);
        if (participants) {
          for (std::size_t c = 0; c < kNumCohorts; ++c) sc.cohorts[c].participants = (*participants)[c];
          sc.target_windows = 0;
        }
        if (reports) {
          sc.reports_per_participant = *reports;
          sc.reports_spread = 0.0;
          sc.target_windows = 0;
        }
        return generate_synthetic(sc);
      },
      py::arg("seed") = 20170601, py::arg("participants") = py::none(),
      py::arg("reports") = py::none(),
      "Synthetic corpus; `participants` overrides the per-cohort counts.");
  m.def(
      "window_features",
      [](const std::vector<ParticipantRecord>& records, std::size_t order, std::size_t window,
         std::size_t stride) {
        const auto windows = windows_of(records, window, stride);
        std::vector<Cohort> labels;
        std::vector<std::string> ids;
        for (const auto& w : windows) {
          labels.push_back(w.cohort);
          ids.push_back(w.participant_id);
        }
        return py::make_tuple(feature_matrix(windows, order), names_of(labels), ids);
      },
      py::arg("records"), py::arg("order") = 2, py::arg("window") = kDefaultWindow,
      py::arg("stride") = kDefaultWindow,
      "Feature matrix, cohort labels and participant ids of every window.");

  // Models.
  py::class_<Classifier>(m, "Classifier")
      .def_static(
          "fit",
          [](const Eigen::MatrixXd& X, const std::vector<std::string>& labels, double l2,
             double tolerance, std::size_t max_iterations, std::size_t order) {
            ClassifierConfig cfg;
            cfg.l2 = l2;
            cfg.tolerance = tolerance;
            cfg.max_iterations = max_iterations;
            return fit_classifier(X, labels_of(labels), cfg, FeatureKind::signature, order);
          },
          py::arg("X"), py::arg("labels"), py::arg("l2") = 1.0, py::arg("tolerance") = 1e-6,
          py::arg("max_iterations") = 10000, py::arg("order") = 2)
      .def(
          "predict",
          [](const Classifier& c, const Eigen::MatrixXd& X) {
            std::vector<Cohort> labels;
            for (const auto& p : predict_classes(c, X)) labels.push_back(p.label);
            return names_of(labels);
          },
          py::arg("X"))
      .def(
          "scores",
          [](const Classifier& c, const Eigen::MatrixXd& X) {
            const auto preds = predict_classes(c, X);
            RowMatrix out(static_cast<Eigen::Index>(preds.size()), kNumCohorts);
            for (std::size_t i = 0; i < preds.size(); ++i)
              for (std::size_t k = 0; k < kNumCohorts; ++k)
                out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = preds[i].scores[k];
            return out;
          },
          py::arg("X"), "Per-cohort one-vs-rest probabilities.")
      .def_readonly("order", &Classifier::order)
      .def_property_readonly("feature_dim", &Classifier::feature_dim)
      .def("to_json", [](const Classifier& c) { return to_python(to_json(c)); })
      .def_static(
          "from_json", [](const py::object& o) { return classifier_from_json(from_python(o)); },
          py::arg("data"));

  py::class_<Regressor>(m, "Regressor")
      .def_static(
          "fit",
          [](const Eigen::MatrixXd& X, const Eigen::MatrixXd& targets, double ridge,
             const std::string& cohort, std::size_t order) {
            return fit_regressor(X, targets, ridge, cohort_arg(cohort), order);
          },
          py::arg("X"), py::arg("targets"), py::arg("ridge") = 1.0,
          py::arg("cohort") = "bipolar", py::arg("order") = 2)
      .def(
          "predict_raw",
          [](const Regressor& r, const std::vector<double>& x) { return predict_raw(r, x); },
          py::arg("x"))
      .def(
          "predict",
          [](const Regressor& r, const std::vector<double>& x) { return predict_mood(r, x); },
          py::arg("x"), "Rounded next-report scores in 1..7.")
      .def_property_readonly("cohort",
                             [](const Regressor& r) { return std::string(to_string(r.cohort)); })
      .def_readonly("order", &Regressor::order)
      .def("to_json", [](const Regressor& r) { return to_python(to_json(r)); })
      .def_static(
          "from_json", [](const py::object& o) { return regressor_from_json(from_python(o)); },
          py::arg("data"));

  // Evaluation.
  m.def(
      "evaluate",
      [](const std::vector<ParticipantRecord>& records, std::size_t order, double ratio,
         std::uint64_t seed, double l2, double ridge, bool stratified,
         std::vector<std::size_t> compare_orders) {
        EvalOptions opt;
        opt.order = order;
        opt.ratio = ratio;
        opt.seed = seed;
        opt.classifier.l2 = l2;
        opt.ridge = ridge;
        opt.stratified = stratified;
        opt.compare_orders = std::move(compare_orders);
        EvaluationReport r;
        {
          py::gil_scoped_release release;
          r = run_evaluation(records, opt);
        }
        return to_python(to_json(r));
      },
      py::arg("records"), py::arg("order") = 2, py::arg("ratio") = 0.7,
      py::arg("seed") = 20170601, py::arg("l2") = 1.0, py::arg("ridge") = 1.0,
      py::arg("stratified") = false, py::arg("compare_orders") = std::vector<std::size_t>{});
  m.def(
      "bootstrap",
      [](const std::vector<ParticipantRecord>& records, std::size_t B, std::size_t order,
         double ratio, std::uint64_t seed, std::size_t threads) {
        const auto sp = split(windows_of(records), ratio, seed);
        BootstrapResult r;
        {
          py::gil_scoped_release release;
          r = bootstrap(sp.train, sp.test, B, order, seed, {}, threads);
        }
        auto out = to_python(to_json(r)).cast<py::dict>();
        out["accuracies"] = r.accuracies;
        return out;
      },
      py::arg("records"), py::arg("B") = 100, py::arg("order") = 2, py::arg("ratio") = 0.7,
      py::arg("seed") = 20170601, py::arg("threads") = 0);
  m.def(
      "triangle",
      [](const std::vector<ParticipantRecord>& records, std::size_t order, std::size_t threads) {
        TriangleResult r;
        {
          py::gil_scoped_release release;
          r = triangle(records, order, {}, kDefaultWindow, kDefaultWindow, threads);
        }
        py::list points;
        for (const auto& p : r.points) {
          py::dict d;
          d["participant_id"] = p.participant_id;
          d["cohort"] = std::string(to_string(p.cohort));
          d["windows"] = p.windows;
          d["proportions"] = p.proportions;
          d["x"] = p.x;
          d["y"] = p.y;
          points.append(d);
        }
        return py::make_tuple(points, r.skipped);
      },
      py::arg("records"), py::arg("order") = 2, py::arg("threads") = 0,
      "Leave-one-participant-out cohort proportions; returns (points, skipped ids).");
  m.def(
      "trace",
      [](const Regressor& r, const ParticipantRecord& p, const std::string& category) {
        py::list rows;
        for (const auto& t : prediction_trace(r, p.reports, category_arg(category))) {
          py::dict d;
          d["seq"] = t.seq;
          d["value"] = t.value;
          d["predicted"] = t.predicted;
          d["actual"] = t.actual;
          d["correct"] = t.correct;
          rows.append(d);
        }
        return rows;
      },
      py::arg("regressor"), py::arg("participant"), py::arg("category") = "anxious");
}
