#include "pallor/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "pallor/archive.hpp"
#include "pallor/color_planes.hpp"
#include "pallor/image_io.hpp"
#include "pallor/pipeline.hpp"

namespace pallor {
namespace {

Site parse_site(const std::string& name) {
  const auto site = site_from_name(name);
  if (!site) {
    throw CLI::ValidationError("--site", "must be 'eye' or 'tongue'");
  }
  return *site;
}

RankingMethod parse_ranking(const std::string& name) {
  const auto method = ranking_method_from_name(name);
  if (!method) {
    throw CLI::ValidationError("--ranking",
                               "must be f_score, mutual_info or chi_squared");
  }
  return *method;
}

std::vector<ModelSpec> grids_for(const std::string& preset, std::uint64_t seed) {
  if (preset == "full") return default_model_grids(seed);
  if (preset == "compact") return compact_model_grids(seed);
  throw CLI::ValidationError("--grid", "must be 'full' or 'compact'");
}

int default_folds(Site site) { return site == Site::eye ? 5 : 3; }

std::vector<FeatureVector> m1_vectors(const BatchResult& batch) {
  std::vector<FeatureVector> out;
  for (const ProcessedImage& image : batch.images) {
    if (image.m1) out.push_back(*image.m1);
  }
  return out;
}

std::vector<FeatureVector> m2_vectors(const BatchResult& batch) {
  std::vector<FeatureVector> out;
  for (const ProcessedImage& image : batch.images) out.push_back(image.m2);
  return out;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
}

// --- segment ---------------------------------------------------------------

struct SegmentArgs {
  std::string site;
  std::string input;
  std::string mask;
  std::string out_dir;
  bool dump_planes = false;
};

void run_segment(const SegmentArgs& args) {
  const Site site = parse_site(args.site);
  PipelineOptions options;
  std::optional<std::filesystem::path> mask;
  if (!args.mask.empty()) mask = args.mask;
  const ProcessedImage processed = process_image(args.input, site, 0, mask, options);
  if (!processed.has_rois) {
    throw Error(ErrorCode::iris_not_found,
                "segmentation stage failed for " + args.input + ": " + processed.m1_failure);
  }
  const std::filesystem::path dir(args.out_dir);
  std::filesystem::create_directories(dir);
  write_grid_png(dir / "foreground.png", processed.foreground.to_grid());
  if (site == Site::eye) {
    write_grid_png(dir / "iris.png", processed.eye_rois.iris.to_grid());
    write_grid_png(dir / "sclera.png", processed.eye_rois.sclera.to_grid());
    write_grid_png(dir / "conjunctiva.png", processed.eye_rois.conjunctiva.to_grid());
  } else {
    write_grid_png(dir / "inner.png", processed.tongue_rois.inner.to_grid());
    write_grid_png(dir / "outer.png", processed.tongue_rois.outer.to_grid());
  }
  if (args.dump_planes) {
    for (PlaneId id : kAllPlaneIds) {
      const PlaneImage plane = to_plane(processed.image, id);
      write_grid_png(dir / (std::string(plane_name(id)) + ".png"), plane.pixels);
    }
    const ScalarGrid green = processed.image.channel(1);
    const GradientField grad = sobel_gradient(green);
    ScalarGrid magnitude = grad.magnitude;
    const double max_mag = magnitude.max_value();
    if (max_mag > 0.0) {
      for (double& v : magnitude.values()) v /= max_mag;
    }
    write_grid_png(dir / "grad_mag_green.png", magnitude);
    write_grid_png(dir / "frangi_green.png", frangi_vesselness(green).response);
  }
  std::cout << "wrote ROI masks to " << dir.string() << "\n";
}

// --- features ---------------------------------------------------------------

struct FeaturesArgs {
  std::string model = "m1";
  std::string manifest;
  std::string out_csv;
};

void run_features(const FeaturesArgs& args) {
  const DatasetManifest manifest = parse_manifest(args.manifest);
  const BatchResult batch = process_manifest(manifest, PipelineOptions{});
  print_warnings(batch.warnings);
  if (args.model == "m1") {
    write_feature_csv(args.out_csv, FeatureSchema::m1(manifest.site), m1_vectors(batch));
  } else if (args.model == "m2") {
    write_feature_csv(args.out_csv, FeatureSchema::m2(), m2_vectors(batch));
  } else {
    throw CLI::ValidationError("--model", "must be 'm1' or 'm2'");
  }
  const auto hist = manifest.grade_histogram();
  std::cout << "wrote " << args.out_csv << " (" << manifest.rows.size()
            << " images, grades " << hist[0] << "/" << hist[1] << "/" << hist[2] << ")\n";
}

// --- train -------------------------------------------------------------------

struct TrainArgs {
  std::string manifest;
  std::string model = "m1";
  std::string hierarchy;
  std::string ranking = "f_score";
  std::string grid = "full";
  int folds = 0;
  std::uint64_t seed = 0;
  std::string out_archive;
};

void run_train(const TrainArgs& args) {
  const DatasetManifest manifest = parse_manifest(args.manifest);
  const BatchResult batch = process_manifest(manifest, PipelineOptions{});
  print_warnings(batch.warnings);

  const bool m2 = args.model == "m2";
  if (!m2 && args.model != "m1") {
    throw CLI::ValidationError("--model", "must be 'm1' or 'm2'");
  }
  const std::vector<FeatureVector> data = m2 ? m2_vectors(batch) : m1_vectors(batch);
  if (data.empty()) {
    throw Error(ErrorCode::degenerate_data, "no usable feature vectors in the manifest");
  }
  const HierarchyPlan plan = args.hierarchy.empty()
                                 ? HierarchyPlan::defaults(manifest.site, m2)
                                 : HierarchyPlan::parse(args.hierarchy);
  CvOptions options;
  options.ranking = parse_ranking(args.ranking);
  options.seed = args.seed;
  options.grid = grids_for(args.grid, args.seed + 2);
  const int folds = args.folds > 0 ? args.folds : default_folds(manifest.site);

  std::vector<int> all_indices, step1_labels;
  std::vector<int> step2_indices, step2_labels;
  for (std::size_t i = 0; i < data.size(); ++i) {
    all_indices.push_back(static_cast<int>(i));
    step1_labels.push_back(plan.step1_is_positive(data[i].grade) ? 1 : 0);
    if (plan.in_step2_domain(data[i].grade)) {
      step2_indices.push_back(static_cast<int>(i));
      step2_labels.push_back(data[i].grade == plan.step2_positive ? 1 : 0);
    }
  }
  std::vector<std::string> warnings;
  const StepTrainingResult step1 = train_step_model(
      data, all_indices, step1_labels, folds, options, args.seed + 11, 0, 1, warnings);
  const StepTrainingResult step2 = train_step_model(
      data, step2_indices, step2_labels, folds, options, args.seed + 12, 0, 2, warnings);
  print_warnings(warnings);
  if (!step1.valid || !step2.valid) {
    throw Error(ErrorCode::degenerate_data, "training stage could not fit both steps");
  }

  ModelArchive archive;
  archive.site = manifest.site;
  archive.model_kind = m2 ? "m2" : "m1";
  archive.plan = plan;
  archive.schema = m2 ? FeatureSchema::m2() : FeatureSchema::m1(manifest.site);
  archive.step1 = step1.model;
  archive.step2 = step2.model;
  archive.seed = args.seed;
  save_archive(args.out_archive, archive);
  std::cout << "wrote " << args.out_archive << "\n"
            << "step1: " << step1.info.model << " (prefix " << step1.info.prefix_size << ")\n"
            << "step2: " << step2.info.model << " (prefix " << step2.info.prefix_size << ")\n";
}

// --- predict ------------------------------------------------------------------

struct PredictArgs {
  std::string archive;
  std::string input;
  std::string mask;
};

void run_predict(const PredictArgs& args) {
  const ModelArchive archive = load_archive(args.archive);
  std::optional<std::filesystem::path> mask;
  if (!args.mask.empty()) mask = args.mask;
  const ProcessedImage processed =
      process_image(args.input, archive.site, 0, mask, PipelineOptions{});

  const bool m2 = archive.model_kind == "m2";
  const FeatureSchema expected = m2 ? FeatureSchema::m2() : FeatureSchema::m1(archive.site);
  if (expected.hash() != archive.schema.hash()) {
    throw Error(ErrorCode::schema_mismatch,
                "archive schema does not match this pipeline's feature schema");
  }
  const FeatureVector* features = nullptr;
  if (m2) {
    features = &processed.m2;
  } else {
    if (!processed.m1) {
      throw Error(ErrorCode::iris_not_found,
                  "feature stage failed for " + args.input + ": " + processed.m1_failure);
    }
    features = &*processed.m1;
  }

  const Prediction p1 = archive.step1.predict(features->values);
  const Prediction p2 = archive.step2.predict(features->values);
  const int grade = archive.plan.routed_grade(p1.label, p2.label);
  std::printf("step1 (%s): score %.4f -> %s\n", archive.plan.step1_task_name().c_str(),
              p1.score, p1.label ? "positive" : "negative");
  std::printf("step2 (%s): score %.4f -> %s\n", archive.plan.step2_task_name().c_str(),
              p2.score, p2.label ? "positive" : "negative");
  std::printf("grade: %d\n", grade);
}

// --- evaluate -------------------------------------------------------------------

struct EvaluateArgs {
  std::string manifest;
  std::string model = "m1";
  std::string hierarchy;
  std::string ranking = "f_score";
  std::string grid = "full";
  int folds = 0;
  std::uint64_t seed = 0;
  std::string report;
  bool per_plane = false;
};

void run_evaluate(const EvaluateArgs& args) {
  const DatasetManifest manifest = parse_manifest(args.manifest);
  const BatchResult batch = process_manifest(manifest, PipelineOptions{});
  print_warnings(batch.warnings);

  const bool m2 = args.model == "m2";
  if (!m2 && args.model != "m1") {
    throw CLI::ValidationError("--model", "must be 'm1' or 'm2'");
  }
  const std::vector<FeatureVector> data = m2 ? m2_vectors(batch) : m1_vectors(batch);
  if (data.size() < 2) {
    throw Error(ErrorCode::degenerate_data, "not enough usable images to evaluate");
  }
  const HierarchyPlan plan = args.hierarchy.empty()
                                 ? HierarchyPlan::defaults(manifest.site, m2)
                                 : HierarchyPlan::parse(args.hierarchy);
  const int k = args.folds > 0 ? args.folds : default_folds(manifest.site);
  std::vector<int> grades;
  for (const FeatureVector& v : data) grades.push_back(v.grade);
  const FoldPlan folds = make_stratified_folds(grades, k, args.seed + 1);

  CvOptions options;
  options.ranking = parse_ranking(args.ranking);
  options.seed = args.seed;
  options.grid = grids_for(args.grid, args.seed + 2);

  EvaluationReport report = run_hierarchical_cv(data, plan, folds, options);
  report.model_kind = m2 ? "m2" : "m1";
  for (const std::string& w : batch.warnings) report.warnings.push_back(w);

  std::string text = report.to_text();
  if (m2 && args.per_plane) {
    const std::vector<PerPlaneGroup> groups = collect_plane_groups(batch);
    const std::vector<PlaneRate> rates =
        per_plane_classification_rates(groups, plan, folds, options);
    text += "\nper-plane classification rates:\n";
    char buf[96];
    for (const PlaneRate& rate : rates) {
      std::snprintf(buf, sizeof(buf), "  %-12s %-9s %.3f (%ld samples)\n",
                    std::string(plane_name(rate.plane)).c_str(),
                    std::string(enhancement_name(rate.enhancement)).c_str(), rate.accuracy,
                    rate.evaluated);
      text += buf;
    }
  }

  const std::filesystem::path base(args.report);
  if (base.has_parent_path()) std::filesystem::create_directories(base.parent_path());
  {
    std::ofstream out(base.string() + ".txt");
    out << text;
  }
  {
    std::ofstream out(base.string() + ".json");
    out << report.to_json().dump(1) << "\n";
  }
  report.write_csv(base.string() + ".csv");
  std::cout << text;
  std::cout << "report written to " << base.string() << ".{txt,json,csv}\n";
}

// --- synth ----------------------------------------------------------------------

struct SynthArgs {
  std::string site = "eye";
  std::vector<int> grades = {0, 1, 2};
  int count = 30;
  std::uint64_t seed = 0;
  std::string out_dir;
  bool masks = false;
};

void run_synth(const SynthArgs& args) {
  const Site site = parse_site(args.site);
  if (args.count < 1) {
    throw CLI::ValidationError("--count", "must be at least 1");
  }
  for (int grade : args.grades) {
    if (grade < 0 || grade > 2) {
      throw CLI::ValidationError("--grade", "grades must be 0, 1 or 2");
    }
  }
  const std::filesystem::path dir(args.out_dir);
  std::filesystem::create_directories(dir);

  DatasetManifest manifest;
  manifest.site = site;
  for (int i = 0; i < args.count; ++i) {
    SyntheticSpec spec;
    spec.site = site;
    spec.grade = args.grades[static_cast<std::size_t>(i) % args.grades.size()];
    spec.seed = args.seed + static_cast<std::uint64_t>(i);
    const SyntheticImage synth = generate_synthetic(spec);

    char name[64];
    std::snprintf(name, sizeof(name), "%s_%03d_g%d.png", site_name(site).data(), i, spec.grade);
    const std::filesystem::path image_path = dir / name;
    write_raster_png(image_path, synth.image);

    ManifestRow row;
    row.image_path = image_path;
    row.site = site;
    row.grade = spec.grade;
    if (args.masks) {
      std::snprintf(name, sizeof(name), "%s_%03d_mask.png", site_name(site).data(), i);
      const std::filesystem::path mask_path = dir / name;
      write_grid_png(mask_path, synth.foreground.to_grid());
      row.mask_path = mask_path;
    }
    manifest.rows.push_back(std::move(row));
  }
  write_manifest(dir / "manifest.csv", manifest);
  std::cout << "wrote " << args.count << " images and manifest.csv to " << dir.string() << "\n";
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args) {
  CLI::App app{"anemia pallor-site screening pipeline"};
  app.require_subcommand(1);

  SegmentArgs segment_args;
  CLI::App* segment = app.add_subcommand("segment", "segment one image into ROI masks");
  segment->add_option("--site", segment_args.site, "pallor site: eye or tongue")->required();
  segment->add_option("--input", segment_args.input, "input image (PNG or JPEG)")->required();
  segment->add_option("--mask", segment_args.mask, "foreground mask override (PNG)");
  segment->add_option("--out", segment_args.out_dir, "output directory")->required();
  segment->add_flag("--dump-planes", segment_args.dump_planes,
                    "also dump color planes and green-plane filter outputs");
  segment->callback([&] { run_segment(segment_args); });

  FeaturesArgs features_args;
  CLI::App* features = app.add_subcommand("features", "extract feature vectors to CSV");
  features->add_option("--model", features_args.model, "feature family: m1 or m2")->required();
  features->add_option("--manifest", features_args.manifest, "dataset manifest CSV")->required();
  features->add_option("--out", features_args.out_csv, "output CSV path")->required();
  features->callback([&] { run_features(features_args); });

  TrainArgs train_args;
  CLI::App* train = app.add_subcommand("train", "fit a hierarchical model archive");
  train->add_option("--manifest", train_args.manifest, "dataset manifest CSV")->required();
  train->add_option("--model", train_args.model, "feature family: m1 or m2");
  train->add_option("--hierarchy", train_args.hierarchy,
                    "hierarchy plan, e.g. 0/12,1/2 (default per site)");
  train->add_option("--ranking", train_args.ranking,
                    "f_score, mutual_info or chi_squared");
  train->add_option("--grid", train_args.grid, "hyper-parameter grid: full or compact");
  train->add_option("--folds", train_args.folds, "selection folds (default 5 eye / 3 tongue)");
  train->add_option("--seed", train_args.seed, "random seed");
  train->add_option("--out", train_args.out_archive, "output model archive")->required();
  train->callback([&] { run_train(train_args); });

  PredictArgs predict_args;
  CLI::App* predict = app.add_subcommand("predict", "grade one image with a model archive");
  predict->add_option("--archive", predict_args.archive, "model archive")->required();
  predict->add_option("--input", predict_args.input, "input image")->required();
  predict->add_option("--mask", predict_args.mask, "foreground mask override (PNG)");
  predict->callback([&] { run_predict(predict_args); });

  EvaluateArgs evaluate_args;
  CLI::App* evaluate = app.add_subcommand("evaluate", "cross-validated evaluation report");
  evaluate->add_option("--manifest", evaluate_args.manifest, "dataset manifest CSV")->required();
  evaluate->add_option("--model", evaluate_args.model, "feature family: m1 or m2");
  evaluate->add_option("--hierarchy", evaluate_args.hierarchy,
                       "hierarchy plan, e.g. 0/12,1/2 (default per site)");
  evaluate->add_option("--ranking", evaluate_args.ranking,
                       "f_score, mutual_info or chi_squared");
  evaluate->add_option("--grid", evaluate_args.grid, "hyper-parameter grid: full or compact");
  evaluate->add_option("--folds", evaluate_args.folds, "outer folds (default 5 eye / 3 tongue)");
  evaluate->add_option("--seed", evaluate_args.seed, "random seed");
  evaluate->add_option("--report", evaluate_args.report, "report base path")->required();
  evaluate->add_flag("--per-plane", evaluate_args.per_plane,
                     "append per-plane classification rates (m2 only)");
  evaluate->callback([&] { run_evaluate(evaluate_args); });

  SynthArgs synth_args;
  CLI::App* synth = app.add_subcommand("synth", "generate synthetic pallor-site images");
  synth->add_option("--site", synth_args.site, "pallor site: eye or tongue")->required();
  synth->add_option("--grade", synth_args.grades, "grades to cycle through")
      ->delimiter(',');
  synth->add_option("--count", synth_args.count, "number of images")->required();
  synth->add_option("--seed", synth_args.seed, "random seed");
  synth->add_option("--out", synth_args.out_dir, "output directory")->required();
  synth->add_flag("--masks", synth_args.masks, "also write foreground masks");
  synth->callback([&] { run_synth(synth_args); });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace pallor
