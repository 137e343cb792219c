// Copyright 2026 The Colordrop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "colordrop/ensemble.hpp"
#include "colordrop/errors.hpp"
#include "colordrop/eval.hpp"
#include "colordrop/features.hpp"
#include "colordrop/image_io.hpp"
#include "colordrop/losses.hpp"
#include "colordrop/manifest.hpp"
#include "colordrop/rng.hpp"
#include "colordrop/sampler.hpp"
#include "colordrop/transforms.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Stream-id ranges reserved per purpose so no two draws ever share a
// sequence: [0, 2^40) per-image, [2^40, 2^41) per-chunk global decisions,
// [2^41, ...) synthetic stats images.
constexpr std::uint64_t kChunkStreamBase = std::uint64_t{1} << 40;
constexpr std::uint64_t kSyntheticStreamBase = std::uint64_t{1} << 41;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned worker_count() {
  if (const char* env = std::getenv("RCD_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) {
      return static_cast<unsigned>(std::min<unsigned long>(v, 64));
    }
  }
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) {
    n = 1;
  }
  return std::min(n, 8u);
}

void with_output(const std::string& path,
                 const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw colordrop::IoError("cannot write: " + path);
  }
  fn(out);
  if (!out) {
    throw colordrop::IoError("write failed: " + path);
  }
}

colordrop::ColorDropMode parse_mode(const std::string& mode) {
  if (mode == "grayscale") {
    return colordrop::ColorDropMode::kGrayscale;
  }
  if (mode == "sketch") {
    return colordrop::ColorDropMode::kSketch;
  }
  throw UsageError("unknown mode: " + mode);
}

// ---------------------------------------------------------------------- //
// augment

struct AugmentArgs {
  std::string in_dir;
  std::string manifest_path;
  std::string out_dir;
  std::string mode = "grayscale";
  std::string preset;
  double p = 0.05;
  double p_r = 0.4;
  double s_l = 0.02;
  double s_h = 0.4;
  double r_1 = 0.3;
  double r_2 = 1.0 / 0.3;
  unsigned retry_cap = 100;
  std::uint64_t seed = 0;
  std::uint64_t per_batch = 0;
  bool no_combine = false;
};

colordrop::ImageBuffer convert_image(const colordrop::ImageBuffer& img,
                                     colordrop::ColorDropMode mode) {
  return mode == colordrop::ColorDropMode::kGrayscale
             ? colordrop::to_grayscale(img)
             : colordrop::to_sketch(img);
}

// Per-image transform; with per_batch > 0 the global decision is drawn once
// per chunk of per_batch consecutive corpus images (all images in a chunk
// see the same draw), everything else stays on the per-image stream.
colordrop::TransformOutcome run_pipeline(const colordrop::ImageBuffer& img,
                                         const colordrop::AugmentConfig& cfg,
                                         std::uint64_t per_batch,
                                         std::size_t index) {
  colordrop::RngStream rng(cfg.seed, index);
  if (per_batch == 0) {
    return colordrop::augment(img, cfg, rng);
  }
  const std::uint64_t chunk = index / per_batch;
  colordrop::RngStream chunk_rng(cfg.seed, kChunkStreamBase + chunk);
  const bool global_fired = chunk_rng.uniform01() < cfg.p;
  if (cfg.combine) {
    if (global_fired) {
      return {convert_image(img, cfg.mode), true,
              colordrop::TransformKind::kGlobal, std::nullopt};
    }
    return colordrop::lgt(img, cfg, rng);
  }
  auto local = global_fired
                   ? colordrop::lgt(convert_image(img, cfg.mode), cfg, rng)
                   : colordrop::lgt(img, cfg, rng);
  if (global_fired) {
    local.kind = local.applied ? colordrop::TransformKind::kGlobalLocal
                               : colordrop::TransformKind::kGlobal;
    local.applied = true;
  }
  return local;
}

int run_augment(const AugmentArgs& args, const CLI::App& sub) {
  if (args.in_dir.empty() == args.manifest_path.empty()) {
    throw UsageError("exactly one of --in-dir and --manifest is required");
  }

  colordrop::AugmentConfig cfg;
  cfg.s_l = args.s_l;
  cfg.s_h = args.s_h;
  cfg.r_1 = args.r_1;
  cfg.r_2 = args.r_2;
  cfg.retry_cap = args.retry_cap;
  cfg.seed = args.seed;
  cfg.combine = !args.no_combine;
  // Presets fill mode/p/p_r; explicit flags win over the preset.
  double preset_p = 0.05;
  double preset_pr = 0.4;
  std::string preset_mode = "grayscale";
  if (args.preset == "sketch") {
    preset_pr = 0.7;
    preset_mode = "sketch";
  }
  cfg.p = sub.count("--p") ? args.p : preset_p;
  cfg.p_r = sub.count("--pr") ? args.p_r : preset_pr;
  cfg.mode = parse_mode(sub.count("--mode") ? args.mode : preset_mode);
  cfg.validate();

  fs::path input_base;
  colordrop::Manifest manifest;
  if (!args.in_dir.empty()) {
    manifest = colordrop::scan_market_layout(args.in_dir);
  } else {
    manifest = colordrop::load_manifest(args.manifest_path);
    input_base = fs::path(args.manifest_path).parent_path();
  }
  if (manifest.records.empty()) {
    throw colordrop::EmptyCorpus("manifest has no records: " +
                                 args.manifest_path);
  }

  const std::size_t n = manifest.records.size();
  std::vector<std::string> out_names(n);
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < n; ++i) {
    out_names[i] = fs::path(manifest.records[i].path).stem().string() + ".png";
    if (!seen.insert(out_names[i]).second) {
      throw colordrop::InvalidArgument("duplicate output name: " +
                                       out_names[i]);
    }
  }

  fs::create_directories(args.out_dir);
  const fs::path out_dir(args.out_dir);

  std::vector<std::string> rows(n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mu;
  std::atomic<std::size_t> applied_count{0};

  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n || failed.load()) {
        return;
      }
      try {
        const auto& rec = manifest.records[i];
        fs::path in_path(rec.path);
        if (!in_path.is_absolute() && !input_base.empty()) {
          in_path = input_base / in_path;
        }
        const auto img = colordrop::load_image(in_path.string());
        auto outcome = run_pipeline(img, cfg, args.per_batch, i);
        colordrop::save_image(outcome.image, (out_dir / out_names[i]).string());
        if (outcome.applied) {
          applied_count.fetch_add(1);
        }
        json row;
        row["path"] = out_names[i];
        row["identity"] = rec.identity;
        row["camera"] = rec.camera;
        row["index"] = rec.index;
        row["applied"] = outcome.applied;
        row["kind"] = colordrop::to_string(outcome.kind);
        if (outcome.region) {
          row["region"] = {{"x", outcome.region->x},
                           {"y", outcome.region->y},
                           {"w", outcome.region->w},
                           {"h", outcome.region->h}};
        } else {
          row["region"] = nullptr;
        }
        row["seed"] = cfg.seed;
        row["stream"] = static_cast<std::uint64_t>(i);
        rows[i] = row.dump();
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!failed.exchange(true)) {
          first_error = std::current_exception();
        }
      }
    }
  };

  const unsigned threads = std::min<std::size_t>(worker_count(), n);
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(work);
    }
    for (auto& th : pool) {
      th.join();
    }
  }
  if (failed.load()) {
    std::rethrow_exception(first_error);
  }

  const fs::path manifest_out = out_dir / "manifest.jsonl";
  {
    std::ofstream out(manifest_out, std::ios::binary);
    if (!out) {
      throw colordrop::IoError("cannot write manifest: " +
                               manifest_out.string());
    }
    for (const auto& row : rows) {
      out << row << '\n';
    }
    if (!out) {
      throw colordrop::IoError("write failed: " + manifest_out.string());
    }
  }

  json summary;
  summary["images"] = n;
  summary["applied"] = applied_count.load();
  summary["manifest"] = manifest_out.string();
  std::cout << summary.dump() << "\n";
  return 0;
}

// ---------------------------------------------------------------------- //
// batch

struct BatchArgs {
  std::string manifest_path;
  unsigned k = 4;
  unsigned m = 4;
  std::uint64_t seed = 0;
  std::uint64_t count = 1;
  std::string out;
};

int run_batch(const BatchArgs& args) {
  const auto manifest = colordrop::load_manifest(args.manifest_path);
  colordrop::BatchSpec spec;
  spec.k = args.k;
  spec.m = args.m;
  spec.seed = args.seed;
  with_output(args.out, [&](std::ostream& out) {
    for (std::uint64_t b = 0; b < args.count; ++b) {
      colordrop::RngStream rng(args.seed, b);
      const auto batch = colordrop::sample_batch(manifest, spec, rng);
      json entries = json::array();
      for (const auto& e : batch.entries) {
        entries.push_back({{"slot", e.slot},
                           {"index", e.record.index},
                           {"identity", e.record.identity},
                           {"camera", e.record.camera},
                           {"path", e.record.path}});
      }
      json row;
      row["batch"] = b;
      row["entries"] = std::move(entries);
      out << row.dump() << "\n";
    }
  });
  return 0;
}

// ---------------------------------------------------------------------- //
// loss

struct LossArgs {
  std::string features_path;
  double margin = colordrop::kDefaultMargin;
  bool paper_literal = false;
  bool show_triplets = false;
};

int run_loss(const LossArgs& args) {
  const auto batch = colordrop::load_features_csv(args.features_path);
  const auto selections = colordrop::mine_hard_triplets(batch);
  const double triplet =
      args.paper_literal
          ? colordrop::triplet_loss_additive(selections, args.margin)
          : colordrop::triplet_loss(selections, args.margin);
  json report;
  report["n"] = batch.size();
  report["margin"] = args.margin;
  report["triplet"] = triplet;
  const bool has_probs = std::all_of(
      batch.begin(), batch.end(),
      [](const colordrop::FeatureRecord& r) { return r.probs.has_value(); });
  if (has_probs) {
    const double id = colordrop::id_loss(batch);
    report["id"] = id;
    report["total"] = triplet + id;
  } else {
    report["id"] = nullptr;
    report["total"] = nullptr;
  }
  if (args.show_triplets) {
    json trips = json::array();
    for (const auto& s : selections) {
      trips.push_back({{"anchor", s.anchor},
                       {"positive", s.positive},
                       {"negative", s.negative},
                       {"d_pos", s.d_pos},
                       {"d_neg", s.d_neg}});
    }
    report["triplets"] = std::move(trips);
  }
  std::cout << report.dump() << "\n";
  return 0;
}

// ---------------------------------------------------------------------- //
// eval

struct EvalArgs {
  std::string query_path;
  std::string gallery_path;
  std::size_t max_rank = 50;
  bool no_cam_filter = false;
};

int run_eval(const EvalArgs& args) {
  const auto queries = colordrop::load_features_csv(args.query_path);
  const auto gallery = colordrop::load_features_csv(args.gallery_path);
  colordrop::EvalOptions opts;
  opts.max_rank = args.max_rank;
  opts.camera_filter = !args.no_cam_filter;
  const auto result = colordrop::evaluate(queries, gallery, opts);
  json report;
  report["map"] = result.map;
  report["cmc"] = result.cmc;
  report["valid_queries"] = result.valid_queries;
  std::cout << report.dump() << "\n";
  return 0;
}

// ---------------------------------------------------------------------- //
// ensemble

struct EnsembleArgs {
  std::string votes_path;
  std::string replacement_path;
  std::size_t component = 0;
};

std::vector<int> load_replacement_votes(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw colordrop::IoError("cannot open replacement votes: " + path);
  }
  std::vector<int> votes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
      try {
        std::size_t pos = 0;
        const int v = std::stoi(tok, &pos);
        if (pos != tok.size()) {
          throw std::invalid_argument(tok);
        }
        votes.push_back(v);
      } catch (const std::exception&) {
        throw colordrop::ParseError("not an integer vote: '" + tok + "'",
                                    line_no);
      }
    }
  }
  return votes;
}

int run_ensemble(const EnsembleArgs& args) {
  const auto votes = colordrop::load_vote_matrix(args.votes_path);
  json report;
  report["components"] = votes.components();
  report["instances"] = votes.instances();
  if (args.replacement_path.empty()) {
    std::vector<double> errors;
    for (std::size_t i = 0; i < votes.components(); ++i) {
      errors.push_back(colordrop::component_error(votes, i));
    }
    report["component_errors"] = errors;
    report["sum_votes"] = colordrop::vote_sums(votes);
    report["ensemble_error"] = colordrop::ensemble_error(votes);
  } else {
    const auto replacement = load_replacement_votes(args.replacement_path);
    const auto full =
        colordrop::analyze_swap(votes, args.component, replacement);
    report["component"] = args.component;
    report["component_errors"] = full.component_errors;
    report["sum_votes"] = full.sum_votes;
    report["ensemble_error"] = full.ensemble_error;
    report["swapped_error"] = full.swapped_error;
    report["condition_lhs"] = full.condition_lhs;
    report["condition_holds"] = full.condition_holds;
    report["improvement"] = full.improvement;
  }
  std::cout << report.dump() << "\n";
  return 0;
}

// ---------------------------------------------------------------------- //
// sweep

struct SweepArgs {
  std::size_t n_min = 3;
  std::size_t n_max = 9;
  std::size_t instances = 100;
  std::vector<double> errors = {0.1, 0.2, 0.3, 0.4, 0.5};
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::string out;
};

int run_sweep(const SweepArgs& args) {
  const auto rows = colordrop::sweep(args.n_min, args.n_max, args.instances,
                                     args.errors, args.trials, args.seed);
  with_output(args.out, [&](std::ostream& out) {
    colordrop::write_sweep_csv(out, rows, args.seed);
  });
  return 0;
}

// ---------------------------------------------------------------------- //
// stats

struct StatsArgs {
  std::string manifest_path;
  std::string mode = "grayscale";
  double p = 0.05;
  double p_r = 0.4;
  double s_l = 0.02;
  double s_h = 0.4;
  double r_1 = 0.3;
  double r_2 = 1.0 / 0.3;
  unsigned retry_cap = 100;
  std::uint64_t seed = 0;
  std::size_t trials = 100000;
  int size = 16;
  std::size_t limit = 256;
  std::string out;
};

colordrop::ImageBuffer synthetic_image(int size, std::uint64_t seed,
                                       std::uint64_t stream) {
  colordrop::RngStream rng(seed, stream);
  colordrop::ImageBuffer img(size, size);
  for (auto& byte : img.data()) {
    byte = static_cast<std::uint8_t>(rng.uniform_int(256));
  }
  return img;
}

int run_stats(const StatsArgs& args) {
  colordrop::AugmentConfig cfg;
  cfg.p = args.p;
  cfg.p_r = args.p_r;
  cfg.s_l = args.s_l;
  cfg.s_h = args.s_h;
  cfg.r_1 = args.r_1;
  cfg.r_2 = args.r_2;
  cfg.retry_cap = args.retry_cap;
  cfg.seed = args.seed;
  cfg.mode = parse_mode(args.mode);
  cfg.validate();
  if (args.size < 1) {
    throw colordrop::InvalidArgument("--size must be >= 1");
  }

  std::vector<colordrop::ImageBuffer> images;
  if (!args.manifest_path.empty()) {
    const auto manifest = colordrop::load_manifest(args.manifest_path);
    const fs::path base = fs::path(args.manifest_path).parent_path();
    const std::size_t count =
        std::min<std::size_t>(manifest.records.size(), args.limit);
    if (count == 0) {
      throw colordrop::EmptyCorpus("manifest has no records: " +
                                   args.manifest_path);
    }
    for (std::size_t i = 0; i < count; ++i) {
      fs::path p(manifest.records[i].path);
      if (!p.is_absolute() && !base.empty()) {
        p = base / p;
      }
      images.push_back(colordrop::load_image(p.string()));
    }
  } else {
    const std::size_t count = std::min<std::size_t>(
        args.trials == 0 ? 1 : args.trials, 64);
    for (std::size_t i = 0; i < count; ++i) {
      images.push_back(
          synthetic_image(args.size, args.seed, kSyntheticStreamBase + i));
    }
  }

  std::size_t global_fired = 0;
  std::size_t local_fired = 0;
  for (std::size_t t = 0; t < args.trials; ++t) {
    const auto& img = images[t % images.size()];
    colordrop::RngStream g(args.seed, 2 * t);
    if (colordrop::ggt(img, cfg, g).applied) {
      ++global_fired;
    }
    colordrop::RngStream l(args.seed, 2 * t + 1);
    if (colordrop::lgt(img, cfg, l).applied) {
      ++local_fired;
    }
  }

  with_output(args.out, [&](std::ostream& out) {
    out << "transform,configured_p,empirical_p,trials,ci95\n";
    if (args.trials == 0) {
      return;
    }
    const auto emit = [&](const char* name, double configured,
                          std::size_t fired) {
      const double phat =
          static_cast<double>(fired) / static_cast<double>(args.trials);
      const double ci =
          1.96 * std::sqrt(phat * (1.0 - phat) /
                           static_cast<double>(args.trials));
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%zu,%.17g\n", name,
                    configured, phat, args.trials, ci);
      out << buf;
    };
    emit("global", cfg.p, global_fired);
    emit("local", cfg.p_r, local_fired);
  });
  return 0;
}

void add_rect_flags(CLI::App* sub, double* s_l, double* s_h, double* r_1,
                    double* r_2, unsigned* retry_cap) {
  sub->add_option("--sl", *s_l, "Min rectangle area ratio")
      ->capture_default_str();
  sub->add_option("--sh", *s_h, "Max rectangle area ratio")
      ->capture_default_str();
  sub->add_option("--r1", *r_1, "Min rectangle aspect ratio (h/w)")
      ->capture_default_str();
  sub->add_option("--r2", *r_2, "Max rectangle aspect ratio (h/w)")
      ->capture_default_str();
  sub->add_option("--retry-cap", *retry_cap,
                  "Max rectangle sampling attempts before passing through")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "colordrop: deterministic random color dropout augmentation "
      "and analysis toolkit"};
  app.require_subcommand(1);

  AugmentArgs aug;
  auto* augment = app.add_subcommand(
      "augment", "Transform an image corpus and write an output manifest");
  augment->add_option("--in-dir", aug.in_dir,
                      "Corpus directory with <id>_c<cam>... image names");
  augment->add_option("--manifest", aug.manifest_path,
                      "JSONL manifest instead of a directory scan");
  augment->add_option("--out-dir", aug.out_dir, "Output directory")
      ->required();
  augment->add_option("--mode", aug.mode, "grayscale or sketch")
      ->check(CLI::IsMember({"grayscale", "sketch"}))
      ->capture_default_str();
  augment
      ->add_option("--preset", aug.preset,
                   "Parameter preset: grayscale (p=0.05, pr=0.4) or sketch "
                   "(p=0.05, pr=0.7)")
      ->check(CLI::IsMember({"grayscale", "sketch"}));
  augment->add_option("--p", aug.p, "Global transform probability")
      ->capture_default_str();
  augment->add_option("--pr", aug.p_r, "Local transform probability")
      ->capture_default_str();
  add_rect_flags(augment, &aug.s_l, &aug.s_h, &aug.r_1, &aug.r_2,
                 &aug.retry_cap);
  augment->add_option("--seed", aug.seed, "RNG seed")->capture_default_str();
  augment
      ->add_option("--per-batch", aug.per_batch,
                   "Draw the global decision once per this many consecutive "
                   "images (0 = per image)")
      ->capture_default_str();
  augment->add_flag("--no-combine", aug.no_combine,
                    "Run global and local transforms independently instead "
                    "of global-first");

  BatchArgs bat;
  auto* batch = app.add_subcommand(
      "batch", "Sample identity-balanced K x M batches from a manifest");
  batch->add_option("--manifest", bat.manifest_path, "JSONL manifest")
      ->required();
  batch->add_option("--k", bat.k, "Identities per batch")
      ->capture_default_str();
  batch->add_option("--m", bat.m, "Images per identity")
      ->capture_default_str();
  batch->add_option("--seed", bat.seed, "RNG seed")->capture_default_str();
  batch->add_option("--count", bat.count, "Number of batches to emit")
      ->capture_default_str();
  batch->add_option("--out", bat.out, "Output file (default stdout)");

  LossArgs los;
  auto* loss = app.add_subcommand(
      "loss", "Hard-mining triplet and identity losses over a feature CSV");
  loss->add_option("--features", los.features_path, "Feature CSV")
      ->required();
  loss->add_option("--margin", los.margin, "Triplet margin")
      ->capture_default_str();
  loss->add_flag("--paper-literal", los.paper_literal,
                 "Use the additive triplet form mean(margin + d_pos + d_neg) "
                 "instead of the hinge");
  loss->add_flag("--triplets", los.show_triplets,
                 "Include mined triplets in the report");

  EvalArgs evl;
  auto* eval = app.add_subcommand(
      "eval", "CMC / mAP retrieval evaluation from query and gallery CSVs");
  eval->add_option("--query", evl.query_path, "Query feature CSV")
      ->required();
  eval->add_option("--gallery", evl.gallery_path, "Gallery feature CSV")
      ->required();
  eval->add_option("--max-rank", evl.max_rank, "CMC depth")
      ->capture_default_str();
  eval->add_flag("--no-cam-filter", evl.no_cam_filter,
                 "Keep same-identity same-camera gallery entries");

  EnsembleArgs ens;
  auto* ensemble = app.add_subcommand(
      "ensemble", "Analyze a vote matrix and an optional component swap");
  ensemble->add_option("--votes", ens.votes_path, "Vote matrix file")
      ->required();
  ensemble->add_option("--component", ens.component,
                       "Component index to replace")
      ->capture_default_str();
  ensemble->add_option("--replacement", ens.replacement_path,
                       "File of replacement votes (+/-1 tokens)");

  SweepArgs swp;
  auto* sweep = app.add_subcommand(
      "sweep", "Monte-Carlo sweep of the component-swap condition");
  sweep->add_option("--n-min", swp.n_min, "Smallest component count")
      ->capture_default_str();
  sweep->add_option("--n-max", swp.n_max, "Largest component count")
      ->capture_default_str();
  sweep->add_option("--instances", swp.instances, "Instances per matrix")
      ->capture_default_str();
  sweep->add_option("--errors", swp.errors, "Comma-separated error rates")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--trials", swp.trials, "Trials per grid cell")
      ->capture_default_str();
  sweep->add_option("--seed", swp.seed, "RNG seed")->capture_default_str();
  sweep->add_option("--out", swp.out, "Output CSV (default stdout)");

  StatsArgs sta;
  auto* stats = app.add_subcommand(
      "stats", "Empirical transform firing rates under a configuration");
  stats->add_option("--manifest", sta.manifest_path,
                    "Measure on these images instead of synthetic ones");
  stats->add_option("--mode", sta.mode, "grayscale or sketch")
      ->check(CLI::IsMember({"grayscale", "sketch"}))
      ->capture_default_str();
  stats->add_option("--p", sta.p, "Global transform probability")
      ->capture_default_str();
  stats->add_option("--pr", sta.p_r, "Local transform probability")
      ->capture_default_str();
  add_rect_flags(stats, &sta.s_l, &sta.s_h, &sta.r_1, &sta.r_2,
                 &sta.retry_cap);
  stats->add_option("--seed", sta.seed, "RNG seed")->capture_default_str();
  stats->add_option("--trials", sta.trials, "Trial count")
      ->capture_default_str();
  stats->add_option("--size", sta.size, "Synthetic image side length")
      ->capture_default_str();
  stats->add_option("--limit", sta.limit, "Max images decoded from manifest")
      ->capture_default_str();
  stats->add_option("--out", sta.out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (augment->parsed()) {
      return run_augment(aug, *augment);
    }
    if (batch->parsed()) {
      return run_batch(bat);
    }
    if (loss->parsed()) {
      return run_loss(los);
    }
    if (eval->parsed()) {
      return run_eval(evl);
    }
    if (ensemble->parsed()) {
      return run_ensemble(ens);
    }
    if (sweep->parsed()) {
      return run_sweep(swp);
    }
    if (stats->parsed()) {
      return run_stats(sta);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
