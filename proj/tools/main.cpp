// fdpoison: frequency-domain block-poisoning toolkit CLI.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fdp/config.hpp"
#include "fdp/dataset.hpp"
#include "fdp/injector.hpp"
#include "fdp/layout.hpp"
#include "fdp/manifest.hpp"
#include "fdp/metrics.hpp"
#include "fdp/ntk.hpp"
#include "fdp/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

struct LayoutArgs {
    int height = 32, width = 32, block_side = 8, classes = 0;
};

int run_layout(const LayoutArgs& args) {
    fdp::GridConfig cfg;
    cfg.image_height = args.height;
    cfg.image_width = args.width;
    cfg.block_side = args.block_side;
    cfg.num_classes = args.classes > 0 ? args.classes : 0;
    if (cfg.num_classes == 0) cfg.num_classes = cfg.capacity();
    fdp::validate_spacing(cfg);

    std::printf("target\trow\tcol\tblock\tchannel\torientation\n");
    for (int t = 1; t <= cfg.num_classes; ++t) {
        const fdp::BlockSpec spec = fdp::target_to_spec(t, cfg);
        static constexpr const char* kChannelNames[3] = {"B", "R", "G"};
        std::printf("%d\t%d\t%d\t%d\t%s\t%s\n", t, spec.row, spec.col, spec.block_index,
                    kChannelNames[spec.channel], fdp::to_string(spec.orientation));
    }
    return kExitOk;
}

struct InjectArgs {
    std::string image, out, trigger;
    int target = 1;
    int block_side = 8;
    std::uint64_t seed = fdp::kDefaultTriggerSeed;
};

int run_inject(const InjectArgs& args) {
    const fdp::Image clean = fdp::load_image(args.image);
    fdp::GridConfig grid;
    grid.image_height = clean.height;
    grid.image_width = clean.width;
    grid.block_side = args.block_side;
    grid.num_classes = grid.capacity();

    const fdp::TriggerImage trigger =
        args.trigger.empty() ? fdp::make_trigger(args.block_side, args.seed)
                             : fdp::load_trigger(args.trigger, args.block_side);

    auto [poisoned, record] = fdp::poison_sample(clean, args.target, trigger, grid,
                                                 fdp::TunerConfig{}, fdp::StageToggles{},
                                                 args.image);
    fdp::save_image(poisoned, args.out);
    fdp::write_manifest({record}, args.out + ".manifest.json");
    std::printf("wrote %s (K=%.6g, PSNR=%.3f dB, %d iterations)\n", args.out.c_str(),
                record.coefficient, record.psnr_db, record.tuner_iterations);
    return kExitOk;
}

int run_metrics(const std::string& a, const std::string& b) {
    const fdp::QualityReport r = fdp::quality(fdp::load_image(a), fdp::load_image(b));
    std::printf("psnr=%.6g ssim=%.6g\n", r.psnr_db, r.ssim);
    return kExitOk;
}

struct PoisonArgs {
    std::string in_dir, out_dir, config;
    int jobs = 1;
    std::int64_t seed = -1;  // -1: keep config value
    int stage = -1;          // -1: keep config value
};

int run_poison(const PoisonArgs& args) {
    fdp::RunConfig cfg =
        args.config.empty() ? fdp::RunConfig{} : fdp::load_run_config(args.config);
    if (args.seed >= 0) cfg.plan.seed = static_cast<std::uint64_t>(args.seed);
    if (args.stage >= 0) cfg.stage = args.stage;
    cfg.plan.jobs = args.jobs;
    if (cfg.stage != 0) {
        const double k = cfg.fixed_k > 0.0 ? cfg.fixed_k : fdp::ablation_default_k(cfg.stage);
        cfg.plan.stages = fdp::ablation_stage(cfg.stage, k);
    }

    const fdp::LabeledDataset ds = fdp::load_dataset(args.in_dir);
    fdp::GridConfig grid = cfg.grid;
    grid.image_height = ds.samples.front().image.height;
    grid.image_width = ds.samples.front().image.width;
    grid.num_classes = static_cast<int>(ds.class_names.size());

    const fdp::TriggerImage trigger =
        cfg.trigger_path.empty() ? fdp::make_trigger(grid.block_side, cfg.trigger_seed)
                                 : fdp::load_trigger(cfg.trigger_path, grid.block_side);

    const fdp::PoisonedDataset out =
        fdp::poison_dataset(ds, cfg.plan, grid, trigger, cfg.tuner);
    fdp::write_poisoned_tree(ds, out, args.out_dir);
    std::printf("poisoned %zu samples across %zu classes -> %s\n", out.manifest.size(),
                ds.class_names.size(), args.out_dir.c_str());
    return kExitOk;
}

struct NtkArgs {
    std::string config, out;
    std::int64_t seed = -1;
};

int run_ntk_sim(const NtkArgs& args) {
    fdp::SpatialSensitivityConfig cfg;
    if (!args.config.empty()) {
        const fdp::TomlTable t = fdp::TomlTable::parse_file(args.config);
        cfg.image_side = static_cast<int>(t.get_int("ntk", "image_side", cfg.image_side));
        cfg.block_side = static_cast<int>(t.get_int("ntk", "block_side", cfg.block_side));
        cfg.num_classes = static_cast<int>(t.get_int("ntk", "classes", cfg.num_classes));
        cfg.benign_per_total = static_cast<int>(t.get_int("ntk", "benign", cfg.benign_per_total));
        cfg.poison_total = static_cast<int>(t.get_int("ntk", "poison", cfg.poison_total));
        cfg.trials = static_cast<int>(t.get_int("ntk", "trials", cfg.trials));
        cfg.center_spread = t.get_double("ntk", "center_spread", cfg.center_spread);
        cfg.noise_sigma = t.get_double("ntk", "noise_sigma", cfg.noise_sigma);
        const std::string policy = t.get_string("ntk", "gamma_policy", "median");
        if (policy == "median") {
            cfg.gamma_policy = fdp::GammaPolicy::median_heuristic;
        } else if (policy == "fixed") {
            cfg.gamma_policy = fdp::GammaPolicy::fixed;
            cfg.gamma = t.get_double("ntk", "gamma", cfg.gamma);
        } else {
            throw fdp::ConfigError("ntk.gamma_policy must be median or fixed");
        }
        const std::string style = t.get_string("ntk", "trigger_style", "invisible");
        if (style == "invisible")
            cfg.trigger_style = fdp::TriggerStyle::invisible;
        else if (style == "visible_patch")
            cfg.trigger_style = fdp::TriggerStyle::visible_patch;
        else
            throw fdp::ConfigError("ntk.trigger_style must be invisible or visible_patch");
    }
    if (args.seed >= 0) cfg.seed = static_cast<std::uint64_t>(args.seed);

    const fdp::SpatialSensitivityReport report = fdp::spatial_sensitivity_experiment(cfg);
    nlohmann::ordered_json j;
    j["phi_same"] = report.phi_same;
    j["phi_shifted"] = report.phi_shifted;
    j["asr_same"] = report.asr_same;
    j["asr_shifted"] = report.asr_shifted;
    j["trial_count"] = report.trial_count;
    j["gamma"] = report.gamma;
    if (args.out.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::ofstream out(args.out, std::ios::binary);
        if (!out) throw fdp::IoError("cannot write " + args.out);
        out << j.dump(2) << '\n';
    }
    return kExitOk;
}

struct VerifyArgs {
    std::string in_dir, out_dir;
    int block_side = 8;
};

// Rechecks a poisoned tree against its manifest: clean passthrough, label
// contract, locality of every poisoned diff, and the recorded PSNR.
int run_verify(const VerifyArgs& args) {
    const fdp::LabeledDataset clean = fdp::load_dataset(args.in_dir);
    const auto records = fdp::read_manifest(std::filesystem::path(args.out_dir) / "manifest.json");

    fdp::GridConfig grid;
    grid.image_height = clean.samples.front().image.height;
    grid.image_width = clean.samples.front().image.width;
    grid.block_side = args.block_side;
    grid.num_classes = static_cast<int>(clean.class_names.size());

    int failures = 0;
    const auto fail = [&failures](const std::string& what) {
        std::fprintf(stderr, "FAIL: %s\n", what.c_str());
        ++failures;
    };

    for (const auto& s : clean.samples) {
        const auto out_path = std::filesystem::path(args.out_dir) / s.rel_path;
        if (!std::filesystem::exists(out_path)) {
            fail("missing clean file " + s.rel_path);
            continue;
        }
        if (fdp::load_image(out_path) != s.image) fail("clean file altered: " + s.rel_path);
    }

    for (const auto& r : records) {
        const fdp::Sample* source = nullptr;
        for (const auto& s : clean.samples)
            if (s.rel_path == r.source_id) source = &s;
        if (!source) {
            fail("manifest source not in input tree: " + r.source_id);
            continue;
        }
        const std::string rel = fdp::poisoned_rel_path(
            r.source_id, clean.class_names[static_cast<std::size_t>(r.target_class - 1)],
            r.target_class);
        const auto path = std::filesystem::path(args.out_dir) / rel;
        if (!std::filesystem::exists(path)) {
            fail("missing poisoned file " + rel);
            continue;
        }
        const fdp::Image poisoned = fdp::load_image(path);
        const fdp::BlockSpec spec = fdp::target_to_spec(r.target_class, grid);
        const fdp::Image& orig = source->image;
        for (int row = 0; row < orig.height; ++row)
            for (int col = 0; col < orig.width; ++col)
                for (int ch = 0; ch < orig.channels; ++ch) {
                    const bool inside = row >= spec.row && row < spec.row + spec.side &&
                                        col >= spec.col && col < spec.col + spec.side &&
                                        ch == (orig.channels == 3 ? fdp::rgb_index(spec.channel) : 0);
                    if (!inside && poisoned.at(row, col, ch) != orig.at(row, col, ch)) {
                        fail("diff outside assigned block/channel: " + rel);
                        row = orig.height;  // one report per file
                        col = orig.width;
                        break;
                    }
                }
        const double measured = fdp::psnr(orig, poisoned);
        if (std::isfinite(r.psnr_db) && std::abs(measured - r.psnr_db) > 1e-6)
            fail("recorded PSNR mismatch for " + rel);
    }

    std::printf("verify: %zu clean, %zu poisoned, %d failure(s)\n", clean.samples.size(),
                records.size(), failures);
    return failures == 0 ? kExitOk : kExitData;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-target frequency-domain image poisoning toolkit"};
    app.require_subcommand(1);

    LayoutArgs layout_args;
    auto* layout_cmd = app.add_subcommand("layout", "Print the target -> block/channel table");
    layout_cmd->add_option("--height", layout_args.height, "Image height");
    layout_cmd->add_option("--width", layout_args.width, "Image width");
    layout_cmd->add_option("--block-side", layout_args.block_side, "Block side l0");
    layout_cmd->add_option("--classes", layout_args.classes, "Number of targets (default: capacity)");

    InjectArgs inject_args;
    auto* inject_cmd = app.add_subcommand("inject", "Poison a single image");
    inject_cmd->add_option("--image", inject_args.image, "Clean image")->required();
    inject_cmd->add_option("--target", inject_args.target, "Target class (1-based)")->required();
    inject_cmd->add_option("--out", inject_args.out, "Output image path")->required();
    inject_cmd->add_option("--trigger", inject_args.trigger, "Trigger image (l0 x l0)");
    inject_cmd->add_option("--seed", inject_args.seed, "Trigger texture seed");
    inject_cmd->add_option("--block-side", inject_args.block_side, "Block side l0");

    std::string metrics_a, metrics_b;
    auto* metrics_cmd = app.add_subcommand("metrics", "Print PSNR and SSIM of two images");
    metrics_cmd->add_option("a", metrics_a, "First image")->required();
    metrics_cmd->add_option("b", metrics_b, "Second image")->required();

    PoisonArgs poison_args;
    auto* poison_cmd = app.add_subcommand("poison", "Poison a class-labeled dataset");
    poison_cmd->add_option("--in", poison_args.in_dir, "Input dataset root")->required();
    poison_cmd->add_option("--out", poison_args.out_dir, "Output root")->required();
    poison_cmd->add_option("--config", poison_args.config, "TOML config file");
    poison_cmd->add_option("--jobs", poison_args.jobs, "Worker threads");
    poison_cmd->add_option("--seed", poison_args.seed, "Override plan seed");
    poison_cmd->add_option("--stage", poison_args.stage, "Ablation stage 0..4");

    NtkArgs ntk_args;
    auto* ntk_cmd = app.add_subcommand("ntk-sim", "Kernel-regression spatial-sensitivity simulator");
    ntk_cmd->add_option("--config", ntk_args.config, "TOML config file");
    ntk_cmd->add_option("--seed", ntk_args.seed, "Experiment seed");
    ntk_cmd->add_option("--out", ntk_args.out, "Report JSON path (default: stdout)");

    VerifyArgs verify_args;
    auto* verify_cmd = app.add_subcommand("verify", "Recheck a poisoned tree against its manifest");
    verify_cmd->add_option("--in", verify_args.in_dir, "Clean dataset root")->required();
    verify_cmd->add_option("--out", verify_args.out_dir, "Poisoned tree root")->required();
    verify_cmd->add_option("--block-side", verify_args.block_side, "Block side l0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (layout_cmd->parsed()) return run_layout(layout_args);
        if (inject_cmd->parsed()) return run_inject(inject_args);
        if (metrics_cmd->parsed()) return run_metrics(metrics_a, metrics_b);
        if (poison_cmd->parsed()) return run_poison(poison_args);
        if (ntk_cmd->parsed()) return run_ntk_sim(ntk_args);
        if (verify_cmd->parsed()) return run_verify(verify_args);
    } catch (const fdp::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const fdp::InvalidStage& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const fdp::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitData;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitData;
    }
    return kExitConfig;
}
