#include "fdp/pipeline.hpp"

#include <atomic>
#include <cstddef>
#include <random>
#include <thread>

namespace fdp {

namespace fs = std::filesystem;

StageToggles ablation_stage(int stage, double fixed_k) {
    if (stage < 0 || stage > 4) throw InvalidStage("stage must be in 0..4");
    StageToggles t;
    t.fixed_k = fixed_k;
    // Stages remove components progressively, matching the ablation steps.
    if (stage >= 1) t.dynamic_tuning = false;
    if (stage >= 2) t.morphology = false;
    if (stage >= 3) t.svd_fusion = false;
    if (stage >= 4) t.dwt_extraction = false;
    return t;
}

double ablation_default_k(int stage) {
    switch (stage) {
        case 1: return 2.5;
        case 2: return 0.25;
        case 3: return 0.24;
        case 4: return 0.05;
        default: throw InvalidStage("no manual coefficient for stage " + std::to_string(stage));
    }
}

namespace {

struct Task {
    std::size_t source_index;
    int target;  // 1-based
    std::string out_rel_path;
};

}  // namespace

std::string poisoned_rel_path(const std::string& source_rel,
                              const std::string& target_class_name, int target) {
    const fs::path src(source_rel);
    const std::string src_class = src.parent_path().string();
    const std::string stem = src.stem().string();
    const std::string ext = src.extension().string();
    return target_class_name + "/" + src_class + "_" + stem + "_p" +
           std::to_string(target) + ext;
}

namespace {

// In-place Fisher-Yates; stable across platforms, unlike std::shuffle.
void deterministic_shuffle(std::vector<std::size_t>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[static_cast<std::size_t>(rng() % i)]);
}

}  // namespace

PoisonedDataset poison_dataset(const LabeledDataset& ds, const PoisonPlan& plan,
                               const GridConfig& grid, const TriggerImage& trigger,
                               const TunerConfig& tune) {
    if (ds.samples.empty()) throw EmptyDataset("cannot poison an empty dataset");
    const int num_classes = static_cast<int>(ds.class_names.size());

    GridConfig cfg = grid;
    cfg.image_height = ds.samples.front().image.height;
    cfg.image_width = ds.samples.front().image.width;
    cfg.num_classes = num_classes;
    cfg.validate();
    validate_spacing(cfg);

    if (plan.rate < 0.0 || plan.rate > 1.0) throw PlanInfeasible("rate must be in [0, 1]");
    const auto total = static_cast<std::size_t>(plan.rate * static_cast<double>(ds.samples.size()));
    const std::size_t per_class = total / static_cast<std::size_t>(num_classes);

    // Seeded without-replacement draw per target, excluding the target's own class.
    std::mt19937_64 rng(plan.seed);
    std::vector<Task> tasks;
    for (int t = 1; t <= num_classes; ++t) {
        std::vector<std::size_t> pool;
        for (std::size_t i = 0; i < ds.samples.size(); ++i)
            if (ds.samples[i].class_index != t - 1) pool.push_back(i);
        if (pool.size() < per_class)
            throw PlanInfeasible("not enough non-target sources for class " +
                                 ds.class_names[static_cast<std::size_t>(t - 1)]);
        deterministic_shuffle(pool, rng);
        for (std::size_t j = 0; j < per_class; ++j) {
            const auto& src = ds.samples[pool[j]];
            tasks.push_back({pool[j], t,
                             poisoned_rel_path(src.rel_path,
                                               ds.class_names[static_cast<std::size_t>(t - 1)], t)});
        }
    }

    // Fan out per sample; results land by task index, so the output order is
    // deterministic regardless of completion order.
    std::vector<std::pair<Image, PoisonRecord>> results(tasks.size());
    const auto worker = [&](std::atomic<std::size_t>& next) {
        for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
            const Task& task = tasks[i];
            const Sample& src = ds.samples[task.source_index];
            results[i] = poison_sample(src.image, task.target, trigger, cfg, tune,
                                       plan.stages, src.rel_path);
        }
    };

    const int jobs = std::max(1, plan.jobs);
    if (jobs == 1 || tasks.size() < 2) {
        std::atomic<std::size_t> next{0};
        worker(next);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> threads;
        for (int j = 0; j < jobs; ++j) threads.emplace_back([&] { worker(next); });
        for (auto& th : threads) th.join();
    }

    PoisonedDataset out;
    out.dataset.class_names = ds.class_names;
    out.dataset.root = ds.root;
    out.dataset.samples = ds.samples;  // clean passthrough
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        Sample s;
        s.image = std::move(results[i].first);
        s.class_index = tasks[i].target - 1;  // relabeled to the target class
        s.rel_path = tasks[i].out_rel_path;
        out.dataset.samples.push_back(std::move(s));
        out.manifest.push_back(std::move(results[i].second));
    }
    return out;
}

void write_poisoned_tree(const LabeledDataset& clean, const PoisonedDataset& out,
                         const fs::path& out_dir) {
    fs::create_directories(out_dir);
    for (const auto& name : clean.class_names) fs::create_directories(out_dir / name);

    // Clean files are copied byte-identically, not re-encoded.
    for (const auto& s : clean.samples)
        fs::copy_file(clean.root / s.rel_path, out_dir / s.rel_path,
                      fs::copy_options::overwrite_existing);

    for (std::size_t i = clean.samples.size(); i < out.dataset.samples.size(); ++i) {
        const auto& s = out.dataset.samples[i];
        save_image(s.image, out_dir / s.rel_path);
    }
    write_manifest(out.manifest, out_dir / "manifest.json");
}

}  // namespace fdp
