// Command-line front end: plan, simulate, compare, schedule.
//
// Exit codes: 0 success, 2 configuration error, 3 planning failure,
// 4 simulation failure (timeout/stall/collision or diverged state).

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "swarmnav/swarmnav.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace swarmnav;

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitPlanningError = 3;
constexpr int kExitSimulationError = 4;

std::string default_out_dir() {
    const char* env = std::getenv("SWARMNAV_OUT");
    return env ? env : "out";
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path.string());
    f << content;
}

void write_waypoints_csv(const WaypointPath& path, const fs::path& file) {
    std::string out = "# swarmnav-waypoints-v1\nidx,x,y\n";
    char line[96];
    for (std::size_t i = 0; i < path.points.size(); ++i) {
        std::snprintf(line, sizeof(line), "%zu,%.6f,%.6f\n", i, path.points[i].x, path.points[i].y);
        out += line;
    }
    write_text(file, out);
}

void write_manifest(const fs::path& dir, const json& extra, const std::vector<std::string>& files) {
    json m = extra;
    m["schema"] = "swarmnav-manifest-v1";
    m["formats"] = {{"trace", "swarmnav-trace-v1"},
                    {"waypoints", "swarmnav-waypoints-v1"},
                    {"schedule", "swarmnav-schedule-v1"},
                    {"mask", "TMSK1"}};
    m["files"] = files;
    write_text(dir / "manifest.json", m.dump(2) + "\n");
}

struct PlannerOverrides {
    std::string planner;
    std::uint64_t seed = 0;
};

Scenario load_with_overrides(const std::string& scenario_path, const PlannerOverrides& ov) {
    Scenario sc = load_scenario(scenario_path);
    if (!ov.planner.empty()) sc.planner.kind = planner_kind_from_string(ov.planner);
    sc.planner.seed = ov.seed;
    return sc;
}

json metrics_to_json(const MetricsReport& r) {
    return {{"path_length_m", r.path_length},
            {"collision_ratio", r.collision_ratio},
            {"goal_error_m", r.goal_error},
            {"total_turning_rad", r.total_turning}};
}

int cmd_plan(const std::string& scenario_path, const PlannerOverrides& ov, const std::string& out) {
    const Scenario sc = load_with_overrides(scenario_path, ov);
    const fs::path dir(out);
    fs::create_directories(dir);

    const PlanResult plan = plan_scene(sc.scene, sc.planner, sc.db);
    std::vector<std::string> files;

    write_waypoints_csv(plan.path, dir / "waypoints.csv");
    files.push_back("waypoints.csv");
    write_mask(plan.mask, (dir / "mask.tmsk").string());
    files.push_back("mask.tmsk");
    for (int c = 0; c < 3; ++c) {
        const std::string name = "mask_ch" + std::to_string(c) + ".pgm";
        write_channel_pgm(plan.mask, c, (dir / name).string());
        files.push_back(name);
    }

    const double inflation = sc.planner.inflation >= 0.0 ? sc.planner.inflation
                                                         : default_inflation(sc.scene, sc.db);
    const MetricsReport metrics = evaluate_path(plan.path.points, sc.scene, inflation);
    json report = {{"schema", "swarmnav-plan-report-v1"},
                   {"scenario", sc.name},
                   {"planner", to_string(sc.planner.kind)},
                   {"seed", sc.planner.seed},
                   {"waypoints", plan.path.points.size()},
                   {"fallback_used", plan.path.fallback},
                   {"metrics", metrics_to_json(metrics)},
                   {"informational", {{"plan_seconds", plan.plan_seconds}}}};
    if (plan.intermediate)
        report["intermediate_cell"] = {plan.intermediate->x, plan.intermediate->y};
    write_text(dir / "plan_report.json", report.dump(2) + "\n");
    files.push_back("plan_report.json");

    write_manifest(dir,
                   {{"command", "plan"},
                    {"scenario_file", scenario_path},
                    {"planner", to_string(sc.planner.kind)},
                    {"seed", sc.planner.seed}},
                   files);
    std::printf("plan: %s planner=%s waypoints=%zu length=%.3f m (%.2fs)\n", sc.name.c_str(),
                to_string(sc.planner.kind), plan.path.points.size(), metrics.path_length,
                plan.plan_seconds);
    return 0;
}

int cmd_simulate(const std::string& scenario_path, const PlannerOverrides& ov,
                 const std::string& out) {
    const Scenario sc = load_with_overrides(scenario_path, ov);
    const fs::path dir(out);
    fs::create_directories(dir);

    const PlanResult plan = plan_scene(sc.scene, sc.planner, sc.db);
    const Simulation sim(sc.scene, sc.db, plan.path, sc.formation, sc.apf, sc.sim);
    const SimTrace trace = sim.run();
    const int collisions = execution_collision_check(trace, sc.scene);

    std::vector<std::string> files;
    write_trace_csv(trace, (dir / "trace.csv").string());
    files.push_back("trace.csv");

    std::vector<Vec2> leader_track;
    for (const auto& row : trace.rows)
        if (row.drone == 0) leader_track.push_back(row.pos);

    const double inflation = sc.planner.inflation >= 0.0 ? sc.planner.inflation
                                                         : default_inflation(sc.scene, sc.db);
    json report = {
        {"schema", "swarmnav-sim-report-v1"},
        {"scenario", sc.name},
        {"planner", to_string(sc.planner.kind)},
        {"seed", sc.planner.seed},
        {"termination", to_string(trace.reason)},
        {"ticks", trace.ticks},
        {"execution_collisions", collisions},
        {"goal_tolerance_m", sim.goal_tolerance()},
        {"planner_path", metrics_to_json(evaluate_path(plan.path.points, sc.scene, inflation))},
        {"leader_track", metrics_to_json(evaluate_path(leader_track, sc.scene, 0.0))},
        {"informational", {{"plan_seconds", plan.plan_seconds}}}};
    write_text(dir / "report.json", report.dump(2) + "\n");
    files.push_back("report.json");

    write_manifest(dir,
                   {{"command", "simulate"},
                    {"scenario_file", scenario_path},
                    {"planner", to_string(sc.planner.kind)},
                    {"seed", sc.planner.seed}},
                   files);
    std::printf("simulate: %s planner=%s reason=%s ticks=%d collisions=%d\n", sc.name.c_str(),
                to_string(sc.planner.kind), to_string(trace.reason), trace.ticks, collisions);
    return trace.reason == Termination::Reached && collisions == 0 ? 0 : kExitSimulationError;
}

struct CompareCell {
    bool generated = false;
    MetricsReport metrics;
};

int cmd_compare(const std::vector<std::string>& scenario_paths,
                const std::vector<std::string>& planners, const std::vector<std::uint64_t>& seeds,
                const std::string& out, unsigned jobs) {
    if (scenario_paths.empty() || planners.empty() || seeds.empty())
        throw MalformedConfig("compare needs at least one scenario, planner and seed");
    const fs::path dir(out);
    fs::create_directories(dir);

    struct Task {
        std::string scenario_path;
        std::string planner;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (const auto& s : scenario_paths)
        for (const auto& p : planners)
            for (const auto seed : seeds) tasks.push_back({s, p, seed});

    auto run_one = [](const Task& task) -> CompareCell {
        CompareCell cell;
        try {
            const Scenario sc = load_with_overrides(task.scenario_path, {task.planner, task.seed});
            const PlanResult plan = plan_scene(sc.scene, sc.planner, sc.db);
            const double inflation = sc.planner.inflation >= 0.0
                                         ? sc.planner.inflation
                                         : default_inflation(sc.scene, sc.db);
            cell.metrics = evaluate_path(plan.path.points, sc.scene, inflation);
            cell.generated = true;
        } catch (const Error&) {
            cell.generated = false;
        }
        return cell;
    };

    // Fan out with a bounded number of in-flight runs; results land in task
    // order regardless of completion order.
    std::vector<CompareCell> cells(tasks.size());
    const unsigned workers = std::max(1u, jobs);
    for (std::size_t base = 0; base < tasks.size(); base += workers) {
        std::vector<std::future<CompareCell>> batch;
        const std::size_t end = std::min(tasks.size(), base + workers);
        for (std::size_t i = base; i < end; ++i)
            batch.push_back(std::async(std::launch::async, run_one, tasks[i]));
        for (std::size_t i = base; i < end; ++i) cells[i] = batch[i - base].get();
    }

    std::string table = "scenario            planner     path_m  coll   goal_m  turn_rad  gen_rate\n";
    std::string csv = "# swarmnav-compare-v1\nscenario,planner,path_m,coll,goal_m,turn_rad,gen_rate\n";
    json rows = json::array();
    std::size_t idx = 0;
    for (const auto& spath : scenario_paths) {
        const std::string name = fs::path(spath).stem().string();
        for (const auto& planner : planners) {
            MetricsReport mean;
            int generated = 0;
            for (std::size_t k = 0; k < seeds.size(); ++k, ++idx) {
                const CompareCell& c = cells[idx];
                if (!c.generated) continue;
                ++generated;
                mean.path_length += c.metrics.path_length;
                mean.collision_ratio += c.metrics.collision_ratio;
                mean.goal_error += c.metrics.goal_error;
                mean.total_turning += c.metrics.total_turning;
            }
            const double n = std::max(1, generated);
            mean.path_length /= n;
            mean.collision_ratio /= n;
            mean.goal_error /= n;
            mean.total_turning /= n;
            const double gen_rate = static_cast<double>(generated) / seeds.size();
            char line[192];
            std::snprintf(line, sizeof(line), "%-19s %-10s %7.3f %5.3f %8.3f %9.3f %9.2f\n",
                          name.c_str(), planner.c_str(), mean.path_length, mean.collision_ratio,
                          mean.goal_error, mean.total_turning, gen_rate);
            table += line;
            std::snprintf(line, sizeof(line), "%s,%s,%.6f,%.6f,%.6f,%.6f,%.2f\n", name.c_str(),
                          planner.c_str(), mean.path_length, mean.collision_ratio, mean.goal_error,
                          mean.total_turning, gen_rate);
            csv += line;
            rows.push_back({{"scenario", name},
                            {"planner", planner},
                            {"path_m", mean.path_length},
                            {"coll", mean.collision_ratio},
                            {"goal_m", mean.goal_error},
                            {"turn_rad", mean.total_turning},
                            {"gen_rate", gen_rate}});
        }
    }
    write_text(dir / "comparison.txt", table);
    write_text(dir / "comparison.csv", csv);
    write_text(dir / "comparison.json",
               json{{"schema", "swarmnav-compare-v1"}, {"rows", rows}}.dump(2) + "\n");
    write_manifest(dir, {{"command", "compare"}},
                   {"comparison.txt", "comparison.csv", "comparison.json"});
    std::fputs(table.c_str(), stdout);
    return 0;
}

int cmd_schedule(int steps, const std::string& out) {
    const NoiseSchedule s = cosine_schedule(steps);
    const fs::path dir(out);
    fs::create_directories(dir);
    std::string csv = "# swarmnav-schedule-v1\nt,beta,alpha,alpha_bar,posterior_variance\n";
    char line[160];
    for (int t = 1; t <= steps; ++t) {
        std::snprintf(line, sizeof(line), "%d,%.12e,%.12e,%.12e,%.12e\n", t, s.beta[t], s.alpha[t],
                      s.alpha_bar[t], s.posterior_variance[t]);
        csv += line;
    }
    write_text(dir / "schedule.csv", csv);
    write_manifest(dir, {{"command", "schedule"}, {"steps", steps}}, {"schedule.csv"});
    std::printf("schedule: %d steps written to %s\n", steps, (dir / "schedule.csv").c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"swarmnav: diffusion-planned leader-follower swarm simulation"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string planner;
    std::uint64_t seed = 0;
    std::string out = default_out_dir();

    auto* plan = app.add_subcommand("plan", "Generate a global plan and export mask + waypoints");
    plan->add_option("--scenario", scenario_path, "Scenario file")->required();
    plan->add_option("--planner", planner, "astar | diffusion1 | diffusion2");
    plan->add_option("--seed", seed, "RNG seed")->required();
    plan->add_option("--out", out, "Output directory (env SWARMNAV_OUT)");

    auto* simulate = app.add_subcommand("simulate", "Run the closed-loop swarm simulation");
    simulate->add_option("--scenario", scenario_path, "Scenario file")->required();
    simulate->add_option("--planner", planner, "astar | diffusion1 | diffusion2");
    simulate->add_option("--seed", seed, "RNG seed")->required();
    simulate->add_option("--out", out, "Output directory (env SWARMNAV_OUT)");

    std::vector<std::string> scenarios;
    std::vector<std::string> planners{"astar", "diffusion1"};
    std::vector<std::uint64_t> seeds;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    auto* compare = app.add_subcommand("compare", "Aggregate planner metrics over scenarios x seeds");
    compare->add_option("--scenarios", scenarios, "Scenario files")->required()->delimiter(',');
    compare->add_option("--planners", planners, "Planners to compare")->delimiter(',');
    compare->add_option("--seeds", seeds, "Seeds")->required()->delimiter(',');
    compare->add_option("--jobs", jobs, "Parallel workers");
    compare->add_option("--out", out, "Output directory (env SWARMNAV_OUT)");

    int steps = 100;
    auto* schedule = app.add_subcommand("schedule", "Dump the squared-cosine noise schedule");
    schedule->add_option("--steps", steps, "Diffusion step count")->required();
    schedule->add_option("--out", out, "Output directory (env SWARMNAV_OUT)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (plan->parsed()) return cmd_plan(scenario_path, {planner, seed}, out);
        if (simulate->parsed()) return cmd_simulate(scenario_path, {planner, seed}, out);
        if (compare->parsed()) return cmd_compare(scenarios, planners, seeds, out, jobs);
        if (schedule->parsed()) return cmd_schedule(steps, out);
    } catch (const MalformedConfig& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    } catch (const InvalidScene& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    } catch (const UnknownClass& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    } catch (const InvalidStepCount& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    } catch (const NoPath& e) {
        std::fprintf(stderr, "planning error: %s\n", e.what());
        return kExitPlanningError;
    } catch (const OccupiedEndpoint& e) {
        std::fprintf(stderr, "planning error: %s\n", e.what());
        return kExitPlanningError;
    } catch (const Error& e) {
        std::fprintf(stderr, "simulation error: %s\n", e.what());
        return kExitSimulationError;
    }
    return 0;
}
