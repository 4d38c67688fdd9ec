// windcast CLI: ingest/analyze/rank/train/sweep/report/inspect around the
// library. Exit codes: 0 success, 1 I/O failure, 2 validation failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "windcast/csv_ingest.hpp"
#include "windcast/errors.hpp"
#include "windcast/eval.hpp"
#include "windcast/gridspec.hpp"
#include "windcast/run_config.hpp"
#include "windcast/stats.hpp"
#include "windcast/synth.hpp"
#include "windcast/timeutil.hpp"
#include "windcast/windpack.hpp"

namespace fs = std::filesystem;
using namespace windcast;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw io_error("cannot write: " + path);
    out << text;
}

void print_series_summary(const WindFieldSeries& s) {
    std::printf("grid: %dx%d (lat %.3f..%.3f step %.3f, lon %.3f..%.3f step %.3f)\n",
                s.grid.n_lat, s.grid.n_lon, s.grid.lat_min, s.grid.lat_max, s.grid.d_lat,
                s.grid.lon_min, s.grid.lon_max, s.grid.d_lon);
    std::printf("prediction point: (%d, %d) = %.3f N %.3f E\n", s.grid.pred_row, s.grid.pred_col,
                s.grid.lat_at(s.grid.pred_row), s.grid.lon_at(s.grid.pred_col));
    std::printf("hours: %lld starting %s, altitude %.1f m\n",
                static_cast<long long>(s.n_time), format_iso8601_utc(s.start_time).c_str(),
                s.altitude_m);
}

void warn_if_paper_mode_exceeds_one(const SweepResult& r) {
    for (const SweepCell& c : r.cells) {
        if (c.ok && (c.r2.r2_u > 1.0 || c.r2.r2_v > 1.0)) {
            std::printf("note: explained-variance R2 exceeds 1 at T=%d S=%d "
                        "(u=%.4f v=%.4f); see the standard-mode columns in the JSON\n",
                        c.T, c.S, c.r2.r2_u, c.r2.r2_v);
        }
    }
}

int cmd_ingest(const std::string& synth_kind, const std::string& csv_dir,
               const std::string& grid_path, int grid_n, std::int64_t hours, std::uint64_t seed,
               double mixture_weight, double altitude, const std::string& out_path) {
    WindFieldSeries series;
    if (!synth_kind.empty()) {
        const GridSpec grid =
            grid_path.empty() ? GridSpec::synthetic(grid_n) : grid_from_json_file(grid_path);
        SynthParams params;
        params.mixture_weight = mixture_weight;
        series = synth_field(synth_kind_from_name(synth_kind), grid, hours, seed, params);
    } else if (!csv_dir.empty()) {
        if (grid_path.empty()) throw validation_error("ingest --csv requires --grid");
        series = ingest_csv(csv_dir, grid_from_json_file(grid_path), altitude);
    } else {
        throw validation_error("ingest: pass --synth <kind> or --csv <dir>");
    }
    write_windpack(series, out_path);
    print_series_summary(series);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

int cmd_analyze(const std::string& in_path, const std::string& site, const std::string& out_dir,
                int max_lag, const AblParams& abl) {
    const WindFieldSeries raw = read_windpack(in_path);
    const WindFieldSeries series = abl_calibrate(raw, abl);
    const CorrelationReport report = analyze_site(series, site, max_lag);
    write_report_files(report, out_dir);
    std::printf("site %s: max std of ACC  u=%.3f  v=%.3f\n", site.c_str(), report.max_std_u,
                report.max_std_v);
    if (!report.pcc.sizes.empty()) {
        std::printf("avg PCC by grid size (u/v):");
        for (std::size_t i = 0; i < report.pcc.sizes.size(); ++i) {
            std::printf("  %dx%d %.3f/%.3f", report.pcc.sizes[i], report.pcc.sizes[i],
                        report.pcc.avg_u[i], report.pcc.avg_v[i]);
        }
        std::printf("\n");
    }
    std::printf("report written under %s\n", out_dir.c_str());
    return 0;
}

int cmd_rank(const std::vector<std::string>& report_paths) {
    std::vector<CorrelationReport> reports;
    for (const std::string& p : report_paths) reports.push_back(report_from_json(slurp(p)));
    const std::vector<std::string> order = learnability_rank(reports);
    std::printf("most learnable first:\n");
    for (std::size_t i = 0; i < order.size(); ++i) {
        std::printf("%zu. %s\n", i + 1, order[i].c_str());
    }
    return 0;
}

int cmd_train(const std::string& in_path, int T, int S, const std::string& variant_name,
              const std::string& out_dir, std::uint64_t seed, const AblParams& abl,
              TrainConfig train_cfg) {
    const WindFieldSeries series = abl_calibrate(read_windpack(in_path), abl);
    PreparedSamples prep = prepare_samples(series, T, S);

    ModelConfig mc;
    mc.variant = variant_from_name(variant_name);
    mc.T = T;
    mc.S = S;
    mc.seed = seed;
    Model model(mc);
    train_cfg.seed = seed;
    const TrainHistory hist = train_model(model, prep.set, train_cfg);
    const EvalResult res = evaluate(model, prep.set, Split::test, prep.stats);

    fs::create_directories(out_dir);
    write_history_csv(hist, out_dir + "/history.csv");
    save_checkpoint(model, prep.stats, out_dir + "/checkpoint.wck");
    spill(out_dir + "/stats.json", stats_to_json(prep.stats) + "\n");
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "{\n  \"r2_u\": %.10g,\n  \"r2_v\": %.10g,\n  \"r2_u_standard\": %.10g,\n"
                  "  \"r2_v_standard\": %.10g,\n  \"epochs\": %d,\n  \"best_epoch\": %d\n}\n",
                  res.r2_u, res.r2_v, res.r2_u_std, res.r2_v_std,
                  static_cast<int>(hist.epochs.size()), hist.best_epoch);
    spill(out_dir + "/result.json", buf);

    std::printf("trained %s T=%d S=%d: %d epochs (best %d, val %.6g)\n", variant_name.c_str(), T,
                S, static_cast<int>(hist.epochs.size()), hist.best_epoch, hist.best_val);
    std::printf("test R2 (explained-variance): u=%.4f v=%.4f\n", res.r2_u, res.r2_v);
    std::printf("test R2 (standard):           u=%.4f v=%.4f\n", res.r2_u_std, res.r2_v_std);
    std::printf("artifacts under %s\n", out_dir.c_str());
    return 0;
}

int cmd_sweep(const std::string& config_path) {
    const RunConfig rc = RunConfig::from_file(config_path);
    const WindFieldSeries series = abl_calibrate(rc.load_series(), rc.abl);

    fs::create_directories(rc.out_dir + "/cells");
    spill(rc.out_dir + "/config.toml", rc.snapshot_text());

    SweepRequest req;
    req.T_set = rc.T_set;
    req.S_set = rc.S_set;
    req.variants = rc.variants;
    req.master_seed = rc.seed;
    req.train = rc.train;
    req.artifacts_dir = rc.out_dir + "/cells";
    const std::vector<SweepResult> results = sweep(series, rc.site, req, rc.threads);

    int failures = 0, total = 0;
    for (const SweepResult& r : results) {
        const std::string stem = rc.out_dir + "/sweep_" + to_string(r.variant);
        spill(stem + ".json", sweep_to_json(r) + "\n");
        spill(stem + "_u.csv", sweep_csv(r, 'u'));
        spill(stem + "_v.csv", sweep_csv(r, 'v'));
        warn_if_paper_mode_exceeds_one(r);
        for (const SweepCell& c : r.cells) {
            ++total;
            if (!c.ok) {
                ++failures;
                std::printf("cell %s T=%d S=%d failed: %s\n", to_string(r.variant).c_str(), c.T,
                            c.S, c.error.c_str());
            }
        }
        std::printf("%s: mean test R2 %.4f (standard %.4f) over %zu cells\n",
                    to_string(r.variant).c_str(), r.mean_r2(R2Mode::paper),
                    r.mean_r2(R2Mode::standard), r.cells.size());
    }
    std::printf("sweep results under %s\n", rc.out_dir.c_str());
    if (failures == total) throw validation_error("sweep: every cell failed");
    return 0;
}

int cmd_report(const std::string& sites_csv, const std::string& root,
               const std::string& out_dir) {
    std::vector<std::string> sites;
    std::string item;
    std::istringstream ss(sites_csv);
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) sites.push_back(item);
    }
    if (sites.empty()) throw validation_error("report: --sites list is empty");

    std::vector<SweepResult> sweeps;
    std::vector<CorrelationReport> reports;
    for (const std::string& site : sites) {
        const std::string dir = root + "/" + site;
        reports.push_back(report_from_json(slurp(dir + "/report.json")));
        bool found = false;
        for (const auto& entry : fs::directory_iterator(dir)) {
            const std::string name = entry.path().filename().string();
            if (name.rfind("sweep_", 0) == 0 && entry.path().extension() == ".json") {
                sweeps.push_back(sweep_from_json(slurp(entry.path().string())));
                found = true;
            }
        }
        if (!found) throw io_error("report: no sweep_*.json under " + dir);
    }
    const ComparisonSummary summary = compare_sites(sweeps, reports);
    fs::create_directories(out_dir);
    spill(out_dir + "/comparison.json", summary_to_json(summary) + "\n");
    spill(out_dir + "/comparison.txt", summary_text(summary));
    std::fputs(summary_text(summary).c_str(), stdout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wind-field forecasting and learnability analysis"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::uint64_t seed = 0;
    std::string out;
    int threads = 1;
    app.add_option("--seed", seed, "master seed")->capture_default_str();
    app.add_option("--out", out, "output file or directory");
    app.add_option("--threads", threads, "worker threads for sweeps")->capture_default_str();

    AblParams abl;
    auto add_abl = [&abl](CLI::App* cmd) {
        cmd->add_option("--y0", abl.y0, "roughness length, m")->capture_default_str();
        cmd->add_option("--y-ref", abl.y_ref, "data altitude, m")->capture_default_str();
        cmd->add_option("--y-target", abl.y_target, "calibration altitude, m")
            ->capture_default_str();
    };

    // ingest
    auto* ingest = app.add_subcommand("ingest", "build a windpack from synth or CSV data");
    std::string synth_kind, csv_dir, grid_path;
    int grid_n = 9;
    std::int64_t hours = 3000;
    double mixture_weight = 0.5, altitude = 50.0;
    ingest->add_option("--synth", synth_kind, "synthetic kind: advective|noise|mixture");
    ingest->add_option("--csv", csv_dir, "directory of YYYYMMDDTHH.csv files");
    ingest->add_option("--grid", grid_path, "GridSpec JSON file");
    ingest->add_option("--grid-n", grid_n, "synthetic square grid size")->capture_default_str();
    ingest->add_option("--hours", hours, "synthetic series length")->capture_default_str();
    ingest->add_option("--mixture-weight", mixture_weight, "noise share for mixture")
        ->capture_default_str();
    ingest->add_option("--altitude", altitude, "CSV data altitude, m")->capture_default_str();
    ingest->add_option("-o,--output", out, "output windpack path");

    // inspect
    auto* inspect = app.add_subcommand("inspect", "print a windpack header");
    std::string inspect_path;
    inspect->add_option("file", inspect_path, "windpack file")->required();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "ACC/PCC learnability report for one site");
    std::string in_path, site = "site";
    int max_lag = 24;
    analyze->add_option("--in", in_path, "input windpack")->required();
    analyze->add_option("--site", site, "site name")->capture_default_str();
    analyze->add_option("--max-lag", max_lag, "ACC lag range, hours")->capture_default_str();
    add_abl(analyze);

    // rank
    auto* rank = app.add_subcommand("rank", "order report.json files by learnability");
    std::vector<std::string> report_paths;
    rank->add_option("reports", report_paths, "report.json files")->required()->expected(-2);

    // train
    auto* train = app.add_subcommand("train", "train one model and evaluate on the test split");
    int T = 3, S = 3;
    std::string variant = "cnn2d3d";
    TrainConfig tc;
    train->add_option("--in", in_path, "input windpack")->required();
    train->add_option("--T", T, "input time length, hours")->capture_default_str();
    train->add_option("--S", S, "input grid size")->capture_default_str();
    train->add_option("--variant", variant, "cnn2d3d|fully3d")->capture_default_str();
    train->add_option("--lr", tc.lr, "Adam learning rate")->capture_default_str();
    train->add_option("--batch", tc.batch_size, "batch size")->capture_default_str();
    train->add_option("--epochs", tc.epochs, "max epochs")->capture_default_str();
    train->add_option("--patience", tc.patience, "early-stopping patience")
        ->capture_default_str();
    train->add_option("--huber-delta", tc.huber_delta, "Huber threshold")->capture_default_str();
    add_abl(train);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "grid-size x time-length sweep from a config");
    std::string config_path;
    sweep_cmd->add_option("--config", config_path, "run config file")->required();

    // report
    auto* report = app.add_subcommand("report", "join sweeps and reports across sites");
    std::string sites_csv, root = ".";
    report->add_option("--sites", sites_csv, "comma-separated site run dirs")->required();
    report->add_option("--root", root, "directory containing the site run dirs")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ingest) {
            if (out.empty()) throw validation_error("ingest: pass -o/--out for the windpack");
            return cmd_ingest(synth_kind, csv_dir, grid_path, grid_n, hours, seed,
                              mixture_weight, altitude, out);
        }
        if (*inspect) {
            std::printf("%s\n", windpack_header_text(inspect_path).c_str());
            return 0;
        }
        if (*analyze) {
            return cmd_analyze(in_path, site, out.empty() ? site : out, max_lag, abl);
        }
        if (*rank) return cmd_rank(report_paths);
        if (*train) {
            tc.seed = seed;
            return cmd_train(in_path, T, S, variant, out.empty() ? "run" : out, seed, abl, tc);
        }
        if (*sweep_cmd) return cmd_sweep(config_path);
        if (*report) return cmd_report(sites_csv, root, out.empty() ? "comparison" : out);
    } catch (const validation_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const io_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
