#include "windcast/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <thread>

#include <json.hpp>

#include "windcast/errors.hpp"

namespace windcast {

double r2(std::span<const double> pred, std::span<const double> truth, R2Mode mode) {
    if (pred.size() != truth.size()) {
        throw validation_error("r2: length mismatch " + std::to_string(pred.size()) + " vs " +
                               std::to_string(truth.size()));
    }
    if (truth.size() < 2) throw validation_error("r2: need at least 2 points");
    double ybar = 0.0;
    for (double y : truth) ybar += y;
    ybar /= static_cast<double>(truth.size());
    double ss_tot = 0.0;
    for (double y : truth) ss_tot += (y - ybar) * (y - ybar);
    if (ss_tot <= 0.0) throw validation_error("r2: ground truth variance is zero");

    if (mode == R2Mode::paper) {
        double ss_pred = 0.0;
        for (double p : pred) ss_pred += (p - ybar) * (p - ybar);
        return ss_pred / ss_tot;
    }
    double ss_res = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        ss_res += (truth[i] - pred[i]) * (truth[i] - pred[i]);
    }
    return 1.0 - ss_res / ss_tot;
}

EvalResult evaluate(Model& model, const SampleSet& samples, Split split,
                    const StandardizeStats& stats) {
    const std::vector<std::size_t> idx = samples.indices_of(split);
    if (idx.empty()) throw validation_error("evaluate: requested split is empty");

    const std::vector<std::pair<double, double>> preds = predict_batch(model, samples, idx);
    std::vector<double> pu(idx.size()), pv(idx.size()), tu(idx.size()), tv(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const auto [u, v] = invert_standardize(preds[i].first, preds[i].second, stats);
        pu[i] = u;
        pv[i] = v;
        const SampleWindow& w = samples.samples[idx[i]];
        const auto [ru, rv] = invert_standardize(w.target_u, w.target_v, stats);
        tu[i] = ru;
        tv[i] = rv;
    }
    EvalResult res;
    res.r2_u = r2(pu, tu, R2Mode::paper);
    res.r2_v = r2(pv, tv, R2Mode::paper);
    res.r2_u_std = r2(pu, tu, R2Mode::standard);
    res.r2_v_std = r2(pv, tv, R2Mode::standard);
    return res;
}

PreparedSamples prepare_samples(const WindFieldSeries& calibrated, int T, int S,
                                const SplitFractions& fractions) {
    // Boundary arithmetic must match make_samples; fit strictly before the
    // first validation target.
    if (calibrated.n_time < T + 1) {
        throw validation_error("prepare_samples: series too short for T=" + std::to_string(T));
    }
    const std::int64_t n_anchors = calibrated.n_time - T;
    const std::int64_t i1 = std::llround(static_cast<double>(n_anchors) * fractions.train);
    if (i1 < 1) throw validation_error("prepare_samples: empty train split");
    PreparedSamples out;
    out.stats = fit_standardize(calibrated, T + i1);
    const WindFieldSeries standardized = apply_standardize(calibrated, out.stats);
    out.set = make_samples(standardized, T, S, fractions);
    if (out.set.train_hour_end != T + i1) {
        throw validation_error("prepare_samples: split boundary mismatch");  // internal guard
    }
    return out;
}

const SweepCell* SweepResult::cell(int T, int S) const {
    for (const SweepCell& c : cells) {
        if (c.T == T && c.S == S) return &c;
    }
    return nullptr;
}

double SweepResult::mean_r2(R2Mode mode) const {
    double sum = 0.0;
    int n = 0;
    for (const SweepCell& c : cells) {
        if (!c.ok) continue;
        sum += mode == R2Mode::paper ? 0.5 * (c.r2.r2_u + c.r2.r2_v)
                                     : 0.5 * (c.r2.r2_u_std + c.r2.r2_v_std);
        ++n;
    }
    if (n == 0) throw validation_error("SweepResult::mean_r2: no successful cells");
    return sum / n;
}

namespace {

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string request_fingerprint(const SweepRequest& req) {
    std::string s = "seed=" + std::to_string(req.master_seed) + ";T=";
    for (int t : req.T_set) s += std::to_string(t) + ",";
    s += ";S=";
    for (int v : req.S_set) s += std::to_string(v) + ",";
    s += ";variants=";
    for (Variant v : req.variants) s += to_string(v) + ",";
    char train[160];
    std::snprintf(train, sizeof train, ";lr=%.17g;batch=%d;epochs=%d;patience=%d;delta=%.17g",
                  req.train.lr, req.train.batch_size, req.train.epochs, req.train.patience,
                  req.train.huber_delta);
    s += train;
    char fr[96];
    std::snprintf(fr, sizeof fr, ";split=%.17g/%.17g/%.17g", req.fractions.train,
                  req.fractions.val, req.fractions.test);
    s += fr;
    return s;
}

SweepCell run_cell(const WindFieldSeries& calibrated, Variant variant, int T, int S,
                   const SweepRequest& req) {
    SweepCell cell;
    cell.T = T;
    cell.S = S;
    cell.seed = derive_seed(req.master_seed,
                            {static_cast<std::uint64_t>(variant), static_cast<std::uint64_t>(T),
                             static_cast<std::uint64_t>(S)});
    try {
        PreparedSamples prep = prepare_samples(calibrated, T, S, req.fractions);
        ModelConfig mc;
        mc.variant = variant;
        mc.T = T;
        mc.S = S;
        mc.seed = cell.seed;
        Model model(mc);
        TrainConfig tc = req.train;
        tc.seed = cell.seed;
        const TrainHistory hist = train_model(model, prep.set, tc);
        cell.epochs_run = static_cast<int>(hist.epochs.size());
        cell.r2 = evaluate(model, prep.set, Split::test, prep.stats);
        cell.ok = true;
        if (!req.artifacts_dir.empty()) {
            const std::string stem = req.artifacts_dir + "/cell_" + to_string(variant) + "_T" +
                                     std::to_string(T) + "_S" + std::to_string(S);
            write_history_csv(hist, stem + "_history.csv");
            save_checkpoint(model, prep.stats, stem + ".wck");
        }
    } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
    }
    return cell;
}

}  // namespace

std::vector<SweepResult> sweep(const WindFieldSeries& calibrated, const std::string& site,
                               const SweepRequest& request, int threads) {
    if (request.T_set.empty() || request.S_set.empty() || request.variants.empty()) {
        throw validation_error("sweep: T set, S set, and variants must be non-empty");
    }
    const std::string hash = fnv1a_hex(request_fingerprint(request));

    std::vector<SweepResult> results;
    for (Variant variant : request.variants) {
        SweepResult r;
        r.site = site;
        r.variant = variant;
        r.master_seed = request.master_seed;
        r.config_hash = hash;
        r.cells.resize(request.T_set.size() * request.S_set.size());
        results.push_back(std::move(r));
    }

    struct Job {
        std::size_t variant_i, cell_i;
        int T, S;
    };
    std::vector<Job> jobs;
    for (std::size_t vi = 0; vi < request.variants.size(); ++vi) {
        std::size_t ci = 0;
        for (int T : request.T_set) {
            for (int S : request.S_set) {
                jobs.push_back({vi, ci++, T, S});
            }
        }
    }

    const int n_workers = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
    if (n_workers == 1) {
        for (const Job& j : jobs) {
            results[j.variant_i].cells[j.cell_i] =
                run_cell(calibrated, request.variants[j.variant_i], j.T, j.S, request);
        }
    } else {
        // cells are self-contained, so any scheduling yields identical results
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                const std::size_t k = next.fetch_add(1);
                if (k >= jobs.size()) return;
                const Job& j = jobs[k];
                results[j.variant_i].cells[j.cell_i] =
                    run_cell(calibrated, request.variants[j.variant_i], j.T, j.S, request);
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    return results;
}

std::string sweep_csv(const SweepResult& result, char component, R2Mode mode) {
    std::string out = "T\\S";
    for (int S : kSupportedS) {
        out += ",";
        out += std::to_string(S) + "x" + std::to_string(S);
    }
    out += "\n";
    char buf[32];
    for (int T : kSupportedT) {
        out += std::to_string(T);
        for (int S : kSupportedS) {
            out += ",";
            const SweepCell* c = result.cell(T, S);
            if (c == nullptr || !c->ok) continue;
            const double val = component == 'u'
                                   ? (mode == R2Mode::paper ? c->r2.r2_u : c->r2.r2_u_std)
                                   : (mode == R2Mode::paper ? c->r2.r2_v : c->r2.r2_v_std);
            std::snprintf(buf, sizeof buf, "%.6f", val);
            out += buf;
        }
        out += "\n";
    }
    return out;
}

std::string sweep_to_json(const SweepResult& result) {
    nlohmann::json cells = nlohmann::json::array();
    for (const SweepCell& c : result.cells) {
        nlohmann::json jc{{"T", c.T},       {"S", c.S},           {"ok", c.ok},
                          {"seed", c.seed}, {"epochs", c.epochs_run}};
        if (c.ok) {
            jc["r2_u"] = c.r2.r2_u;
            jc["r2_v"] = c.r2.r2_v;
            jc["r2_u_standard"] = c.r2.r2_u_std;
            jc["r2_v_standard"] = c.r2.r2_v_std;
        } else {
            jc["error"] = c.error;
        }
        cells.push_back(jc);
    }
    return nlohmann::json{{"site", result.site},
                          {"variant", to_string(result.variant)},
                          {"master_seed", result.master_seed},
                          {"config_hash", result.config_hash},
                          {"cells", cells}}
        .dump(2);
}

SweepResult sweep_from_json(const std::string& text) {
    try {
        const nlohmann::json j = nlohmann::json::parse(text);
        SweepResult r;
        r.site = j.at("site");
        r.variant = variant_from_name(j.at("variant"));
        r.master_seed = j.at("master_seed");
        r.config_hash = j.at("config_hash");
        for (const nlohmann::json& jc : j.at("cells")) {
            SweepCell c;
            c.T = jc.at("T");
            c.S = jc.at("S");
            c.ok = jc.at("ok");
            c.seed = jc.at("seed");
            c.epochs_run = jc.at("epochs");
            if (c.ok) {
                c.r2.r2_u = jc.at("r2_u");
                c.r2.r2_v = jc.at("r2_v");
                c.r2.r2_u_std = jc.at("r2_u_standard");
                c.r2.r2_v_std = jc.at("r2_v_standard");
            } else {
                c.error = jc.at("error");
            }
            r.cells.push_back(std::move(c));
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("SweepResult JSON: ") + e.what());
    }
}

ComparisonSummary compare_sites(const std::vector<SweepResult>& sweeps,
                                const std::vector<CorrelationReport>& reports, R2Mode mode) {
    if (sweeps.empty()) throw validation_error("compare_sites: no sweep results");

    std::vector<std::string> sites;
    for (const SweepResult& s : sweeps) {
        if (std::find(sites.begin(), sites.end(), s.site) == sites.end()) sites.push_back(s.site);
    }
    std::sort(sites.begin(), sites.end());

    ComparisonSummary sum;
    for (const std::string& site : sites) {
        const CorrelationReport* rep = nullptr;
        for (const CorrelationReport& r : reports) {
            if (r.site == site) rep = &r;
        }
        if (rep == nullptr) {
            throw validation_error("compare_sites: no correlation report for site '" + site +
                                   "'");
        }
        double r2sum = 0.0;
        int n = 0;
        for (const SweepResult& s : sweeps) {
            if (s.site != site) continue;
            r2sum += s.mean_r2(mode);
            ++n;
        }
        SiteJoin row;
        row.site = site;
        row.max_std_u = rep->max_std_u;
        row.max_std_v = rep->max_std_v;
        row.mean_r2 = r2sum / n;
        sum.rows.push_back(row);
    }
    for (const CorrelationReport& r : reports) {
        if (std::find(sites.begin(), sites.end(), r.site) == sites.end()) {
            throw validation_error("compare_sites: report site '" + r.site +
                                   "' has no sweep result");
        }
    }

    std::vector<std::size_t> order(sum.rows.size());
    std::iota(order.begin(), order.end(), 0);
    auto by_spread = order;
    std::sort(by_spread.begin(), by_spread.end(), [&](std::size_t a, std::size_t b) {
        const double sa = 0.5 * (sum.rows[a].max_std_u + sum.rows[a].max_std_v);
        const double sb = 0.5 * (sum.rows[b].max_std_u + sum.rows[b].max_std_v);
        if (sa != sb) return sa < sb;
        return sum.rows[a].site < sum.rows[b].site;
    });
    auto by_r2 = order;
    std::sort(by_r2.begin(), by_r2.end(), [&](std::size_t a, std::size_t b) {
        if (sum.rows[a].mean_r2 != sum.rows[b].mean_r2) {
            return sum.rows[a].mean_r2 > sum.rows[b].mean_r2;
        }
        return sum.rows[a].site < sum.rows[b].site;
    });
    for (std::size_t i : by_spread) sum.by_spread.push_back(sum.rows[i].site);
    for (std::size_t i : by_r2) sum.by_r2.push_back(sum.rows[i].site);
    sum.consistent = sum.by_spread == sum.by_r2;
    return sum;
}

std::string summary_to_json(const ComparisonSummary& summary) {
    nlohmann::json rows = nlohmann::json::array();
    for (const SiteJoin& r : summary.rows) {
        rows.push_back({{"site", r.site},
                        {"max_std_u", r.max_std_u},
                        {"max_std_v", r.max_std_v},
                        {"mean_r2", r.mean_r2}});
    }
    return nlohmann::json{{"rows", rows},
                          {"by_spread", summary.by_spread},
                          {"by_r2", summary.by_r2},
                          {"consistent", summary.consistent}}
        .dump(2);
}

std::string summary_text(const ComparisonSummary& summary) {
    std::string out = "site              max_std_u  max_std_v  mean_R2\n";
    char buf[128];
    for (const SiteJoin& r : summary.rows) {
        std::snprintf(buf, sizeof buf, "%-16s  %9.4f  %9.4f  %7.4f\n", r.site.c_str(),
                      r.max_std_u, r.max_std_v, r.mean_r2);
        out += buf;
    }
    out += "ascending ACC spread : ";
    for (std::size_t i = 0; i < summary.by_spread.size(); ++i) {
        if (i) out += " < ";
        out += summary.by_spread[i];
    }
    out += "\ndescending mean R2   : ";
    for (std::size_t i = 0; i < summary.by_r2.size(); ++i) {
        if (i) out += " > ";
        out += summary.by_r2[i];
    }
    out += "\nconsistent: ";
    out += summary.consistent ? "true" : "false";
    out += "\n";
    return out;
}

}  // namespace windcast
