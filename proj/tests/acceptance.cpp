// Shipping gate: every release criterion in one binary, one verdict line
// each, nonzero exit when anything fails. Heavy stages (simulation,
// training) run at realistic scale, so expect tens of minutes.
#include <oracles.hpp>
#include <wez/atmosphere.hpp>
#include <wez/dataset.hpp>
#include <wez/design.hpp>
#include <wez/errors.hpp>
#include <wez/filter.hpp>
#include <wez/mlp.hpp>
#include <wez/model_io.hpp>
#include <wez/preprocess.hpp>
#include <wez/range_solver.hpp>
#include <wez/rng.hpp>
#include <wez/simulate.hpp>
#include <wez/stats.hpp>
#include <wez/sweep.hpp>
#include <wez/train.hpp>
#include <wez/units.hpp>
#include <wez/vec3.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace wez;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kDesignSeed = 20260822;  // desk-scale pipeline
constexpr std::uint64_t kTrainSeed = 7;

fs::path artifacts_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "wez_acceptance";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Verdict {
    bool pass = false;
    std::string detail;
};

// Artifacts shared between the desk-scale criteria.
struct DeskState {
    Dataset clean;
    Splits splits;
    std::optional<MlpModel> model;
};

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Scenario> lhs_scenarios(std::size_t n, std::uint64_t seed) {
    DesignSpec spec;
    spec.samples = n;
    spec.seed = seed;
    spec.maximin_iterations = 5000;
    return scenario_rows(lhs_sample(spec));
}

// ---------------------------------------------------------------------------
// 1. Worked IQR fence example, exact to three decimals.
Verdict c1_iqr_fence() {
    const double fence = iqr_upper_fence(5.55, 16.64);
    const double dev = std::fabs(fence - 33.275);
    char buf[128];
    std::snprintf(buf, sizeof buf, "fence(5.55, 16.64) = %.6f, |dev| = %.2e", fence, dev);
    return {dev < 5e-4, buf};
}

// ---------------------------------------------------------------------------
// 2. Backpropagation vs central finite differences on random architectures.
Verdict c2_gradient_check() {
    CounterRng rng(1234, 0xACC2);
    double worst = 0.0;
    for (int arch = 0; arch < 3; ++arch) {
        std::vector<int> sizes = {static_cast<int>(kFeatureCount)};
        const std::size_t hidden_layers = 1 + rng.next_below(4);
        for (std::size_t l = 0; l < hidden_layers; ++l)
            sizes.push_back(1 + static_cast<int>(rng.next_below(32)));
        sizes.push_back(1);

        MlpModel m = make_mlp(sizes, 100 + arch);
        std::vector<FeatureVector> X(16);
        std::vector<double> y(16);
        for (auto& x : X)
            for (double& v : x) v = rng.uniform();
        for (double& v : y) v = rng.uniform();

        std::vector<std::size_t> idx(X.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        Gradients analytic = make_zero_gradients(m);
        backward(m, X, y, idx, analytic);
        Gradients fd = wez::oracle::fd_gradient(m, X, y, 1e-6);

        for (int probe = 0; probe < 20; ++probe) {
            const std::size_t l = rng.next_below(analytic.weights.size());
            const bool weight = rng.next_below(2) == 0;
            const auto& a_layer = weight ? analytic.weights[l] : analytic.biases[l];
            const auto& f_layer = weight ? fd.weights[l] : fd.biases[l];
            const std::size_t i = rng.next_below(a_layer.size());
            const double scale = std::max({std::fabs(a_layer[i]), std::fabs(f_layer[i]), 1e-8});
            worst = std::max(worst, std::fabs(a_layer[i] - f_layer[i]) / scale);
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "worst relative error %.2e over 3 architectures x 20 params",
                  worst);
    return {worst < 1e-4, buf};
}

// ---------------------------------------------------------------------------
// 3. Latin stratification at three sizes plus maximin monotonicity over
//    at least 1,000 accepted swaps.
Verdict c3_design() {
    for (std::size_t n : {10UL, 100UL, 1000UL}) {
        DesignSpec spec;
        spec.samples = n;
        spec.seed = 2000 + n;
        spec.maximin_iterations = 2000;
        Design d = lhs_sample(spec);
        for (std::size_t v = 0; v < kDesignDims; ++v) {
            std::set<std::size_t> strata;
            const VariableBounds& b = spec.bounds[v];
            for (const DesignRow& row : d.rows) {
                double t = (row[v] - b.min) / (b.max - b.min);
                strata.insert(std::min(static_cast<std::size_t>(t * n), n - 1));
            }
            if (strata.size() != n)
                return {false, "stratification violated at n=" + std::to_string(n)};
        }
    }

    std::size_t accepted_total = 0;
    bool monotone = true;
    for (std::uint64_t seed = 0; seed < 8 && accepted_total < 1000; ++seed) {
        CounterRng init(seed, 0x3333);
        std::vector<DesignRow> rows(300);
        for (auto& r : rows)
            for (double& x : r) x = init.uniform();
        double prev = min_pairwise_distance(rows);
        CounterRng rng(seed, kStreamMaximin);
        maximin_pass(rows, 150000, rng, [&](double dist) {
            if (dist <= prev) monotone = false;
            prev = dist;
            ++accepted_total;
        });
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "stratified at n=10/100/1000; %zu accepted swaps, monotone=%d",
                  accepted_total, monotone ? 1 : 0);
    return {monotone && accepted_total >= 1000, buf};
}

// ---------------------------------------------------------------------------
// 4. Range solver vs the exhaustive grid-scan oracle on 50 scenarios.
Verdict c4_solver_vs_oracle() {
    const std::vector<Scenario> cases = lhs_scenarios(50, 777);
    MissileConfig missile;
    RangeSolveOptions opt;

    std::vector<int> ok(cases.size(), 0);
    std::vector<wez::oracle::OracleReport> reports(cases.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < cases.size(); ++i) {
        auto solved = find_max_range(cases[i], missile, opt);
        auto scanned = wez::oracle::scan_max_range(cases[i], missile, 0.1, opt.r_upper_nm);
        const std::string id = "scenario_" + std::to_string(i);
        if (solved.has_value() != scanned.has_value()) {
            ok[i] = 0;
            reports[i] = wez::oracle::make_report(id, solved.value_or(-1), scanned.value_or(-1), 0.0);
        } else if (!solved) {
            ok[i] = 1;  // both agree: no launch range exists
            reports[i] = wez::oracle::make_report(id, 0.0, 0.0, 0.11);
        } else {
            reports[i] = wez::oracle::make_report(id, *solved, *scanned, 0.11);
            ok[i] = reports[i].pass ? 1 : 0;
        }
    }
    wez::oracle::write_reports_jsonl(reports,
                                     (artifacts_dir() / "solver_vs_oracle.jsonl").string());
    int agreed = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        agreed += ok[i];
        worst = std::max(worst, reports[i].abs_dev);
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%d/50 within 0.11 NM (worst |dev| %.3f NM), verdicts agree",
                  agreed, worst);
    return {agreed == 50, buf};
}

// ---------------------------------------------------------------------------
// 5. Desk-scale pipeline: design -> simulate -> filter -> train -> test gate.
Verdict c5_desk_pipeline(DeskState& desk) {
    DesignSpec dspec;
    dspec.samples = 5000;
    dspec.seed = kDesignSeed;
    Design design = lhs_sample(dspec);

    BatchReport report;
    Dataset raw = generate_dataset(design, MissileConfig{}, 0, &report);
    if (!report.failures.empty())
        return {false, std::to_string(report.failures.size()) + " simulation failures"};

    auto [clean, filt] = filter_dataset(raw, default_filter_rules());
    desk.clean = std::move(clean);

    SplitSpec sspec;
    sspec.seed = kTrainSeed;
    desk.splits = split_dataset(desk.clean.rows.size(), sspec);

    const TrainConfig cfg;  // the shipped defaults are the contract under test
    TrainResult result = train_with_splits(desk.clean, desk.splits, 0, cfg);
    desk.model = result.model;
    save_model(result.model, (artifacts_dir() / "desk_model.json").string());

    RegressionMetrics m = evaluate(result.model, rows_at(desk.clean, desk.splits.test));
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "%zu rows (%zu filtered), %zu no-range; test MAE %.3f NM (<= 1.5), R^2 %.4f (>= 0.95)",
                  raw.rows.size(), desk.clean.rows.size(), report.no_range_rows, m.mae,
                  m.r2.value_or(-1.0));
    return {m.mae <= 1.5 && m.r2.value_or(-1.0) >= 0.95, buf};
}

// ---------------------------------------------------------------------------
// 6. Five-fold cross-validation stability on the same filtered dataset.
Verdict c6_cv_stability(const DeskState& desk) {
    if (desk.clean.rows.empty()) return {false, "desk dataset unavailable"};
    SplitSpec sspec;
    sspec.seed = kTrainSeed;
    const TrainConfig cfg;  // same shipped defaults as criterion 5
    CrossValidation cv = cross_validate(desk.clean, sspec, cfg);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "5-fold MAE %.3f +- %.3f NM (std <= 0.15), R^2 %.4f +- %.4f (std <= 0.02)",
                  cv.mean.mae, cv.std_dev.mae, cv.mean.r2.value_or(-1),
                  cv.std_dev.r2.value_or(9));
    return {cv.std_dev.mae <= 0.15 && cv.std_dev.r2.value_or(9) <= 0.02, buf};
}

// ---------------------------------------------------------------------------
// 7. Off-boresight sweep: 241 points, bounded adjacent jumps, valid SVG.

// Structural validation against the SVG 1.1 document model: correct
// prolog and DOCTYPE, balanced tags, quoted attributes, and only
// elements/attributes from the DTD subset this renderer emits.
bool validate_svg(const std::string& text, std::string& why) {
    if (text.rfind("<?xml version=\"1.0\" encoding=\"UTF-8\"?>", 0) != 0) {
        why = "missing XML prolog";
        return false;
    }
    if (text.find("<!DOCTYPE svg PUBLIC \"-//W3C//DTD SVG 1.1//EN\" "
                  "\"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd\">") ==
        std::string::npos) {
        why = "missing or wrong SVG 1.1 DOCTYPE";
        return false;
    }
    static const std::set<std::string> allowed_elements = {
        "svg", "g", "rect", "line", "path", "circle", "text"};
    static const std::set<std::string> allowed_attrs = {
        "xmlns", "version", "width", "height", "viewBox", "x", "y", "x1", "y1",
        "x2", "y2", "cx", "cy", "r", "d", "fill", "stroke", "stroke-width",
        "stroke-dasharray", "fill-opacity", "stroke-opacity", "font-family",
        "font-size", "text-anchor", "transform", "id"};

    std::vector<std::string> stack;
    std::size_t pos = 0;
    bool seen_root = false;
    while ((pos = text.find('<', pos)) != std::string::npos) {
        if (text.compare(pos, 4, "<!--") == 0) {
            pos = text.find("-->", pos);
            if (pos == std::string::npos) {
                why = "unterminated comment";
                return false;
            }
            continue;
        }
        if (text.compare(pos, 2, "<?") == 0 || text.compare(pos, 2, "<!") == 0) {
            pos = text.find('>', pos);
            if (pos == std::string::npos) {
                why = "unterminated declaration";
                return false;
            }
            continue;
        }
        std::size_t end = text.find('>', pos);
        if (end == std::string::npos) {
            why = "unterminated tag";
            return false;
        }
        std::string tag = text.substr(pos + 1, end - pos - 1);
        pos = end + 1;
        const bool closing = !tag.empty() && tag[0] == '/';
        bool self_closing = !tag.empty() && tag.back() == '/';
        if (closing) tag = tag.substr(1);
        if (self_closing) tag.pop_back();

        std::stringstream ss(tag);
        std::string name;
        ss >> name;
        if (!allowed_elements.count(name)) {
            why = "element <" + name + "> is outside the SVG 1.1 subset";
            return false;
        }
        if (closing) {
            if (stack.empty() || stack.back() != name) {
                why = "mismatched </" + name + ">";
                return false;
            }
            stack.pop_back();
            continue;
        }
        // attributes: name="value" pairs, all values quoted
        std::string rest;
        std::getline(ss, rest);
        std::size_t a = 0;
        while (a < rest.size()) {
            while (a < rest.size() && std::isspace(static_cast<unsigned char>(rest[a]))) ++a;
            if (a >= rest.size()) break;
            std::size_t eq = rest.find('=', a);
            if (eq == std::string::npos) {
                why = "bare attribute in <" + name + ">";
                return false;
            }
            std::string attr = rest.substr(a, eq - a);
            attr.erase(attr.find_last_not_of(" \t") + 1);
            if (!allowed_attrs.count(attr)) {
                why = "attribute '" + attr + "' on <" + name + "> is outside the subset";
                return false;
            }
            std::size_t q1 = rest.find('"', eq);
            if (q1 == std::string::npos) {
                why = "unquoted attribute value in <" + name + ">";
                return false;
            }
            std::size_t q2 = rest.find('"', q1 + 1);
            if (q2 == std::string::npos) {
                why = "unterminated attribute value in <" + name + ">";
                return false;
            }
            a = q2 + 1;
        }
        if (name == "svg") {
            if (seen_root && stack.empty()) {
                why = "multiple roots";
                return false;
            }
            seen_root = true;
            if (tag.find("xmlns=\"http://www.w3.org/2000/svg\"") == std::string::npos ||
                tag.find("version=\"1.1\"") == std::string::npos) {
                why = "svg root lacks SVG 1.1 namespace/version";
                return false;
            }
        }
        if (!self_closing) stack.push_back(name);
    }
    if (!seen_root) {
        why = "no <svg> root";
        return false;
    }
    if (!stack.empty()) {
        why = "unclosed <" + stack.back() + ">";
        return false;
    }
    return true;
}

Verdict c7_sweep(const DeskState& desk) {
    if (!desk.model) return {false, "desk model unavailable"};
    if (desk.splits.test.empty()) return {false, "desk splits unavailable"};
    // Base scenario: the first sample of the held-out test group.
    const Scenario base = desk.clean.rows[desk.splits.test.front()].scenario;
    SweepResult sweep = run_sweep(*desk.model, base);
    if (sweep.points.size() != 241)
        return {false, std::to_string(sweep.points.size()) + " points, expected 241"};
    double worst_jump = 0.0;
    for (std::size_t i = 1; i < sweep.points.size(); ++i)
        worst_jump = std::max(worst_jump, std::fabs(sweep.points[i].max_range_nm -
                                                    sweep.points[i - 1].max_range_nm));
    const fs::path csv = artifacts_dir() / "sweep.csv";
    const fs::path svg = artifacts_dir() / "sweep.svg";
    write_sweep_csv(sweep, csv.string());
    write_wez_svg(sweep, svg.string());
    std::string why;
    const bool svg_ok = validate_svg(slurp(svg), why);
    char buf[160];
    std::snprintf(buf, sizeof buf, "241 points, worst adjacent jump %.3f NM (<= 1.0), SVG %s",
                  worst_jump, svg_ok ? "valid" : why.c_str());
    return {worst_jump <= 1.0 && svg_ok, buf};
}

// ---------------------------------------------------------------------------
// 8. Physical invariants: mass, speed, lateral limit, NEZ containment.
Verdict c8_physics(std::string& fail_detail) {
    MissileConfig m;

    // (a) mass and post-burnout speed on a level straight fly-out
    {
        Scenario tail;
        tail.alt_sht = 20000;
        tail.vel_sht = 500;
        tail.alt_tgt = 20000;
        tail.vel_tgt = 500;
        tail.hdg_tgt = 0;
        tail.rgt_tgt = 0;
        FlightTrace tr = simulate_flight(tail, 8.0, m, TargetPolicy::non_maneuvering());
        const double burnout = m.boost_duration + m.sustain_duration;
        if (tr.states.back().time <= burnout + 5.0)
            return {false, "level fly-out ended before burnout + 5 s"};
        const double boost_rate = m.propellant_mass_boost / m.boost_duration;
        double prev_mass = m.launch_mass + 1, prev_speed = 0;
        for (const MissileState& st : tr.states) {
            if (st.mass > prev_mass + 1e-12) return {false, "mass increased along the trace"};
            if (st.time < m.boost_duration - 1e-9 &&
                std::fabs(st.mass - (m.launch_mass - boost_rate * st.time)) > 1e-6)
                return {false, "boost mass decay is not linear"};
            if (st.time > burnout + 1e-9 && st.speed >= prev_speed)
                return {false, "post-burnout speed failed to decrease"};
            prev_mass = st.mass;
            prev_speed = st.speed;
        }
    }

    // (b) lateral acceleration inside the structural limit on hard turns
    for (const Scenario& s : lhs_scenarios(6, 999)) {
        FlightTrace tr = simulate_flight(s, 7.0, m, TargetPolicy::evasive(0.0));
        for (const MissileState& st : tr.states) {
            const Vec3 u = {std::cos(st.flight_path_angle) * std::cos(st.heading),
                            std::cos(st.flight_path_angle) * std::sin(st.heading),
                            -std::sin(st.flight_path_angle)};
            const Vec3 f = {st.acceleration.x, st.acceleration.y,
                            st.acceleration.z - kGravity};
            const double along = f.x * u.x + f.y * u.y + f.z * u.z;
            const Vec3 lift = {f.x - along * u.x, f.y - along * u.y, f.z - along * u.z};
            const double lateral = std::sqrt(lift.x * lift.x + lift.y * lift.y + lift.z * lift.z);
            if (lateral > m.max_lateral_accel * kGravity + 1e-6) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "lateral %.2f g exceeds the %.0f g limit",
                              lateral / kGravity, m.max_lateral_accel);
                return {false, buf};
            }
        }
    }

    // (c) the no-escape range never exceeds the maximum range (50 scenarios)
    const std::vector<Scenario> cases = lhs_scenarios(50, 888);
    std::vector<int> ok(cases.size(), 1);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < cases.size(); ++i) {
        auto max_r = find_max_range(cases[i], m);
        auto nez = find_nez_range(cases[i], m, 0.0);
        if (!max_r && nez) ok[i] = 0;  // evasion cannot create a hit set
        if (max_r && nez && *nez > *max_r + 0.01 + 1e-9) ok[i] = 0;
    }
    int pass_count = 0;
    for (int v : ok) pass_count += v;
    if (pass_count != 50) {
        fail_detail = std::to_string(50 - pass_count) + " scenarios with NEZ > max range";
        return {false, fail_detail};
    }
    return {true, "mass/boost/speed invariants hold; lateral <= limit; NEZ <= max on 50/50"};
}

// ---------------------------------------------------------------------------
// 9. Byte-identical reruns: design, simulate (any jobs), train, sweep.
Verdict c9_determinism(const DeskState& desk) {
    // design
    DesignSpec dspec;
    dspec.samples = 200;
    dspec.seed = 4242;
    dspec.maximin_iterations = 10000;
    const fs::path da = artifacts_dir() / "det_design_a.csv";
    const fs::path db = artifacts_dir() / "det_design_b.csv";
    write_design_csv(lhs_sample(dspec), da.string());
    write_design_csv(lhs_sample(dspec), db.string());
    if (slurp(da) != slurp(db)) return {false, "design reruns differ"};

    // simulate across job counts
    DesignSpec small;
    small.samples = 12;
    small.seed = 515;
    small.maximin_iterations = 500;
    Design sim_design = lhs_sample(small);
    const fs::path s1 = artifacts_dir() / "det_sim_jobs1.csv";
    const fs::path s3 = artifacts_dir() / "det_sim_jobs3.csv";
    write_dataset_csv(generate_dataset(sim_design, MissileConfig{}, 1), s1.string());
    write_dataset_csv(generate_dataset(sim_design, MissileConfig{}, 3), s3.string());
    if (slurp(s1) != slurp(s3)) return {false, "simulate output depends on job count"};

    // train (compact config: the determinism contract, not the metric gate)
    CounterRng rng(31337, 0xDE7);
    std::vector<Sample> rows;
    for (int i = 0; i < 220; ++i) {
        Scenario s;
        s.alt_sht = 1000 + 44000 * rng.uniform();
        s.vel_sht = 400 + 200 * rng.uniform();
        s.pit_sht = -45 + 90 * rng.uniform();
        s.alt_tgt = 1000 + 44000 * rng.uniform();
        s.vel_tgt = 400 + 200 * rng.uniform();
        s.hdg_tgt = -180 + 360 * rng.uniform();
        s.rgt_tgt = -60 + 120 * rng.uniform();
        rows.push_back({s, 5.0 + 40.0 * rng.uniform()});
    }
    std::vector<Sample> val(rows.begin() + 180, rows.end());
    rows.resize(180);
    TrainConfig cfg;
    cfg.hidden = {16, 16, 12, 12, 8, 8, 8, 8, 8, 4};
    cfg.max_epochs = 30;
    cfg.patience = 30;
    cfg.batch_size = 8;
    cfg.seed = 99;
    const std::string ma = model_json(train_model(rows, val, cfg).model);
    const std::string mb = model_json(train_model(rows, val, cfg).model);
    if (ma != mb) return {false, "training reruns differ"};

    // sweep from the desk model (or the compact model when unavailable)
    MlpModel sweep_model =
        desk.model ? *desk.model : train_model(rows, val, cfg).model;
    Scenario base;
    base.alt_sht = 25000;
    base.vel_sht = 500;
    base.alt_tgt = 25000;
    base.vel_tgt = 450;
    base.hdg_tgt = 180;
    const fs::path wa = artifacts_dir() / "det_sweep_a.csv";
    const fs::path wb = artifacts_dir() / "det_sweep_b.csv";
    write_sweep_csv(run_sweep(sweep_model, base), wa.string());
    write_sweep_csv(run_sweep(sweep_model, base), wb.string());
    if (slurp(wa) != slurp(wb)) return {false, "sweep reruns differ"};

    return {true, "design, simulate (jobs 1 vs 3), train, and sweep are byte-identical"};
}

// ---------------------------------------------------------------------------
// 10. Metric identities on random prediction vectors.
Verdict c10_metric_identities() {
    CounterRng rng(5150, 0x3E7);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + rng.next_below(49);
        std::vector<double> y(n), yhat(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = 60.0 * rng.uniform();
            yhat[i] = y[i] + 4.0 * (rng.uniform() - 0.5);
        }
        RegressionMetrics m = compute_metrics(y, yhat);
        if (std::fabs(m.rmse * m.rmse - m.mse) > 1e-12 * std::max(m.mse, 1e-300))
            return {false, "rmse^2 != mse at trial " + std::to_string(trial)};
        if (m.rmse < m.mae - 1e-15)
            return {false, "rmse < mae at trial " + std::to_string(trial)};

        RegressionMetrics perfect = compute_metrics(y, y);
        if (!perfect.r2 || *perfect.r2 != 1.0)
            return {false, "perfect prediction R^2 != 1 at trial " + std::to_string(trial)};

        double mean = 0.0;
        for (double v : y) mean += v;
        mean /= static_cast<double>(n);
        const bool constant = std::all_of(y.begin(), y.end(),
                                          [&](double v) { return v == y.front(); });
        if (!constant) {
            RegressionMetrics mean_pred = compute_metrics(y, std::vector<double>(n, mean));
            if (!mean_pred.r2 || std::fabs(*mean_pred.r2) > 1e-12)
                return {false, "mean prediction |R^2| > 1e-12 at trial " + std::to_string(trial)};
        }
    }
    return {true, "rmse^2 = mse, rmse >= mae, R^2(perfect) = 1, |R^2(mean)| <= 1e-12 on 1000 vectors"};
}

}  // namespace

// Runs every criterion by default; pass criterion numbers as arguments to
// run a subset (dependent criteria report FAIL when their producer is
// excluded: 6, 7, and 9 reuse criterion 5's dataset and model).
int main(int argc, char** argv) {
    struct Entry {
        int id;
        const char* label;
        Verdict verdict;
        double seconds;
    };
    std::vector<Entry> results;
    DeskState desk;
    std::string c8_detail;

    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

    auto run = [&](int id, const char* label, auto&& fn) {
        if (!only.empty() && !only.count(id)) return;
        auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = fn();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = elapsed_s(t0);
        results.push_back({id, label, v, secs});
        std::printf("[%s] %2d. %-34s %s  (%.1f s)\n", v.pass ? "PASS" : "FAIL", id, label,
                    v.detail.c_str(), secs);
        std::fflush(stdout);
    };

    std::printf("artifacts: %s\n", artifacts_dir().string().c_str());
    run(1, "IQR fence worked example", c1_iqr_fence);
    run(2, "gradient vs finite differences", c2_gradient_check);
    run(3, "LHS stratification + maximin", c3_design);
    run(10, "metric identities", c10_metric_identities);
    run(8, "physical invariants", [&] { return c8_physics(c8_detail); });
    run(4, "range solver vs scan oracle", c4_solver_vs_oracle);
    run(5, "desk-scale pipeline metric gate", [&] { return c5_desk_pipeline(desk); });
    run(6, "cross-validation stability", [&] { return c6_cv_stability(desk); });
    run(7, "off-boresight sweep contract", [&] { return c7_sweep(desk); });
    run(9, "byte-identical reruns", [&] { return c9_determinism(desk); });

    int failures = 0;
    for (const Entry& e : results)
        if (!e.verdict.pass) ++failures;
    std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures,
                results.size());
    return failures == 0 ? 0 : 1;
}
