#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <wez/errors.hpp>
#include <wez/preprocess.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

using namespace wez;

namespace {

Scenario mid_scenario() {
    Scenario s;
    s.alt_sht = 20000;
    s.vel_sht = 500;
    s.pit_sht = 0;
    s.alt_tgt = 20000;
    s.vel_tgt = 500;
    s.hdg_tgt = 0;
    s.rgt_tgt = 0;
    return s;
}

}  // namespace

TEST_CASE("cyclical encoding at the cardinal angles") {
    Scenario s = mid_scenario();

    s.hdg_tgt = 0.0;
    FeatureVector f = encode_features(s);
    CHECK(f[5] == doctest::Approx(0.0).epsilon(1e-15));  // sin_hdg
    CHECK(f[6] == doctest::Approx(1.0));                 // cos_hdg

    s.hdg_tgt = 90.0;
    f = encode_features(s);
    CHECK(f[5] == doctest::Approx(1.0));
    CHECK(f[6] == doctest::Approx(0.0).epsilon(1e-12));

    // The seam: -180 and +180 are the same physical heading and must
    // produce (nearly) identical features.
    s.hdg_tgt = 180.0;
    FeatureVector plus = encode_features(s);
    s.hdg_tgt = -180.0;
    FeatureVector minus = encode_features(s);
    CHECK(plus[5] == doctest::Approx(minus[5]).epsilon(1e-12));
    CHECK(plus[6] == doctest::Approx(minus[6]).epsilon(1e-12));
    CHECK(plus[6] == doctest::Approx(-1.0));
}

TEST_CASE("encoded angle pairs stay on the unit circle") {
    for (double hdg : {-179.5, -90.0, -31.4, 0.0, 45.0, 133.7, 180.0}) {
        for (double rgt : {-60.0, -12.5, 0.0, 7.25, 60.0}) {
            Scenario s = mid_scenario();
            s.hdg_tgt = hdg;
            s.rgt_tgt = rgt;
            FeatureVector f = encode_features(s);
            CHECK(f[5] * f[5] + f[6] * f[6] == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(f[7] * f[7] + f[8] * f[8] == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("non-finite scenario fields are rejected at encoding") {
    Scenario s = mid_scenario();
    s.vel_tgt = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(encode_features(s), NonFinite);
    s = mid_scenario();
    s.alt_sht = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(encode_features(s), NonFinite);
}

TEST_CASE("min-max scaling maps the fitted range onto [0, 1]") {
    // Feature 1 spans [400, 600]; a value of 500 must scale to 0.5.
    std::vector<FeatureVector> feats;
    for (double v : {400.0, 600.0, 450.0}) {
        FeatureVector f{};
        for (std::size_t i = 0; i < kFeatureCount; ++i) f[i] = static_cast<double>(i);
        f[1] = v;
        feats.push_back(f);
    }
    std::vector<double> targets = {10.0, 20.0, 30.0};
    ScalerParams p = fit_scaler(feats, targets);
    CHECK(p.feature_min[1] == 400.0);
    CHECK(p.feature_max[1] == 600.0);

    FeatureVector probe = feats[0];
    probe[1] = 500.0;
    CHECK(transform_features(p, probe)[1] == doctest::Approx(0.5));
    probe[1] = 400.0;
    CHECK(transform_features(p, probe)[1] == doctest::Approx(0.0));
    probe[1] = 600.0;
    CHECK(transform_features(p, probe)[1] == doctest::Approx(1.0));

    // No clamping: out-of-range inputs map outside [0, 1].
    probe[1] = 700.0;
    CHECK(transform_features(p, probe)[1] == doctest::Approx(1.5));

    CHECK(transform_target(p, 10.0) == doctest::Approx(0.0));
    CHECK(transform_target(p, 30.0) == doctest::Approx(1.0));
    CHECK(transform_target(p, 20.0) == doctest::Approx(0.5));
}

TEST_CASE("target scaling round-trips") {
    std::vector<FeatureVector> feats(4);
    for (std::size_t i = 0; i < feats.size(); ++i)
        for (std::size_t j = 0; j < kFeatureCount; ++j)
            feats[i][j] = static_cast<double>(i * 13 + j * 7 % 5);
    std::vector<double> targets = {1.5, 59.2, 7.75, 33.0};
    ScalerParams p = fit_scaler(feats, targets);
    for (double t : {1.5, 59.2, 12.34, 45.0})
        CHECK(inverse_target(p, transform_target(p, t)) == doctest::Approx(t).epsilon(1e-12));
}

TEST_CASE("degenerate feature ranges are recorded and transform to zero") {
    std::vector<FeatureVector> feats(3);
    for (auto& f : feats) {
        for (std::size_t j = 0; j < kFeatureCount; ++j) f[j] = static_cast<double>(j);
        f[3] = 42.0;  // constant column
    }
    feats[0][0] = 5.0;
    feats[1][0] = 6.0;  // make feature 0 vary
    std::vector<double> targets = {1.0, 2.0, 3.0};
    ScalerParams p = fit_scaler(feats, targets);
    REQUIRE(std::count(p.degenerate_features.begin(), p.degenerate_features.end(), 3U) == 1);
    FeatureVector probe = feats[0];
    probe[3] = 99.0;  // even off-range values collapse to 0 for a dead feature
    CHECK(transform_features(p, probe)[3] == 0.0);
}

TEST_CASE("fit_scaler rejects empty and mismatched inputs") {
    CHECK_THROWS_AS(fit_scaler({}, {}), ShapeMismatch);
    std::vector<FeatureVector> feats(2);
    std::vector<double> targets = {1.0};
    CHECK_THROWS_AS(fit_scaler(feats, targets), ShapeMismatch);
}

TEST_CASE("split sizes: 10 rows, 5 folds") {
    SplitSpec spec;  // 0.2 test, k = 5
    spec.seed = 404;
    Splits s = split_dataset(10, spec);
    CHECK(s.test.size() == 2);
    REQUIRE(s.folds.size() == 5);
    std::vector<std::size_t> fold_sizes;
    for (const auto& f : s.folds) fold_sizes.push_back(f.size());
    CHECK(fold_sizes == std::vector<std::size_t>{2, 2, 2, 1, 1});
}

TEST_CASE("split partitions: disjoint, exhaustive, in-range") {
    SplitSpec spec;
    spec.seed = 8;
    const std::size_t n = 103;
    Splits s = split_dataset(n, spec);
    std::set<std::size_t> seen(s.test.begin(), s.test.end());
    CHECK(seen.size() == s.test.size());
    for (const auto& fold : s.folds)
        for (std::size_t idx : fold) {
            CHECK(idx < n);
            CHECK(seen.insert(idx).second);  // nothing appears twice
        }
    CHECK(seen.size() == n);

    // train_for_fold excludes exactly test + that fold.
    std::vector<std::size_t> train1 = s.train_for_fold(1);
    CHECK(train1.size() == n - s.test.size() - s.folds[1].size());
    std::set<std::size_t> t1(train1.begin(), train1.end());
    for (std::size_t idx : s.folds[1]) CHECK(t1.count(idx) == 0);
    for (std::size_t idx : s.test) CHECK(t1.count(idx) == 0);

    CHECK(s.train_all().size() == n - s.test.size());
}

TEST_CASE("splits are deterministic in the seed and sensitive to it") {
    SplitSpec spec;
    spec.seed = 77;
    Splits a = split_dataset(50, spec);
    Splits b = split_dataset(50, spec);
    CHECK(a.test == b.test);
    CHECK(a.folds == b.folds);

    spec.seed = 78;
    Splits c = split_dataset(50, spec);
    CHECK(a.test != c.test);
}

TEST_CASE("split rejects impossible configurations") {
    SplitSpec spec;
    CHECK_THROWS_AS(split_dataset(5, spec), TooFewRows);  // needs k + 1 = 6
    CHECK_NOTHROW(split_dataset(6, spec));

    spec.k = 0;
    CHECK_THROWS_AS(split_dataset(100, spec), ConfigError);
    spec.k = 5;
    spec.test_fraction = 1.0;
    CHECK_THROWS_AS(split_dataset(100, spec), ConfigError);
    spec.test_fraction = -0.1;
    CHECK_THROWS_AS(split_dataset(100, spec), ConfigError);
}
