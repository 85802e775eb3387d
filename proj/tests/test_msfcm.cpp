#include "affcm/engine.hpp"
#include "support/random_suite.hpp"
#include "support/tables.hpp"

#include <doctest.h>

using namespace affcm;
using suite::column_table;
using suite::mat;
using suite::vec;

TEST_CASE("global_bound: zero displacement with distinct distances keeps every sample") {
    const auto x = mat({{0, 0}, {1, 3}, {5, 1}, {9, 9}});
    const auto table = compute_distances(x, mat({{0.5, 0.1}, {6, 2}, {8, 8.5}}));
    CHECK(global_bound_filter(table, vec({0, 0, 0})).all());
}

TEST_CASE("global_bound: bound fails when the gap is smaller than the displacements") {
    const auto q = global_bound_filter(column_table({1, 1.15, 10}), vec({0.1, 0.1, 0.1}));
    CHECK_FALSE(q(0));
}

TEST_CASE("global_bound: huge displacements filter nothing") {
    const auto x = mat({{0, 0}, {1, 3}, {5, 1}, {9, 9}});
    const auto table = compute_distances(x, mat({{0.5, 0.1}, {6, 2}, {8, 8.5}}));
    CHECK_FALSE(global_bound_filter(table, vec({1e6, 1e6, 1e6})).any());
}

TEST_CASE("msfcm: nearest target M_j") {
    CHECK(nearest_membership_target(column_table({1, 1.5, 2}), 0, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(nearest_membership_target(column_table({3, 3, 3}), 0, 2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(nearest_membership_target(column_table({0, 0}), 0, 2.0) == doctest::Approx(0.5));
}

TEST_CASE("msfcm: M_j lies in (1/c, 1] on random columns") {
    Rng rng(3);
    for (int k = 0; k < 1000; ++k) {
        const Index c = 2 + static_cast<Index>(rng.uniform_index(5));
        DistanceTable<double> t;
        t.dist.resize(c, 1);
        for (Index i = 0; i < c; ++i) t.dist(i, 0) = 0.1 + 5 * rng.uniform();
        Index best = 0;
        t.dist.col(0).minCoeff(&best);
        t.nearest = IndexVector::Constant(1, static_cast<int>(best));
        const double target = nearest_membership_target(t, 0, 2.0);
        CHECK(target > 1.0 / static_cast<double>(c));
        CHECK(target <= 1.0);
    }
}

TEST_CASE("msfcm: scaling with beta = 0.5") {
    // D1 / Dc = 1 / (2 sqrt 2) gives M_j = 1 / (1 + 2 / 8) = 0.8.
    const auto table = column_table({1, 1.5, 2 * std::sqrt(2.0)});
    const MembershipMatrix<double> u(mat({{0.6}, {0.3}, {0.1}}));
    SampleMask q(1);
    q << true;
    const auto s = msfcm_scale(u, table, q, 2.0);
    CHECK(s(0, 0) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(s(1, 0) == doctest::Approx(0.15).epsilon(1e-14));
    CHECK(s(2, 0) == doctest::Approx(0.05).epsilon(1e-14));
    CHECK(s.grades().sum() == doctest::Approx(1.0).epsilon(1e-15));

    q << false;
    CHECK(msfcm_scale(u, table, q, 2.0).grades() == u.grades());
}

TEST_CASE("msfcm: an already hard column is left alone") {
    const auto table = column_table({0, 1.5, 2});
    const MembershipMatrix<double> u(mat({{1}, {0}, {0}}));
    SampleMask q(1);
    q << true;
    CHECK(msfcm_scale(u, table, q, 2.0).grades() == u.grades());
}

TEST_CASE("msfcm: a converged start gives the formula-scaled FCM update") {
    const auto inst = suite::make_instance(21);
    RunConfig cfg;
    cfg.clusters = inst.clusters;
    cfg.epsilon = 1e-13;
    cfg.max_iter = 10000;
    const auto fcm = run_fcm(inst.data, cfg);
    REQUIRE(fcm.converged);

    // From a fixed point every displacement is (numerically) zero, so Q is every sample.
    EngineOptions<double> opts;
    bool checked = false;
    opts.displacement_hook = [](Vector<double>& d) { d.setZero(); };
    opts.observer = [&](const IterationView<double>& view) {
        if (checked) return;
        checked = true;
        REQUIRE(view.global_bound);
        SampleMask all = SampleMask::Constant(view.memberships.samples(), true);
        auto strict = view.distances;
        bool distinct = true;
        for (Index j = 0; j < strict.samples(); ++j) {
            if (second_nearest_distance(strict, j) == strict.nearest_distance(j)) distinct = false;
        }
        if (distinct) CHECK(view.global_bound->all());
        const auto expected = msfcm_scale(view.memberships, view.distances, all, 2.0);
        CHECK(view.scaled.grades().isApprox(expected.grades(), 1e-14));
    };
    cfg.max_iter = 1;
    run_msfcm(inst.data, cfg, CentroidSet<double>(fcm.centers), opts);
    CHECK(checked);
}

TEST_CASE("msfcm: scaled columns stay stochastic and the nearest-grade monitor runs") {
    Index decreasing = 0, filtered = 0;
    for (std::uint64_t k = 0; k < 300; ++k) {
        const auto inst = suite::make_instance(k);
        RunConfig cfg;
        cfg.clusters = inst.clusters;
        cfg.seed = k;
        EngineOptions<double> opts;
        opts.observer = [&](const IterationView<double>& view) {
            CHECK(((view.scaled.grades().colwise().sum().array() - 1.0).abs() <= 1e-12).all());
            decreasing += msfcm_decreasing_columns(view.memberships, view.distances, *view.global_bound, 2.0);
            filtered += view.global_bound->count();
        };
        run_msfcm(inst.data, cfg, std::nullopt, opts);
    }
    MESSAGE("filtered columns: " << filtered << ", nearest grade decreased: " << decreasing);
    CHECK(filtered > 0);
}
