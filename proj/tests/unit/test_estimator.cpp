#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "otcnet/core/error.hpp"
#include "otcnet/equilibrium/synthetic.hpp"
#include "otcnet/estimator/customer_values.hpp"
#include "otcnet/estimator/forward.hpp"
#include "otcnet/estimator/model_io.hpp"
#include "otcnet/estimator/train.hpp"
#include "support.hpp"

using namespace otcnet;

namespace {

ModelParams zeros() { return ModelParams::constant(1, 1, 1, 0.0); }

SyntheticMarket small_market(std::uint64_t seed, double sigma = 0.1) {
    GenConfig c;
    c.seed = seed;
    c.noise.sigma_c = sigma;
    c.noise.sigma_pi = sigma;
    return generate_market(c);
}

}  // namespace

TEST_CASE("forward pass on the two-dealer instance") {
    const auto g = otcnet::testing::two_dealer_graph();
    const auto one = forward(g, zeros(), 1);
    CHECK(one.v_layers.size() == 2);
    CHECK(one.v_layers[0] == std::vector{9.0, 19.0});
    CHECK(one.pred_best[0] == 14.0);
    CHECK(one.pred_best[1] == 14.0);

    const auto many = forward(g, zeros(), 200);
    CHECK(many.pred_best[0] == doctest::Approx(18.0).epsilon(1e-12));
    CHECK_THROWS_AS(forward(g, zeros(), 0), ConfigError);
}

TEST_CASE("loss values") {
    const auto g = otcnet::testing::two_dealer_graph();
    const auto trace = forward(g, zeros(), 1);
    const std::vector<Observation> obs{{0, 16.0, 1.0}, {1, 14.0, 1.0}};
    CHECK(weighted_mse(trace, obs) == 2.0);
    const ModelParams p{{1.0}, {1.0}, {1.0}};
    CHECK(loss(trace, obs, p, 0.5) == doctest::Approx(2.0 + 0.5 * 3.0));
    // Weight 3 on the first observation: (3 * 4 + 0) / 4.
    CHECK(weighted_mse(trace, {{0, 16.0, 3.0}, {1, 14.0, 1.0}}) == 3.0);
    CHECK_THROWS_AS(loss(trace, {}, p, 0.0), DataError);
    CHECK_THROWS_AS(loss(trace, {{0, 16.0, 0.0}}, p, 0.0), DataError);
}

TEST_CASE("observations require a seller with buyers") {
    using otcnet::testing::make_graph;
    const auto g = make_graph({2, 1, 1}, {{0, 1, 0, 0}}, {0.0}, {0, 0}, {0}, {10, 20});
    CHECK(make_observations(g, {{{0, 1, 0, 0}, 15.0}}).front().node == 0);
    CHECK_THROWS_AS(make_observations(g, {{{1, 0, 0, 0}, 15.0}}), DataError);
}

TEST_CASE("regularizer gradient alone when features are zero") {
    // Zero features make every latent independent of theta, so only the
    // penalty contributes.
    const auto g = otcnet::testing::two_dealer_graph();
    const ModelParams p{{0.3}, {-0.2}, {0.5}};
    const auto trace = forward(g, p, 3);
    const auto grad = backward(trace, g, {{0, 20.0, 1.0}}, p, 0.25).flatten();
    CHECK(grad[0] == doctest::Approx(0.15).epsilon(1e-14));
    CHECK(grad[1] == doctest::Approx(-0.10).epsilon(1e-14));
    CHECK(grad[2] == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("reverse pass agrees with central differences") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> theta(0.5, 1.5);
    int checked = 0;
    for (int inst = 0; inst < 8; ++inst) {
        const auto m = small_market(100 + inst);
        const auto obs = make_observations(m.graph, m.observed);
        const ModelParams p{{theta(rng)}, {theta(rng)}, {theta(rng)}};
        const double lambda = 0.01;
        const auto grad = backward(forward(m.graph, p, 10), m.graph, obs, p, lambda).flatten();
        const auto flat = p.flatten();
        for (std::size_t i = 0; i < flat.size(); ++i) {
            const double h = 1e-5;
            auto up = flat, down = flat;
            up[i] += h;
            down[i] -= h;
            const auto pu = ModelParams::unflatten(up, 1, 1, 1), pd = ModelParams::unflatten(down, 1, 1, 1);
            const double fd = (loss(forward(m.graph, pu, 10), obs, pu, lambda) -
                               loss(forward(m.graph, pd, 10), obs, pd, lambda)) / (2 * h);
            CAPTURE(inst);
            CAPTURE(i);
            CHECK(std::fabs(fd - grad[i]) <= 1e-4 * std::max(1.0, std::fabs(fd)));
            ++checked;
        }
    }
    CHECK(checked == 24);
}

TEST_CASE("optimizer steps") {
    TrainConfig gd;
    gd.optimizer = OptimizerKind::GradientDescent;
    gd.lr = 0.01;
    OptimizerState s;
    const auto p = ModelParams::constant(1, 1, 1, 1.0);
    const auto next = step(p, {{0.5}, {0.5}, {0.5}}, s, gd);
    CHECK(next.beta_x[0] == doctest::Approx(0.995).epsilon(1e-15));

    TrainConfig adam;
    OptimizerState a;
    const auto first = step(p, {{0.5}, {-3.0}, {1e-3}}, a, adam);
    CHECK(first.beta_x[0] == doctest::Approx(0.99).epsilon(1e-9));
    CHECK(first.beta_y[0] == doctest::Approx(1.01).epsilon(1e-9));
    CHECK(first.eta[0] == doctest::Approx(0.99).epsilon(1e-6));
    CHECK(a.t == 1);
    CHECK_THROWS_AS(step(p, {{0.5}, {0.5}, {}}, a, adam), ConfigError);
}

TEST_CASE("training config validation") {
    TrainConfig c;
    c.lr = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.epochs = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.lambda = -1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("true parameters reproduce noise-free prices") {
    const auto m = small_market(9, 0.0);
    const auto obs = make_observations(m.graph, m.observed);
    REQUIRE(!obs.empty());
    const auto trace = forward(m.graph, m.config.truth, kGenerationRounds);
    CHECK(weighted_mse(trace, obs) < 1e-20);
}

TEST_CASE("training reduces the loss and settles") {
    const auto m = small_market(21);
    const auto obs = make_observations(m.graph, m.observed);
    TrainConfig c;
    c.seed = 5;
    const auto fit = train(m.graph, obs, c);
    REQUIRE(fit.loss_trajectory.size() == 300);
    CHECK(fit.epochs_run == 300);
    CHECK(fit.loss_trajectory.back() <= fit.loss_trajectory.front());
    const double l200 = fit.loss_trajectory[199], l300 = fit.loss_trajectory[299];
    CHECK(std::fabs(l300 - l200) <= 0.05 * l200);
    for (double v : fit.params.flatten()) CHECK(std::fabs(v - 1.0) < 0.3);

    const auto again = train(m.graph, obs, c);
    CHECK(again.params == fit.params);

    const auto lat = predict_latents(m.graph, fit.params);
    CHECK(lat.v.size() == m.graph.num_nodes());
    for (double pi : lat.pi) CHECK((pi > 0.0 && pi < 1.0));
    for (double cost : lat.c) CHECK(cost > 0.0);
}

TEST_CASE("training surfaces divergence") {
    const auto m = small_market(21);
    const auto obs = make_observations(m.graph, m.observed);
    TrainConfig c;
    c.optimizer = OptimizerKind::GradientDescent;
    c.lr = 1e6;
    CHECK_THROWS_AS(train(m.graph, obs, c), DivergenceError);
    CHECK_THROWS_AS(train(m.graph, {}, TrainConfig{}), DataError);
}

TEST_CASE("customer value regression") {
    using otcnet::testing::make_graph;
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n01;
    const int dealers = 30;
    std::vector<double> x{0.0}, y(dealers), u(dealers, 1.0);
    for (auto& v : y) v = n01(rng);
    const auto g = make_graph({dealers, 1, 1}, {}, x, y, {}, u);

    // The only X row is shared by every node, so it duplicates the intercept.
    std::vector<CustomerSale> sales;
    for (int i = 0; i < dealers; ++i) sales.push_back({static_cast<std::size_t>(i), std::exp(0.5 + 2.0 * y[i])});
    try {
        estimate_customer_values(g, sales);
        FAIL("expected a rank error");
    } catch (const NumericError& e) {
        CHECK(std::string(e.what()).find("X_1") != std::string::npos);
    }

    const auto g2 = make_graph({dealers, 2, 1}, {}, {-1.0, 1.5}, y, {}, std::vector<double>(2 * dealers, 1.0));
    sales.clear();
    for (std::size_t n = 0; n < g2.num_nodes(); ++n) {
        const double xv = g2.x_row(n)[0], yv = g2.y_row(n)[0];
        sales.push_back({n, std::exp(0.5 - 0.25 * xv + 2.0 * yv)});
    }
    const auto fit = estimate_customer_values(g2, sales);
    CHECK(fit.columns == std::vector<std::string>{"intercept", "X_1", "Y_1"});
    CHECK(fit.gamma[0] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(fit.gamma[1] == doctest::Approx(-0.25).epsilon(1e-10));
    CHECK(fit.gamma[2] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(fit.u_hat[7] == doctest::Approx(sales[7].price).epsilon(1e-10));

    CHECK_THROWS_AS(estimate_customer_values(g2, {{0, -1.0}}), DataError);
    CHECK_THROWS_AS(estimate_customer_values(g2, {}), DataError);
}

TEST_CASE("fitted model round trip") {
    FittedModel m;
    m.params = {{1.25}, {0.1 + 0.2}, {-3e-17}};
    m.config.epochs = 12;
    m.config.optimizer = OptimizerKind::GradientDescent;
    m.config.lambda = 0.125;
    m.final_loss = 0.3;
    m.metrics.r2 = 0.99;
    const auto path = otcnet::testing::scratch_dir("model_io") / "fitted_model.json";
    save_model(m, path);
    const auto back = load_model(path);
    CHECK(back.params == m.params);
    CHECK(back.config.epochs == 12);
    CHECK(back.config.optimizer == OptimizerKind::GradientDescent);
    CHECK(back.config.lambda == 0.125);
    CHECK(back.final_loss == 0.3);

    std::ofstream(path) << "{\"params\": 3}";
    CHECK_THROWS_AS(load_model(path), DataError);
    CHECK_THROWS_AS(load_model(path.parent_path() / "missing.json"), DataError);
    CHECK_THROWS_AS(params_from_json(nlohmann::json::parse(R"({"beta_x":[1],"beta_y":["a"],"eta":[1]})")),
                    ConfigError);
}
