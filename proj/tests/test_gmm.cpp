#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "core/errors.hpp"
#include "core/gmm.hpp"
#include "core/rng.hpp"

using namespace stylesearch;

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

// Brute-force density oracle for q <= 2, written directly from the normal
// pdf with explicit determinants and inverses.
double normal_pdf_oracle(const Eigen::VectorXd& x, const Eigen::VectorXd& mean,
                         const Eigen::MatrixXd& cov) {
    const int q = static_cast<int>(x.size());
    const Eigen::VectorXd d = x - mean;
    if (q == 1) {
        const double var = cov(0, 0);
        return std::exp(-0.5 * d(0) * d(0) / var) / std::sqrt(2.0 * std::numbers::pi * var);
    }
    REQUIRE(q == 2);
    const double det = cov(0, 0) * cov(1, 1) - cov(0, 1) * cov(1, 0);
    const double quad = (cov(1, 1) * d(0) * d(0) - 2.0 * cov(0, 1) * d(0) * d(1) +
                         cov(0, 0) * d(1) * d(1)) /
                        det;
    return std::exp(-0.5 * quad) / (2.0 * std::numbers::pi * std::sqrt(det));
}

Eigen::VectorXd responsibility_oracle(const GmmModel& m, const Eigen::VectorXd& x) {
    Eigen::VectorXd numerators(m.component_count());
    for (int k = 0; k < m.component_count(); ++k) {
        numerators(k) =
            m.weights(k) * normal_pdf_oracle(x, m.means.row(k).transpose(), m.covariances[k]);
    }
    return numerators / numerators.sum();
}

GmmModel make_1d_pair(double mean_a, double mean_b, double weight_a = 0.5) {
    GmmModel m;
    m.weights = Eigen::Vector2d(weight_a, 1.0 - weight_a);
    m.means.resize(2, 1);
    m.means << mean_a, mean_b;
    m.covariances = {Eigen::MatrixXd::Identity(1, 1), Eigen::MatrixXd::Identity(1, 1)};
    return m;
}

Eigen::MatrixXd sample_matrix(int n, int q, std::uint64_t seed) {
    RandomStream rng(seed);
    Eigen::MatrixXd data(n, q);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < q; ++j) {
            data(i, j) = rng.next_normal();
        }
    }
    return data;
}

} // namespace

TEST_CASE("log density matches hand-computed values") {
    GmmModel standard;
    standard.weights = Eigen::VectorXd::Ones(1);
    standard.means = Eigen::MatrixXd::Zero(1, 1);
    standard.covariances = {Eigen::MatrixXd::Identity(1, 1)};
    CHECK(gmm_log_density(standard, Eigen::VectorXd::Zero(1)) ==
          doctest::Approx(-0.5 * kLog2Pi).epsilon(1e-12));

    GmmModel standard2d;
    standard2d.weights = Eigen::VectorXd::Ones(1);
    standard2d.means = Eigen::MatrixXd::Zero(1, 2);
    standard2d.covariances = {Eigen::MatrixXd::Identity(2, 2)};
    CHECK(gmm_log_density(standard2d, Eigen::VectorXd::Zero(2)) ==
          doctest::Approx(-kLog2Pi).epsilon(1e-12));

    // two equal-weight components at -1 and +1 evaluated at the midpoint:
    // pdf = exp(-1/2)/sqrt(2*pi), log = -1/2 - log(2*pi)/2
    const GmmModel pair = make_1d_pair(-1.0, 1.0);
    CHECK(gmm_log_density(pair, Eigen::VectorXd::Zero(1)) ==
          doctest::Approx(-0.5 - 0.5 * kLog2Pi).epsilon(1e-12));
}

TEST_CASE("posteriors on known geometries") {
    GmmModel single;
    single.weights = Eigen::VectorXd::Ones(1);
    single.means = Eigen::MatrixXd::Zero(1, 3);
    single.covariances = {Eigen::MatrixXd::Identity(3, 3)};
    RandomStream rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::VectorXd x(3);
        for (int j = 0; j < 3; ++j) {
            x(j) = rng.next_normal();
        }
        CHECK(gmm_posterior(single, x)(0) == doctest::Approx(1.0));
        CHECK(gmm_posterior_t(single, x, 0) == doctest::Approx(1.0));
    }

    const GmmModel mirror = make_1d_pair(-2.0, 2.0);
    const Eigen::VectorXd midpoint = Eigen::VectorXd::Zero(1);
    CHECK(gmm_posterior(mirror, midpoint)(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(gmm_posterior(mirror, midpoint)(1) == doctest::Approx(0.5).epsilon(1e-12));

    // components N(0,1) and N(4,1) queried at 0: logistic of the log-density
    // gap 8 -> 1/(1+exp(-8))
    const GmmModel shifted = make_1d_pair(0.0, 4.0);
    const double expected = 1.0 / (1.0 + std::exp(-8.0));
    CHECK(gmm_posterior(shifted, Eigen::VectorXd::Zero(1))(0) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(gmm_posterior_t(shifted, Eigen::VectorXd::Zero(1), 0) ==
          doctest::Approx(expected).epsilon(1e-12));

    CHECK_THROWS_AS(gmm_posterior_t(shifted, Eigen::VectorXd::Zero(1), 2), ValidationError);
    CHECK_THROWS_AS(gmm_posterior_t(shifted, Eigen::VectorXd::Zero(1), -1), ValidationError);
    CHECK_THROWS_AS(gmm_posterior(shifted, Eigen::VectorXd::Zero(2)), DimensionError);
}

TEST_CASE("posterior is computed in log space far from all components") {
    const GmmModel far = make_1d_pair(-600.0, 600.0, 0.25);
    // densities underflow to 0 in linear space at x=0; log space keeps the ratio
    const Eigen::VectorXd p = gmm_posterior(far, Eigen::VectorXd::Zero(1));
    CHECK(std::isfinite(p(0)));
    CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(p(0) == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("K=1 fit reaches the single-component fixed point") {
    const Eigen::MatrixXd data = sample_matrix(50, 3, 8080);
    GmmConfig cfg;
    cfg.components = 1;
    cfg.seed = 1;
    const GmmModel m = gmm_fit(data, cfg);

    const Eigen::RowVectorXd mean = data.colwise().mean();
    const Eigen::MatrixXd centered = data.rowwise() - mean;
    Eigen::MatrixXd cov = (centered.transpose() * centered) / data.rows();
    cov.diagonal().array() += cfg.reg_covar;

    CHECK(m.weights(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((m.means.row(0) - mean).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((m.covariances[0] - cov).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("two separated 1-D clusters are recovered") {
    RandomStream rng(2025);
    Eigen::MatrixXd data(200, 1);
    for (int i = 0; i < 100; ++i) {
        data(i, 0) = -5.0 + rng.next_normal();
    }
    for (int i = 100; i < 200; ++i) {
        data(i, 0) = 5.0 + rng.next_normal();
    }
    GmmConfig cfg;
    cfg.components = 2;
    cfg.seed = 7;
    const GmmModel m = gmm_fit(data, cfg);

    const double lo = std::min(m.means(0, 0), m.means(1, 0));
    const double hi = std::max(m.means(0, 0), m.means(1, 0));
    CHECK(std::abs(lo - (-5.0)) < 0.5);
    CHECK(std::abs(hi - 5.0) < 0.5);
    CHECK(std::abs(m.weights(0) - 0.5) < 0.1);
    CHECK(std::abs(m.weights(1) - 0.5) < 0.1);
}

TEST_CASE("K=n puts one component on each point") {
    Eigen::MatrixXd data(4, 1);
    data << 0.0, 10.0, 20.0, 30.0;
    GmmConfig cfg;
    cfg.components = 4;
    cfg.reg_covar = 1e-6;
    cfg.seed = 3;
    const GmmModel m = gmm_fit(data, cfg);
    for (int k = 0; k < 4; ++k) {
        double best = 1e18;
        for (int i = 0; i < 4; ++i) {
            best = std::min(best, std::abs(m.means(k, 0) - data(i, 0)));
        }
        CHECK(best < 1e-6);
    }
}

TEST_CASE("fit validates inputs") {
    const Eigen::MatrixXd data = sample_matrix(5, 2, 1);
    GmmConfig cfg;
    cfg.components = 6;
    CHECK_THROWS_AS(gmm_fit(data, cfg), ValidationError);  // n < K

    cfg.components = 2;
    cfg.tol = 0.0;
    CHECK_THROWS_AS(gmm_fit(data, cfg), ValidationError);

    cfg.tol = 1e-6;
    cfg.n_init = 0;
    CHECK_THROWS_AS(gmm_fit(data, cfg), ValidationError);

    cfg.n_init = 1;
    Eigen::MatrixXd bad = data;
    bad(0, 0) = std::nan("");
    CHECK_THROWS_AS(gmm_fit(bad, cfg), ValidationError);
}

TEST_CASE("EM log-likelihood is non-decreasing across seeds and shapes") {
    const int qs[] = {1, 2, 5};
    const int ks[] = {1, 2, 4};
    for (const int q : qs) {
        for (const int k : ks) {
            const Eigen::MatrixXd data =
                sample_matrix(120, q, 1000 + static_cast<std::uint64_t>(q) * 10 + k);
            GmmConfig cfg;
            cfg.components = k;
            cfg.seed = static_cast<std::uint64_t>(q * 100 + k);
            const GmmModel m = gmm_fit(data, cfg);
            REQUIRE(m.log_likelihood_path.size() >= 1);
            for (std::size_t i = 1; i < m.log_likelihood_path.size(); ++i) {
                CHECK(m.log_likelihood_path[i] >=
                      m.log_likelihood_path[i - 1] - 1e-9 * std::abs(m.log_likelihood_path[i - 1]));
            }
        }
    }
}

TEST_CASE("posteriors stay on the simplex for random queries") {
    const Eigen::MatrixXd data = sample_matrix(300, 3, 555);
    GmmConfig cfg;
    cfg.components = 8;
    cfg.seed = 5;
    const GmmModel m = gmm_fit(data, cfg);

    RandomStream rng(66);
    for (int trial = 0; trial < 1000; ++trial) {
        Eigen::VectorXd x(3);
        for (int j = 0; j < 3; ++j) {
            x(j) = 3.0 * rng.next_normal();
        }
        const Eigen::VectorXd p = gmm_posterior(m, x);
        CHECK(std::abs(p.sum() - 1.0) <= 1e-9);
        CHECK(p.minCoeff() >= 0.0);
        CHECK(p.maxCoeff() <= 1.0);
    }
}

TEST_CASE("raising a component's weight raises its posterior and lowers the rest") {
    // Hand-built overlapping components keep every posterior strictly
    // interior, where the complementarity is observable in doubles.
    GmmModel base;
    base.weights = Eigen::Vector3d(0.5, 0.3, 0.2);
    base.means.resize(3, 2);
    base.means << 0.0, 0.0, 1.0, 0.0, 0.0, 1.0;
    base.covariances.assign(3, Eigen::MatrixXd::Identity(2, 2));

    RandomStream rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd x(2);
        x << rng.next_normal(), rng.next_normal();
        const int t = trial % 3;

        GmmModel boosted = base;
        boosted.weights(t) *= 1.5;
        boosted.weights /= boosted.weights.sum();

        const Eigen::VectorXd before = gmm_posterior(base, x);
        const Eigen::VectorXd after = gmm_posterior(boosted, x);
        CHECK(after(t) > before(t));
        for (int j = 0; j < 3; ++j) {
            if (j != t) {
                CHECK(after(j) < before(j));
            }
        }
    }
}

TEST_CASE("responsibilities match the brute-force oracle on small instances") {
    RandomStream rng(99);
    for (int instance = 0; instance < 6; ++instance) {
        const int q = 1 + instance % 2;
        const int k_count = 1 + instance % 2;
        GmmModel m;
        m.weights.resize(k_count);
        m.means.resize(k_count, q);
        m.covariances.clear();
        double weight_sum = 0.0;
        for (int k = 0; k < k_count; ++k) {
            m.weights(k) = 0.5 + rng.next_uniform();
            weight_sum += m.weights(k);
            for (int j = 0; j < q; ++j) {
                m.means(k, j) = 2.0 * rng.next_normal();
            }
            Eigen::MatrixXd a(q, q);
            for (int r = 0; r < q; ++r) {
                for (int c = 0; c < q; ++c) {
                    a(r, c) = rng.next_normal();
                }
            }
            m.covariances.push_back(a * a.transpose() +
                                    0.5 * Eigen::MatrixXd::Identity(q, q));
        }
        m.weights /= weight_sum;

        for (int i = 0; i < 20; ++i) {
            Eigen::VectorXd x(q);
            for (int j = 0; j < q; ++j) {
                x(j) = 3.0 * rng.next_normal();
            }
            const Eigen::VectorXd expected = responsibility_oracle(m, x);
            const Eigen::VectorXd actual = gmm_posterior(m, x);
            for (int k = 0; k < k_count; ++k) {
                CHECK(actual(k) == doctest::Approx(expected(k)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("restarts pick the best likelihood and fits are deterministic") {
    const Eigen::MatrixXd data = sample_matrix(80, 2, 31337);
    GmmConfig cfg;
    cfg.components = 3;
    cfg.seed = 21;
    cfg.n_init = 5;
    const GmmModel a = gmm_fit(data, cfg);
    const GmmModel b = gmm_fit(data, cfg);
    CHECK(a.final_log_likelihood == b.final_log_likelihood);
    CHECK(a.weights == b.weights);
    CHECK(a.means == b.means);

    cfg.n_init = 1;
    const GmmModel single = gmm_fit(data, cfg);
    CHECK(a.final_log_likelihood >= single.final_log_likelihood - 1e-9);
}

TEST_CASE("duplicate points with K=n keep the fit valid") {
    Eigen::MatrixXd data(4, 1);
    data << 1.0, 1.0, 7.0, 7.0;
    GmmConfig cfg;
    cfg.components = 4;
    cfg.reg_covar = 1e-6;
    cfg.seed = 17;
    const GmmModel m = gmm_fit(data, cfg);
    CHECK(m.weights.sum() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(m.weights.minCoeff() >= 0.0);
    for (const auto& cov : m.covariances) {
        CHECK((cov - cov.transpose()).cwiseAbs().maxCoeff() <= 1e-9);
        Eigen::LLT<Eigen::MatrixXd> llt(cov);
        CHECK(llt.info() == Eigen::Success);
    }
}
