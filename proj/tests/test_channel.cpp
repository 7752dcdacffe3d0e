#include <doctest.h>

#include <cmath>

#include "mmwsim/channel.hpp"
#include "mmwsim/errors.hpp"

using namespace mmwsim;

TEST_CASE("steering vector reference values") {
    const CVector broadside = steering_vector(0.0, 4);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(broadside(i) - Complex(0.5, 0.0)) < 1e-12);

    // At endfire with two elements: (1, e^{-j*pi}) / sqrt(2) = (1, -1)/sqrt(2).
    const CVector endfire = steering_vector(kPi / 2.0, 2);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(endfire(0) - Complex(r, 0.0)) < 1e-12);
    CHECK(std::abs(endfire(1) - Complex(-r, 0.0)) < 1e-12);

    CHECK_THROWS_AS(steering_vector(0.1, 0), ConfigError);
}

TEST_CASE("steering vector normalization and element modulus") {
    for (double phi : {-1.2, -0.3, 0.0, 0.7, 1.4}) {
        const CVector a = steering_vector(phi, 64);
        CHECK(std::abs(a.norm() - 1.0) <= 1e-12);
        for (int i = 0; i < 64; ++i) CHECK(std::abs(std::abs(a(i)) - 1.0 / 8.0) <= 1e-12);
    }
}

TEST_CASE("path loss reference values at 73 GHz") {
    const PathLossParams pl;
    CHECK(path_loss_db(1.0, 73.0, pl, false) == doctest::Approx(69.6665).epsilon(1e-4));
    CHECK(path_loss(1.0, 73.0, pl, false) == doctest::Approx(1.0798e-7).epsilon(1e-3));
    CHECK(path_loss_db(100.0, 73.0, pl, false) == doctest::Approx(133.4665).epsilon(1e-4));
    // Direct-path exponent: 2.0 instead of 3.19.
    CHECK(path_loss_db(100.0, 73.0, pl, true) == doctest::Approx(109.6665).epsilon(1e-4));
    CHECK_THROWS_AS(path_loss(0.0, 73.0), ConfigError);
}

TEST_CASE("path loss decreases with distance") {
    for (double d = 1.0; d < 400.0; d *= 2.3)
        CHECK(path_loss(2.0 * d, 73.0) < path_loss(d, 73.0));
}

TEST_CASE("noise variance reference values") {
    CHECK(noise_variance(3.0, -174.0, 5e8) == doctest::Approx(3.9716e-12).epsilon(1e-3));
    CHECK(noise_variance(0.0, -174.0, 1.0) == doctest::Approx(3.981e-21).epsilon(1e-3));
    CHECK(noise_variance(3.0, -174.0, 2e8) ==
          doctest::Approx(2.0 * noise_variance(3.0, -174.0, 1e8)).epsilon(1e-12));
    CHECK_THROWS_AS(noise_variance(3.0, -174.0, 0.0), ConfigError);
}

namespace {

ChannelParams small_params() {
    ChannelParams p;
    p.n_t = 8;
    p.n_r = 8;
    p.n_cl = 2;
    p.n_ray_per_cluster = 20;
    return p;
}

}  // namespace

TEST_CASE("geometry draw produces the configured ray count and ranges") {
    ChannelParams p = small_params();
    Rng rng(21);
    const UserGeometry g = draw_geometry(p, rng);
    CHECK(g.paths.size() == 40);
    CHECK(g.distance_m >= p.min_distance_m);
    CHECK(g.distance_m <= p.cell_radius_m);
    CHECK(!g.los.has_value());
    const double att = path_loss(g.distance_m, p.carrier_freq_ghz, p.pathloss, false);
    for (const PathComponent& pc : g.paths) {
        CHECK(pc.aod >= -kPi / 2.0);
        CHECK(pc.aod <= kPi / 2.0);
        CHECK(pc.aoa >= -kPi / 2.0);
        CHECK(pc.aoa <= kPi / 2.0);
        CHECK(pc.attenuation == att);
    }
}

TEST_CASE("zero angle spread collapses rays onto cluster centers") {
    ChannelParams p = small_params();
    p.angle_spread_deg = 0.0;
    Rng rng(22);
    const UserGeometry g = draw_geometry(p, rng);
    for (int c = 0; c < p.n_cl; ++c) {
        const int base = c * p.n_ray_per_cluster;
        for (int r = 1; r < p.n_ray_per_cluster; ++r) {
            CHECK(g.paths[base + r].aod == g.paths[base].aod);
            CHECK(g.paths[base + r].aoa == g.paths[base].aoa);
        }
    }
}

TEST_CASE("equal seeds reproduce identical geometry") {
    ChannelParams p = small_params();
    Rng a(23), b(23);
    const UserGeometry ga = draw_geometry(p, a);
    const UserGeometry gb = draw_geometry(p, b);
    CHECK(ga.distance_m == gb.distance_m);
    REQUIRE(ga.paths.size() == gb.paths.size());
    for (std::size_t i = 0; i < ga.paths.size(); ++i) {
        CHECK(ga.paths[i].aod == gb.paths[i].aod);
        CHECK(ga.paths[i].aoa == gb.paths[i].aoa);
        CHECK(ga.paths[i].gain == gb.paths[i].gain);
    }
}

TEST_CASE("ray gains have unit mean-square magnitude") {
    ChannelParams p = small_params();
    p.n_cl = 1;
    p.n_ray_per_cluster = 10;
    Rng rng(24);
    double acc = 0.0;
    int count = 0;
    while (count < 100000) {
        const UserGeometry g = draw_geometry(p, rng);
        for (const PathComponent& pc : g.paths) acc += std::norm(pc.gain);
        count += static_cast<int>(g.paths.size());
    }
    CHECK(acc / count == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("single-path channel equals a scaled steering outer product") {
    ChannelParams p = small_params();
    UserGeometry g;
    g.distance_m = 25.0;
    g.paths.push_back({0.0, 0.0, Complex(1.0, 0.0), 1.0});
    const ChannelRealization ch = assemble_channel(p, g);
    const double gamma = std::sqrt(8.0 * 8.0 / 1.0);
    CHECK(ch.h.norm() == doctest::Approx(gamma).epsilon(1e-12));
    const CMatrix expected =
        gamma * (steering_vector(0.0, 8) * steering_vector(0.0, 8).adjoint());
    CHECK((ch.h - expected).norm() < 1e-12);
}

TEST_CASE("channel assembly is deterministic") {
    ChannelParams p = small_params();
    Rng rng(25);
    const UserGeometry g = draw_geometry(p, rng);
    const ChannelRealization a = assemble_channel(p, g);
    const ChannelRealization b = assemble_channel(p, g);
    CHECK(a.h == b.h);  // bit-identical
    CHECK_THROWS_AS(assemble_channel(p, UserGeometry{}), ConfigError);
}

TEST_CASE("channel normalization: mean squared Frobenius norm is n_r*n_t") {
    ChannelParams p = small_params();
    Rng rng(26);
    double acc = 0.0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        UserGeometry g = draw_geometry(p, rng);
        for (PathComponent& pc : g.paths) pc.attenuation = 1.0;  // isolate the gamma scaling
        acc += assemble_channel(p, g).h.squaredNorm();
    }
    CHECK(acc / draws == doctest::Approx(64.0).epsilon(0.03));
}

TEST_CASE("channel rank is bounded by the path count") {
    ChannelParams p = small_params();
    Rng rng(27);
    p.n_cl = 1;
    p.n_ray_per_cluster = 3;
    const std::vector<ChannelRealization> chans = draw_user_channels(p, 1, rng);
    const SvdResult d = svd(chans[0].h);
    CHECK(numerical_rank(d.s) <= 3);
}

TEST_CASE("forced direct component adds a strong rank-one term") {
    ChannelParams p = small_params();
    Rng rng(28);
    p.los_mode = LosMode::forced_on;
    const UserGeometry g = draw_geometry(p, rng);
    REQUIRE(g.los.has_value());
    CHECK(std::abs(std::abs(g.los->gain) - 1.0) < 1e-12);
    // Direct attenuation (exponent 2.0) beats the scattered one (3.19) at the
    // same distance beyond one meter.
    CHECK(g.los->attenuation > g.paths.front().attenuation);

    const ChannelRealization with_los = assemble_channel(p, g);
    UserGeometry no_los = g;
    no_los.los.reset();
    const ChannelRealization without = assemble_channel(p, no_los);
    CHECK(with_los.h.norm() > without.h.norm());
}
