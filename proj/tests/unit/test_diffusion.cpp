/*
   Copyright (c) 2026, the posekit developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "diffusion.hpp"
#include "error.hpp"
#include "rng.hpp"

namespace posekit {
namespace {

TEST(Schedule, RowLayoutAndProductInvariant) {
    for (ScheduleKind kind :
         {ScheduleKind::LinearBeta, ScheduleKind::Cosine, ScheduleKind::Sigmoid}) {
        const VarianceSchedule s = make_schedule(64, kind);
        ASSERT_EQ(s.steps, 64u);
        ASSERT_EQ(s.alpha.size(), 65u);
        ASSERT_EQ(s.alpha_bar.size(), 65u);
        ASSERT_EQ(s.sigma_sq.size(), 65u);
        ASSERT_EQ(s.lambda.size(), 65u);
        ASSERT_EQ(s.gamma.size(), 65u);

        EXPECT_DOUBLE_EQ(s.alpha[0], 1.0);
        EXPECT_DOUBLE_EQ(s.alpha_bar[0], 1.0);
        EXPECT_DOUBLE_EQ(s.sigma_sq[0], 0.0);
        EXPECT_DOUBLE_EQ(s.lambda[0], 0.0);
        EXPECT_DOUBLE_EQ(s.gamma[0], 0.0);

        double bar = 1.0;
        for (size_t t = 1; t <= s.steps; ++t) {
            EXPECT_GT(s.alpha[t], 0.0);
            EXPECT_LT(s.alpha[t], 1.0);
            bar *= s.alpha[t];
            EXPECT_DOUBLE_EQ(s.alpha_bar[t], bar);
            EXPECT_LT(s.alpha_bar[t], s.alpha_bar[t - 1]);
            EXPECT_DOUBLE_EQ(s.sigma_sq[t], 1.0 - s.alpha[t]);
            EXPECT_DOUBLE_EQ(s.lambda[t], s.sigma_sq[t] / (s.alpha[t] * s.alpha[t]));
            EXPECT_DOUBLE_EQ(s.gamma[t], 1.0 - s.alpha_bar[t]);
        }
    }
}

TEST(Schedule, LinearBetaEndpoints) {
    ScheduleParams p;
    const VarianceSchedule s = make_schedule(100, ScheduleKind::LinearBeta, p);
    EXPECT_NEAR(1.0 - s.alpha[1], p.beta_start, 1e-15);
    EXPECT_NEAR(1.0 - s.alpha[100], p.beta_end, 1e-15);
    // Evenly spaced betas.
    for (size_t t = 2; t <= 100; ++t)
        EXPECT_NEAR((1.0 - s.alpha[t]) - (1.0 - s.alpha[t - 1]),
                    (p.beta_end - p.beta_start) / 99.0, 1e-15);

    const VarianceSchedule one = make_schedule(1, ScheduleKind::LinearBeta, p);
    EXPECT_NEAR(1.0 - one.alpha[1], p.beta_start, 1e-15);
}

TEST(Schedule, CosineMatchesDirectConstruction) {
    const size_t T = 50;
    ScheduleParams p;
    const VarianceSchedule s = make_schedule(T, ScheduleKind::Cosine, p);

    auto f = [&](size_t t) {
        const double u = (static_cast<double>(t) / static_cast<double>(T) + p.cosine_s) /
                         (1.0 + p.cosine_s) * M_PI / 2.0;
        return std::cos(u) * std::cos(u);
    };
    double prev_bar = 1.0;
    double rebuilt = 1.0;
    for (size_t t = 1; t <= T; ++t) {
        const double bar = f(t) / f(0);
        const double beta = std::min(0.999, 1.0 - bar / prev_bar);
        prev_bar = bar;
        EXPECT_DOUBLE_EQ(s.alpha[t], 1.0 - beta);
        rebuilt *= 1.0 - beta;
        EXPECT_DOUBLE_EQ(s.alpha_bar[t], rebuilt);
    }
    // The final step hits the 0.999 beta clip.
    EXPECT_DOUBLE_EQ(s.alpha[T], 1.0 - 0.999);
}

TEST(Schedule, SigmoidEndpointsAndMonotonicity) {
    ScheduleParams p;
    const size_t T = 41;
    const VarianceSchedule s = make_schedule(T, ScheduleKind::Sigmoid, p);
    auto sigmoid = [](double z) { return 1.0 / (1.0 + std::exp(-z)); };
    EXPECT_NEAR(1.0 - s.alpha[1], p.beta_start + (p.beta_end - p.beta_start) * sigmoid(-6.0),
                1e-15);
    EXPECT_NEAR(1.0 - s.alpha[T], p.beta_start + (p.beta_end - p.beta_start) * sigmoid(6.0),
                1e-15);
    // Midpoint of an odd-length grid sits at z = 0.
    EXPECT_NEAR(1.0 - s.alpha[(T + 1) / 2], p.beta_start + (p.beta_end - p.beta_start) * 0.5,
                1e-15);
    for (size_t t = 2; t <= T; ++t) EXPECT_GT(s.alpha[t - 1], s.alpha[t]);
}

TEST(Schedule, RejectsInvalidRequests) {
    EXPECT_THROW(make_schedule(0, ScheduleKind::LinearBeta), DomainError);

    ScheduleParams bad;
    bad.beta_end = 1.5;  // alpha would go negative
    EXPECT_THROW(make_schedule(10, ScheduleKind::LinearBeta, bad), DomainError);

    ScheduleParams zero;
    zero.beta_start = 0.0;
    zero.beta_end = 0.0;  // alpha would be exactly 1
    EXPECT_THROW(make_schedule(10, ScheduleKind::LinearBeta, zero), DomainError);
}

TEST(NoiseCoordinates, ReconstructionAndDeterminism) {
    const VarianceSchedule s = make_schedule(20, ScheduleKind::LinearBeta);
    std::vector<Vec3> x0;
    SeededRng rng(3);
    for (int i = 0; i < 25; ++i)
        x0.push_back({rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)});

    const size_t t = 12;
    const NoisedCoordinates a = noise_coordinates(x0, t, s, 777);
    const NoisedCoordinates b = noise_coordinates(x0, t, s, 777);
    const NoisedCoordinates c = noise_coordinates(x0, t, s, 778);
    ASSERT_EQ(a.x_t.size(), x0.size());
    ASSERT_EQ(a.noise.size(), x0.size());

    const double scale = std::sqrt(s.alpha_bar[t]);
    const double spread = std::sqrt(1.0 - s.alpha_bar[t]);
    bool seeds_differ = false;
    for (size_t i = 0; i < x0.size(); ++i) {
        EXPECT_EQ(a.x_t[i].x, b.x_t[i].x);
        EXPECT_EQ(a.noise[i].z, b.noise[i].z);
        if (a.x_t[i].x != c.x_t[i].x) seeds_differ = true;
        EXPECT_NEAR(a.x_t[i].x, scale * x0[i].x + spread * a.noise[i].x, 1e-15);
        EXPECT_NEAR(a.x_t[i].y, scale * x0[i].y + spread * a.noise[i].y, 1e-15);
        EXPECT_NEAR(a.x_t[i].z, scale * x0[i].z + spread * a.noise[i].z, 1e-15);
    }
    EXPECT_TRUE(seeds_differ);
}

TEST(NoiseCoordinates, StepZeroIsIdentityAndRangeChecked) {
    const VarianceSchedule s = make_schedule(8, ScheduleKind::Cosine);
    const std::vector<Vec3> x0 = {{1.25, -2.5, 3.75}, {0.1, 0.2, 0.3}};
    const NoisedCoordinates out = noise_coordinates(x0, 0, s, 9);
    for (size_t i = 0; i < x0.size(); ++i) {
        EXPECT_EQ(out.x_t[i].x, x0[i].x);
        EXPECT_EQ(out.x_t[i].y, x0[i].y);
        EXPECT_EQ(out.x_t[i].z, x0[i].z);
    }
    EXPECT_THROW(noise_coordinates(x0, 9, s, 9), DomainError);
}

TEST(NoiseCoordinates, SampleMomentsMatchChannel) {
    const VarianceSchedule s = make_schedule(30, ScheduleKind::LinearBeta);
    const size_t t = 18;
    const size_t n = 40000;
    const std::vector<Vec3> x0(n, Vec3{1.0, -2.0, 0.5});
    const NoisedCoordinates out = noise_coordinates(x0, t, s, 20260814);

    Vec3 mean{0, 0, 0};
    for (const Vec3& p : out.x_t) mean += p;
    mean = mean * (1.0 / static_cast<double>(n));
    const double scale = std::sqrt(s.alpha_bar[t]);
    const double sd = std::sqrt(1.0 - s.alpha_bar[t]);
    const double mean_tol = 4.0 * sd / std::sqrt(static_cast<double>(n));
    EXPECT_NEAR(mean.x, scale * 1.0, mean_tol);
    EXPECT_NEAR(mean.y, scale * -2.0, mean_tol);
    EXPECT_NEAR(mean.z, scale * 0.5, mean_tol);

    double var = 0.0;
    for (const Vec3& p : out.x_t) {
        const Vec3 d = p - Vec3{scale * 1.0, scale * -2.0, scale * 0.5};
        var += d.norm_sq();
    }
    var /= static_cast<double>(3 * n - 1);
    // Chi-square concentration: relative error ~ sqrt(2 / (3n)).
    EXPECT_NEAR(var, sd * sd, 5.0 * sd * sd * std::sqrt(2.0 / (3.0 * n)));
}

TEST(TypeNoise, ProbsValidationAndUniformLimit) {
    const std::vector<double> v0 = {0, 0, 1, 0, 0};
    const auto p_half = type_noise_probs(v0, 0.4);
    double sum = 0.0;
    for (size_t i = 0; i < p_half.size(); ++i) {
        sum += p_half[i];
        const double expected = 0.4 * v0[i] + 0.6 / 5.0;
        EXPECT_NEAR(p_half[i], expected, 1e-15);
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);

    // Fully noised: exactly uniform.
    const auto p0 = type_noise_probs(v0, 0.0);
    for (double p : p0) EXPECT_NEAR(p, 1.0 / 5.0, 1e-12);

    // Identity channel: the one-hot vector itself.
    const auto p1 = type_noise_probs(v0, 1.0);
    for (size_t i = 0; i < v0.size(); ++i) EXPECT_DOUBLE_EQ(p1[i], v0[i]);

    EXPECT_THROW(type_noise_probs({}, 0.5), DomainError);
    EXPECT_THROW(type_noise_probs({0.5, 0.5}, 0.5), DomainError);
    EXPECT_THROW(type_noise_probs({1, 1, 0}, 0.5), DomainError);
    EXPECT_THROW(type_noise_probs({0, 0, 0}, 0.5), DomainError);
}

TEST(TypeNoise, SamplingMatchesProbabilities) {
    const VarianceSchedule s = make_schedule(16, ScheduleKind::LinearBeta);
    const std::vector<double> v0 = {0, 0, 0, 1, 0, 0, 0, 0, 0, 0};
    const size_t t = 10;
    const auto probs = type_noise_probs(v0, s.alpha_bar[t]);

    const size_t n = 30000;
    std::vector<size_t> counts(v0.size(), 0);
    for (size_t seed = 0; seed < n; ++seed) {
        const NoisedType nt = noise_types(v0, t, s, seed);
        ASSERT_LT(nt.sample, counts.size());
        EXPECT_EQ(nt.probs, probs);
        ++counts[nt.sample];
    }
    for (size_t i = 0; i < counts.size(); ++i) {
        const double freq = static_cast<double>(counts[i]) / static_cast<double>(n);
        const double tol =
            4.0 * std::sqrt(probs[i] * (1.0 - probs[i]) / static_cast<double>(n));
        EXPECT_NEAR(freq, probs[i], tol);
    }

    // The identity step returns the true class with certainty.
    for (uint64_t seed : {1ull, 2ull, 3ull}) {
        const NoisedType nt = noise_types(v0, 0, s, seed);
        EXPECT_EQ(nt.sample, 3u);
    }
    EXPECT_THROW(noise_types(v0, 17, s, 1), DomainError);
}

TEST(ScoreTargets, ClosedFormScoreOfTheNoisingChannel) {
    const VarianceSchedule s = make_schedule(24, ScheduleKind::LinearBeta);
    SeededRng rng(12);
    std::vector<Vec3> x0;
    for (int i = 0; i < 12; ++i)
        x0.push_back({rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)});

    for (size_t t : {size_t{1}, size_t{12}, size_t{24}}) {
        const NoisedCoordinates noised = noise_coordinates(x0, t, s, 55 + t);
        const ScoreTarget st = score_targets(x0, noised.x_t, t, s);
        ASSERT_EQ(st.target.size(), x0.size());
        EXPECT_DOUBLE_EQ(st.weight, s.lambda[t]);
        const double inv_sd = 1.0 / std::sqrt(1.0 - s.alpha_bar[t]);
        for (size_t i = 0; i < x0.size(); ++i) {
            EXPECT_NEAR(st.target[i].x, -noised.noise[i].x * inv_sd, 1e-9);
            EXPECT_NEAR(st.target[i].y, -noised.noise[i].y * inv_sd, 1e-9);
            EXPECT_NEAR(st.target[i].z, -noised.noise[i].z * inv_sd, 1e-9);
        }
    }

    EXPECT_THROW(score_targets(x0, x0, 0, s), DomainError);
    EXPECT_THROW(score_targets(x0, x0, 25, s), DomainError);
    std::vector<Vec3> short_xt(x0.begin(), x0.end() - 1);
    EXPECT_THROW(score_targets(x0, short_xt, 5, s), Error);
}

TEST(PerturbProtein, SigmaZeroIsExactIdentity) {
    const std::vector<Vec3> x = {{1, 2, 3}, {-0.5, 0.25, 7.0}};
    const auto same = perturb_protein(x, 99, 0.0);
    ASSERT_EQ(same.size(), x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        EXPECT_EQ(same[i].x, x[i].x);
        EXPECT_EQ(same[i].y, x[i].y);
        EXPECT_EQ(same[i].z, x[i].z);
    }

    const auto a = perturb_protein(x, 99, 0.1);
    const auto b = perturb_protein(x, 99, 0.1);
    const auto c = perturb_protein(x, 100, 0.1);
    EXPECT_EQ(a[0].x, b[0].x);
    EXPECT_NE(a[0].x, c[0].x);
    EXPECT_NE(a[0].x, x[0].x);

    // Displacement statistics at sigma = 0.25.
    const std::vector<Vec3> big(20000, Vec3{0, 0, 0});
    const auto moved = perturb_protein(big, 4, 0.25);
    double var = 0.0;
    for (const Vec3& p : moved) var += p.norm_sq();
    var /= static_cast<double>(3 * big.size());
    EXPECT_NEAR(var, 0.0625, 0.0625 * 0.05);
}

TEST(Losses, CoordinateAndTypeLoss) {
    ScoreTarget st;
    st.target = {{1, 0, 0}, {0, 2, 0}};
    st.weight = 0.5;
    EXPECT_DOUBLE_EQ(coordinate_loss(st.target, st), 0.0);
    const std::vector<Vec3> pred = {{2, 0, 0}, {0, 0, 0}};
    // Squared errors: 1 and 4, weighted by 0.5.
    EXPECT_DOUBLE_EQ(coordinate_loss(pred, st), 0.5 * 5.0);
    EXPECT_THROW(coordinate_loss({{1, 0, 0}}, st), Error);

    // Uniform logits: cross-entropy is log K.
    EXPECT_NEAR(type_cross_entropy({0.0, 0.0}, 0, 1.0), std::log(2.0), 1e-12);
    // Shifted logits leave the softmax unchanged.
    EXPECT_NEAR(type_cross_entropy({1000.0, 1000.0}, 1, 1.0), std::log(2.0), 1e-12);
    const double direct =
        std::log(std::exp(1.0) + std::exp(2.0) + std::exp(3.0)) - 3.0;
    EXPECT_NEAR(type_cross_entropy({1.0, 2.0, 3.0}, 2, 2.0), 2.0 * direct, 1e-12);
    EXPECT_DOUBLE_EQ(type_cross_entropy({1.0, 2.0}, 0, 0.0), 0.0);
    EXPECT_THROW(type_cross_entropy({1.0, 2.0}, 2, 1.0), Error);
}

TEST(ScheduleNames, RoundTrip) {
    for (ScheduleKind kind :
         {ScheduleKind::LinearBeta, ScheduleKind::Cosine, ScheduleKind::Sigmoid}) {
        const auto back = schedule_kind_from_name(schedule_kind_name(kind));
        ASSERT_TRUE(back.has_value());
        EXPECT_EQ(*back, kind);
    }
    EXPECT_EQ(schedule_kind_from_name("linear"), ScheduleKind::LinearBeta);
    EXPECT_FALSE(schedule_kind_from_name("quadratic").has_value());
}

}  // namespace
}  // namespace posekit
