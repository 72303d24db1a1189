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

#include "diffusion.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "rng.hpp"

namespace posekit {

std::string_view schedule_kind_name(ScheduleKind kind) {
    switch (kind) {
        case ScheduleKind::LinearBeta: return "linear-beta";
        case ScheduleKind::Cosine: return "cosine";
        case ScheduleKind::Sigmoid: return "sigmoid";
    }
    return "?";
}

std::optional<ScheduleKind> schedule_kind_from_name(std::string_view name) {
    if (name == "linear-beta" || name == "linear") return ScheduleKind::LinearBeta;
    if (name == "cosine") return ScheduleKind::Cosine;
    if (name == "sigmoid") return ScheduleKind::Sigmoid;
    return std::nullopt;
}

namespace {

std::vector<double> make_alphas(size_t steps, ScheduleKind kind, const ScheduleParams& p) {
    std::vector<double> alpha(steps + 1, 1.0);
    const double n = steps > 1 ? static_cast<double>(steps - 1) : 1.0;
    switch (kind) {
        case ScheduleKind::LinearBeta:
            for (size_t t = 1; t <= steps; ++t) {
                const double frac = static_cast<double>(t - 1) / n;
                alpha[t] = 1.0 - (p.beta_start + (p.beta_end - p.beta_start) * frac);
            }
            break;
        case ScheduleKind::Sigmoid:
            for (size_t t = 1; t <= steps; ++t) {
                const double z = -6.0 + 12.0 * static_cast<double>(t - 1) / n;
                const double beta =
                    p.beta_start + (p.beta_end - p.beta_start) / (1.0 + std::exp(-z));
                alpha[t] = 1.0 - beta;
            }
            break;
        case ScheduleKind::Cosine: {
            auto f = [&p, steps](size_t t) {
                const double u = (static_cast<double>(t) / static_cast<double>(steps) +
                                  p.cosine_s) /
                                 (1.0 + p.cosine_s) * M_PI / 2.0;
                return std::cos(u) * std::cos(u);
            };
            const double f0 = f(0);
            double prev_bar = 1.0;
            for (size_t t = 1; t <= steps; ++t) {
                const double bar = f(t) / f0;
                const double beta = std::min(0.999, 1.0 - bar / prev_bar);
                alpha[t] = 1.0 - beta;
                prev_bar = bar;
            }
            break;
        }
    }
    return alpha;
}

}  // namespace

VarianceSchedule make_schedule(size_t steps, ScheduleKind kind, const ScheduleParams& params) {
    if (steps < 1) throw DomainError("schedule needs at least one step");

    VarianceSchedule s;
    s.steps = steps;
    s.alpha = make_alphas(steps, kind, params);
    for (size_t t = 1; t <= steps; ++t)
        if (!(s.alpha[t] > 0.0) || !(s.alpha[t] < 1.0))
            throw DomainError("schedule parameters yield alpha outside (0, 1) at step " +
                              std::to_string(t));

    s.alpha_bar.resize(steps + 1);
    s.sigma_sq.resize(steps + 1);
    s.lambda.resize(steps + 1);
    s.gamma.resize(steps + 1);
    s.alpha_bar[0] = 1.0;
    s.sigma_sq[0] = 0.0;
    s.lambda[0] = 0.0;
    s.gamma[0] = 0.0;
    for (size_t t = 1; t <= steps; ++t) {
        s.alpha_bar[t] = s.alpha_bar[t - 1] * s.alpha[t];
        s.sigma_sq[t] = 1.0 - s.alpha[t];
        s.lambda[t] = s.sigma_sq[t] / (s.alpha[t] * s.alpha[t]);
        s.gamma[t] = 1.0 - s.alpha_bar[t];
    }
    return s;
}

namespace {

void check_step(size_t t, const VarianceSchedule& schedule, size_t min_t) {
    if (t < min_t || t > schedule.steps)
        throw DomainError("step " + std::to_string(t) + " outside schedule range [" +
                          std::to_string(min_t) + ", " + std::to_string(schedule.steps) + "]");
}

}  // namespace

NoisedCoordinates noise_coordinates(const std::vector<Vec3>& x0, size_t t,
                                    const VarianceSchedule& schedule, uint64_t seed) {
    check_step(t, schedule, 0);
    const double scale = std::sqrt(schedule.alpha_bar[t]);
    const double spread = std::sqrt(1.0 - schedule.alpha_bar[t]);

    NoisedCoordinates out;
    out.x_t.reserve(x0.size());
    out.noise.reserve(x0.size());
    SeededRng rng(seed);
    for (const Vec3& x : x0) {
        const Vec3 eps{rng.normal(), rng.normal(), rng.normal()};
        out.noise.push_back(eps);
        out.x_t.push_back(x * scale + eps * spread);
    }
    return out;
}

std::vector<double> type_noise_probs(const std::vector<double>& v0, double alpha_bar) {
    if (v0.empty()) throw DomainError("type vector is empty");
    size_t ones = 0;
    for (double x : v0) {
        if (x == 1.0)
            ++ones;
        else if (x != 0.0)
            throw DomainError("type vector is not one-hot");
    }
    if (ones != 1) throw DomainError("type vector is not one-hot");

    const double k = static_cast<double>(v0.size());
    std::vector<double> p(v0.size());
    for (size_t i = 0; i < v0.size(); ++i) p[i] = alpha_bar * v0[i] + (1.0 - alpha_bar) / k;
    return p;
}

NoisedType noise_types(const std::vector<double>& v0, size_t t, const VarianceSchedule& schedule,
                       uint64_t seed) {
    check_step(t, schedule, 0);
    NoisedType out;
    out.probs = type_noise_probs(v0, schedule.alpha_bar[t]);

    SeededRng rng(seed);
    const double u = rng.uniform01();
    double cum = 0.0;
    out.sample = out.probs.size() - 1;
    for (size_t i = 0; i < out.probs.size(); ++i) {
        cum += out.probs[i];
        if (u < cum) {
            out.sample = i;
            break;
        }
    }
    return out;
}

std::vector<Vec3> perturb_protein(const std::vector<Vec3>& x, uint64_t seed, double sigma) {
    if (sigma == 0.0) return x;
    std::vector<Vec3> out;
    out.reserve(x.size());
    SeededRng rng(seed);
    for (const Vec3& p : x)
        out.push_back(p + Vec3{rng.normal(), rng.normal(), rng.normal()} * sigma);
    return out;
}

ScoreTarget score_targets(const std::vector<Vec3>& x0, const std::vector<Vec3>& x_t, size_t t,
                          const VarianceSchedule& schedule) {
    check_step(t, schedule, 1);
    if (x0.size() != x_t.size()) throw Error("coordinate arrays differ in length");

    const double scale = std::sqrt(schedule.alpha_bar[t]);
    const double var = 1.0 - schedule.alpha_bar[t];
    ScoreTarget out;
    out.weight = schedule.lambda[t];
    out.target.reserve(x0.size());
    for (size_t i = 0; i < x0.size(); ++i)
        out.target.push_back((x_t[i] - x0[i] * scale) * (-1.0 / var));
    return out;
}

double coordinate_loss(const std::vector<Vec3>& prediction, const ScoreTarget& target) {
    if (prediction.size() != target.target.size())
        throw Error("prediction length does not match target");
    double sum = 0.0;
    for (size_t i = 0; i < prediction.size(); ++i)
        sum += (prediction[i] - target.target[i]).norm_sq();
    return target.weight * sum;
}

double type_cross_entropy(const std::vector<double>& logits, size_t true_index, double gamma) {
    if (true_index >= logits.size()) throw Error("class index out of range");
    const double max_logit = *std::max_element(logits.begin(), logits.end());
    double denom = 0.0;
    for (double z : logits) denom += std::exp(z - max_logit);
    return gamma * (std::log(denom) - (logits[true_index] - max_logit));
}

}  // namespace posekit
