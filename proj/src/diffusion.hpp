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

#ifndef POSEKIT_DIFFUSION_HPP
#define POSEKIT_DIFFUSION_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "vec3.hpp"

namespace posekit {

enum class ScheduleKind { LinearBeta, Cosine, Sigmoid };

std::string_view schedule_kind_name(ScheduleKind kind);
std::optional<ScheduleKind> schedule_kind_from_name(std::string_view name);

struct ScheduleParams {
    double beta_start = 1e-4;
    double beta_end = 2e-2;
    double cosine_s = 0.008;  // cosine-schedule offset
};

// Per-step noising quantities, indexed 0..T with the step-0 convention
// alpha_bar[0] = 1 (identity channel):
//   alpha_bar[t] = prod_{s<=t} alpha[s]   (exactly, by construction)
//   sigma_sq[t]  = 1 - alpha[t]
//   lambda[t]    = sigma_sq[t] / alpha[t]^2   (coordinate-loss weight)
//   gamma[t]     = 1 - alpha_bar[t]           (type-loss weight)
struct VarianceSchedule {
    size_t steps = 0;  // T
    std::vector<double> alpha;
    std::vector<double> alpha_bar;
    std::vector<double> sigma_sq;
    std::vector<double> lambda;
    std::vector<double> gamma;
};

// linear-beta: beta linearly spaced from beta_start to beta_end.
// cosine: alpha_bar follows cos^2((t/T + s)/(1 + s) * pi/2), with the
// implied per-step beta clipped at 0.999 and alpha_bar rebuilt from the
// clipped alphas so the product invariant stays exact.
// sigmoid: beta = sigmoid(z) * (beta_end - beta_start) + beta_start for
// z linearly spaced over [-6, 6].
// Throws DomainError when T < 1 or any alpha falls outside (0, 1).
VarianceSchedule make_schedule(size_t steps, ScheduleKind kind, const ScheduleParams& params = {});

struct NoisedCoordinates {
    std::vector<Vec3> x_t;
    std::vector<Vec3> noise;  // the injected standard normals
};

// x_t = sqrt(alpha_bar_t) x0 + sqrt(1 - alpha_bar_t) eps, seeded and
// platform-deterministic. t = 0 returns x0 unchanged. Throws
// DomainError when t > T.
NoisedCoordinates noise_coordinates(const std::vector<Vec3>& x0, size_t t,
                                    const VarianceSchedule& schedule, uint64_t seed);

// p = alpha_bar * v0 + (1 - alpha_bar) / K over K categories. v0 must
// be strictly one-hot (one entry 1, the rest 0).
std::vector<double> type_noise_probs(const std::vector<double>& v0, double alpha_bar);

struct NoisedType {
    size_t sample = 0;
    std::vector<double> probs;
};

NoisedType noise_types(const std::vector<double>& v0, size_t t, const VarianceSchedule& schedule,
                       uint64_t seed);

// x + eps with eps ~ N(0, sigma^2 I) per component; sigma = 0 is the
// exact identity.
std::vector<Vec3> perturb_protein(const std::vector<Vec3>& x, uint64_t seed, double sigma = 0.1);

struct ScoreTarget {
    std::vector<Vec3> target;  // gradient of the log-density of the noising channel
    double weight = 0.0;       // lambda_t
};

// target = -(x_t - sqrt(alpha_bar_t) x0) / (1 - alpha_bar_t), the
// closed-form Gaussian score. Requires 1 <= t <= T.
ScoreTarget score_targets(const std::vector<Vec3>& x0, const std::vector<Vec3>& x_t, size_t t,
                          const VarianceSchedule& schedule);

// weight * sum of squared component errors against the score target.
double coordinate_loss(const std::vector<Vec3>& prediction, const ScoreTarget& target);

// gamma * softmax cross-entropy of the logits against the true class.
double type_cross_entropy(const std::vector<double>& logits, size_t true_index, double gamma);

}  // namespace posekit

#endif
