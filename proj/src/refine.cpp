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

#include "refine.hpp"

#include <cmath>
#include <deque>
#include <limits>

#include "error.hpp"

namespace posekit {

namespace {

Vector6 axpy(const Vector6& x, double a, const Vector6& y) {
    Vector6 out;
    for (size_t i = 0; i < 6; ++i) out[i] = x[i] + a * y[i];
    return out;
}

double dot(const Vector6& a, const Vector6& b) {
    double s = 0.0;
    for (size_t i = 0; i < 6; ++i) s += a[i] * b[i];
    return s;
}

double inf_norm(const Vector6& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

double checked_eval(const PoseObjective& objective, const Vector6& u, size_t probe) {
    const double value = objective(u);
    if (!std::isfinite(value))
        throw EvalError("objective returned a non-finite value", probe);
    return value;
}

Vector6 gradient_with_base(const PoseObjective& objective, const Vector6& u, double base,
                           double eps, bool central) {
    Vector6 g{};
    for (size_t i = 0; i < 6; ++i) {
        Vector6 probe = u;
        probe[i] += eps;
        const double forward = checked_eval(objective, probe, i);
        if (central) {
            probe[i] = u[i] - eps;
            const double backward = checked_eval(objective, probe, i);
            g[i] = (forward - backward) / (2.0 * eps);
        } else {
            g[i] = (forward - base) / eps;
        }
    }
    return g;
}

struct CurvaturePair {
    Vector6 s;
    Vector6 y;
    double rho;
};

Vector6 two_loop_direction(const Vector6& g, const std::deque<CurvaturePair>& pairs) {
    Vector6 q = g;
    std::vector<double> alpha(pairs.size());
    for (size_t n = pairs.size(); n-- > 0;) {
        alpha[n] = pairs[n].rho * dot(pairs[n].s, q);
        q = axpy(q, -alpha[n], pairs[n].y);
    }
    if (!pairs.empty()) {
        const CurvaturePair& last = pairs.back();
        const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
        for (double& x : q) x *= gamma;
    }
    for (size_t n = 0; n < pairs.size(); ++n) {
        const double beta = pairs[n].rho * dot(pairs[n].y, q);
        q = axpy(q, alpha[n] - beta, pairs[n].s);
    }
    return q;
}

}  // namespace

Vector6 fd_gradient(const PoseObjective& objective, const Vector6& u, double eps, bool central) {
    if (!(eps > 0.0)) throw Error("finite-difference step must be positive");
    const double base = central ? 0.0 : checked_eval(objective, u, 6);
    return gradient_with_base(objective, u, base, eps, central);
}

MinimizeResult lbfgs_minimize(const PoseObjective& objective, const Vector6& u0,
                              const RefineOptions& options) {
    if (!(options.epsilon > 0.0)) throw Error("finite-difference step must be positive");
    if (!(options.step > 0.0)) throw Error("learning rate must be positive");

    MinimizeResult result;
    result.best_u = u0;
    result.best_energy = std::numeric_limits<double>::infinity();

    Vector6 u = u0;
    std::deque<CurvaturePair> pairs;
    Vector6 prev_u{};
    Vector6 prev_g{};
    bool have_prev = false;

    try {
        for (size_t k = 0;; ++k) {
            const double energy = checked_eval(objective, u, 6);
            result.iterate_energies.push_back(energy);
            if (energy < result.best_energy) {
                result.best_energy = energy;
                result.best_u = u;
            }
            result.best_trace.push_back(result.best_energy);
            if (k == options.max_iterations) break;

            const Vector6 g = gradient_with_base(objective, u, energy, options.epsilon,
                                                 options.central_differences);
            if (inf_norm(g) < options.gradient_tolerance) break;

            if (have_prev) {
                CurvaturePair pair;
                pair.s = axpy(u, -1.0, prev_u);
                pair.y = axpy(g, -1.0, prev_g);
                const double sy = dot(pair.s, pair.y);
                if (sy > 1e-10) {
                    pair.rho = 1.0 / sy;
                    pairs.push_back(std::move(pair));
                    if (pairs.size() > options.memory) pairs.pop_front();
                }
            }

            const Vector6 direction = two_loop_direction(g, pairs);
            prev_u = u;
            prev_g = g;
            have_prev = true;
            u = axpy(u, -options.step, direction);
            result.iterations_used = k + 1;
        }
    } catch (const EvalError& e) {
        result.aborted = true;
        result.abort_probe = e.probe_index();
        result.abort_message = e.what();
    }
    return result;
}

RefineResult refine_pose(const EnergyModel& model, const MolecularGraph& ligand,
                         const std::vector<AtomType>& ligand_types,
                         const RefineOptions& options) {
    const Vec3 center = ligand.heavy_centroid();
    std::vector<Vec3> coords;
    coords.reserve(ligand.atoms.size());
    for (const Atom& a : ligand.atoms) coords.push_back(a.position);

    const PoseObjective objective = [&](const Vector6& u) {
        const RigidPose pose = RigidPose::from_vector(u, center);
        return model.evaluate(ligand, ligand_types, apply_pose(pose, coords)).total;
    };

    const MinimizeResult run = lbfgs_minimize(objective, Vector6{}, options);

    RefineResult out;
    out.initial_pose = RigidPose::identity(center);
    out.iterations_used = run.iterations_used;
    out.iterate_energies = run.iterate_energies;
    out.energy_trace = run.best_trace;
    out.aborted = run.aborted;
    out.abort_message = run.abort_message;
    out.e_init = run.iterate_energies.empty() ? std::numeric_limits<double>::quiet_NaN()
                                              : run.iterate_energies.front();
    if (run.aborted) {
        out.best_pose = out.initial_pose;
        out.e_opt = out.e_init;
        out.accepted = false;
        return out;
    }
    out.e_opt = run.best_energy;
    out.accepted = out.e_opt <= out.e_init;
    out.best_pose = out.accepted ? RigidPose::from_vector(run.best_u, center) : out.initial_pose;
    return out;
}

}  // namespace posekit
