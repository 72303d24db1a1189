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

#ifndef POSEKIT_REFINE_HPP
#define POSEKIT_REFINE_HPP

#include <functional>
#include <string>
#include <vector>

#include "energy.hpp"
#include "rigid.hpp"

namespace posekit {

using PoseObjective = std::function<double(const Vector6&)>;

struct RefineOptions {
    size_t max_iterations = 100;  // update steps; one extra evaluation closes the trace
    double step = 0.1;            // fixed multiplier on the search direction, no line search
    double epsilon = 1e-3;        // finite-difference probe length
    size_t memory = 5;            // stored curvature pairs
    double gradient_tolerance = 1e-6;  // stop when the gradient inf-norm falls below
    bool central_differences = false;
};

// Forward differences g_i = (E(u + eps e_i) - E(u)) / eps, seven
// evaluations; the central flag switches to (E(u + eps e_i) -
// E(u - eps e_i)) / (2 eps), twelve evaluations. Throws EvalError with
// the probe index (0-5, 6 for the base point) when an evaluation is
// non-finite.
Vector6 fd_gradient(const PoseObjective& objective, const Vector6& u, double eps = 1e-3,
                    bool central = false);

struct MinimizeResult {
    Vector6 best_u{};
    double best_energy = 0.0;
    // Raw objective value at each evaluated iterate (index 0 is u0) and
    // the running minimum over them, which is nonincreasing.
    std::vector<double> iterate_energies;
    std::vector<double> best_trace;
    size_t iterations_used = 0;
    bool aborted = false;
    size_t abort_probe = 0;
    std::string abort_message;
};

// L-BFGS with two-loop recursion, fixed step, and best-iterate
// tracking. Curvature pairs with s.y <= 1e-10 are skipped; with no
// stored pairs the direction is the raw gradient. A non-finite
// evaluation aborts with the trace collected so far.
MinimizeResult lbfgs_minimize(const PoseObjective& objective, const Vector6& u0,
                              const RefineOptions& options);

struct RefineResult {
    RigidPose initial_pose;
    RigidPose best_pose;
    double e_init = 0.0;
    double e_opt = 0.0;
    bool accepted = false;
    size_t iterations_used = 0;
    std::vector<double> iterate_energies;
    std::vector<double> energy_trace;  // best-so-far, nonincreasing
    bool aborted = false;
    std::string abort_message;
};

// Rigid refinement of the ligand pose against the pocket energy,
// starting from u = 0 (the input placement) and rotating about the
// ligand heavy-atom centroid. The best-evaluated pose is returned when
// its energy does not exceed the initial one (always true for clean
// runs, since the initial iterate is part of the trace); an aborted run
// keeps the initial pose and reports accepted = false.
RefineResult refine_pose(const EnergyModel& model, const MolecularGraph& ligand,
                         const std::vector<AtomType>& ligand_types,
                         const RefineOptions& options = {});

}  // namespace posekit

#endif
