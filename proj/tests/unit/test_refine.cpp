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
#include <limits>
#include <vector>

#include "atom_types.hpp"
#include "error.hpp"
#include "refine.hpp"
#include "rng.hpp"
#include "testutil.hpp"

namespace posekit {
namespace {

using testutil::positions_of;
using testutil::random_ligand;
using testutil::random_pocket;

double norm6(const Vector6& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

TEST(FdGradient, EvaluationBudget) {
    size_t evals = 0;
    const PoseObjective quadratic = [&evals](const Vector6& u) {
        ++evals;
        double s = 0.0;
        for (double x : u) s += x * x;
        return s;
    };
    const Vector6 u0 = {0.1, -0.2, 0.3, 0.0, 0.4, -0.5};

    evals = 0;
    fd_gradient(quadratic, u0, 1e-3, false);
    EXPECT_EQ(evals, 7u);  // base + six probes

    evals = 0;
    fd_gradient(quadratic, u0, 1e-3, true);
    EXPECT_EQ(evals, 12u);  // two probes per component, no base
}

TEST(FdGradient, ForwardAndCentralAccuracy) {
    const Vector6 u0 = {0.3, -0.1, 0.7, 0.2, -0.4, 0.5};
    const PoseObjective smooth = [](const Vector6& u) {
        double s = 0.0;
        for (size_t i = 0; i < 6; ++i)
            s += 0.4 * (u[i] - 0.2 * static_cast<double>(i)) * (u[i] - 0.2 * static_cast<double>(i)) +
                 0.1 * std::cos(1.3 * u[i]);
        return s;
    };
    auto analytic = [](const Vector6& u) {
        Vector6 g;
        for (size_t i = 0; i < 6; ++i)
            g[i] = 0.8 * (u[i] - 0.2 * static_cast<double>(i)) - 0.13 * std::sin(1.3 * u[i]);
        return g;
    };

    const Vector6 g_fwd = fd_gradient(smooth, u0, 1e-3, false);
    const Vector6 g_ctr = fd_gradient(smooth, u0, 1e-5, true);
    const Vector6 g_true = analytic(u0);
    for (size_t i = 0; i < 6; ++i) {
        EXPECT_NEAR(g_ctr[i], g_true[i], 1e-8);
        EXPECT_NEAR(g_fwd[i], g_true[i], 1e-3);  // first-order bias ~ eps/2 * f''
    }

    EXPECT_THROW(fd_gradient(smooth, u0, 0.0, false), Error);
    EXPECT_THROW(fd_gradient(smooth, u0, -1.0, true), Error);
}

TEST(FdGradient, EvalErrorCarriesProbeIndex) {
    const Vector6 u0 = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0};

    // Non-finite only when component 3 moves: forward order is base,
    // then probes 0..5, so the failure lands on probe 3.
    const PoseObjective poisoned = [](const Vector6& u) {
        if (u[3] != 0.0) return std::numeric_limits<double>::quiet_NaN();
        return u[0] + u[1];
    };
    try {
        fd_gradient(poisoned, u0, 1e-3, false);
        FAIL() << "expected EvalError";
    } catch (const EvalError& e) {
        EXPECT_EQ(e.probe_index(), 3u);
    }

    // Non-finite everywhere: forward differences die on the base point.
    const PoseObjective always_bad = [](const Vector6&) {
        return std::numeric_limits<double>::infinity();
    };
    try {
        fd_gradient(always_bad, u0, 1e-3, false);
        FAIL() << "expected EvalError";
    } catch (const EvalError& e) {
        EXPECT_EQ(e.probe_index(), 6u);
    }
    try {
        fd_gradient(always_bad, u0, 1e-3, true);
        FAIL() << "expected EvalError";
    } catch (const EvalError& e) {
        EXPECT_EQ(e.probe_index(), 0u);
    }
}

TEST(Lbfgs, ConvergesOnQuadraticBowl) {
    SeededRng rng(71);
    for (int round = 0; round < 10; ++round) {
        Vector6 target;
        Vector6 scale;
        for (size_t i = 0; i < 6; ++i) {
            target[i] = rng.uniform(-0.5, 0.5);
            scale[i] = rng.uniform(0.5, 1.5);
        }
        const PoseObjective bowl = [&](const Vector6& u) {
            double s = 0.0;
            for (size_t i = 0; i < 6; ++i)
                s += 0.5 * scale[i] * (u[i] - target[i]) * (u[i] - target[i]);
            return s;
        };

        RefineOptions options;
        options.central_differences = true;
        const MinimizeResult result = lbfgs_minimize(bowl, Vector6{}, options);
        EXPECT_FALSE(result.aborted);

        Vector6 err = result.best_u;
        for (size_t i = 0; i < 6; ++i) err[i] -= target[i];
        EXPECT_LT(norm6(err), 1e-4) << "round " << round;
        EXPECT_LE(result.iterations_used, options.max_iterations);

        ASSERT_FALSE(result.best_trace.empty());
        for (size_t k = 1; k < result.best_trace.size(); ++k)
            EXPECT_LE(result.best_trace[k], result.best_trace[k - 1]);
        EXPECT_EQ(result.best_trace.size(), result.iterate_energies.size());
    }
}

TEST(Lbfgs, GradientToleranceStopsEarly) {
    const PoseObjective flat = [](const Vector6&) { return 1.0; };
    RefineOptions options;
    const MinimizeResult result = lbfgs_minimize(flat, Vector6{}, options);
    // The very first gradient is zero, so no update step runs.
    EXPECT_EQ(result.iterations_used, 0u);
    EXPECT_EQ(result.iterate_energies.size(), 1u);
    EXPECT_DOUBLE_EQ(result.best_energy, 1.0);
}

TEST(Lbfgs, EvaluationOnlyMode) {
    size_t evals = 0;
    const PoseObjective counting = [&evals](const Vector6& u) {
        ++evals;
        return u[0] * u[0] + 2.0;
    };
    RefineOptions options;
    options.max_iterations = 0;
    const MinimizeResult result = lbfgs_minimize(counting, Vector6{}, options);
    EXPECT_EQ(evals, 1u);
    EXPECT_EQ(result.iterations_used, 0u);
    EXPECT_DOUBLE_EQ(result.best_energy, 2.0);
    ASSERT_EQ(result.iterate_energies.size(), 1u);
}

TEST(Lbfgs, AbortKeepsPartialTrace) {
    size_t evals = 0;
    const PoseObjective fragile = [&evals](const Vector6& u) {
        ++evals;
        if (evals > 20) return std::numeric_limits<double>::quiet_NaN();
        double s = 0.0;
        for (size_t i = 0; i < 6; ++i) s += (u[i] - 0.3) * (u[i] - 0.3);
        return s;
    };
    const MinimizeResult result = lbfgs_minimize(fragile, Vector6{}, RefineOptions{});
    EXPECT_TRUE(result.aborted);
    EXPECT_FALSE(result.iterate_energies.empty());
    EXPECT_FALSE(result.abort_message.empty());
}

TEST(RefinePose, NeverWorseOnRandomFixtures) {
    SeededRng rng(83);
    RefineOptions options;
    options.max_iterations = 12;  // enough to move, fast enough to repeat
    for (int round = 0; round < 40; ++round) {
        PocketStructure pocket = random_pocket(rng, 25 + rng.uniform_index(40), -7, 7, 0.1);
        const auto pt = assign_receptor_types(pocket);
        const MolecularGraph ligand = random_ligand(rng, 4 + rng.uniform_index(10));
        const auto lt = assign_ligand_types(ligand);
        const EnergyModel model(pocket, pt);

        const RefineResult result = refine_pose(model, ligand, lt, options);
        EXPECT_FALSE(result.aborted);
        EXPECT_TRUE(result.accepted);
        EXPECT_LE(result.e_opt, result.e_init);

        // The reported energies match re-evaluation of the poses.
        const double recomputed =
            model.evaluate(ligand, lt, apply_pose(result.best_pose, positions_of(ligand))).total;
        EXPECT_NEAR(recomputed, result.e_opt, 1e-9 * std::max(1.0, std::abs(result.e_opt)));

        ASSERT_FALSE(result.energy_trace.empty());
        EXPECT_DOUBLE_EQ(result.energy_trace.back(), result.e_opt);
        for (size_t k = 1; k < result.energy_trace.size(); ++k)
            EXPECT_LE(result.energy_trace[k], result.energy_trace[k - 1]);
    }
}

TEST(RefinePose, RotationAboutHeavyCentroid) {
    // A ligand with one heavy atom away from a hydrogen: the centroid
    // is the heavy atom, so rotations leave it fixed and only
    // translation can change the energy.
    PocketStructure pocket;
    pocket.atoms.push_back(testutil::pocket_atom("CB", ResidueCode::ALA, Element::C, {6, 0, 0}));
    const auto pt = assign_receptor_types(pocket);

    MolecularGraph ligand;
    Atom heavy;
    heavy.element = Element::C;
    heavy.position = {0, 0, 0};
    Atom hydrogen;
    hydrogen.element = Element::H;
    hydrogen.position = {1, 0, 0};
    ligand.atoms = {heavy, hydrogen};
    const auto lt = assign_ligand_types(ligand);
    const EnergyModel model(pocket, pt);

    RefineOptions options;
    options.max_iterations = 0;
    const RefineResult still = refine_pose(model, ligand, lt, options);
    EXPECT_EQ(still.iterations_used, 0u);
    EXPECT_DOUBLE_EQ(still.e_init, still.e_opt);
    EXPECT_TRUE(still.accepted);

    const Vec3 c = still.best_pose.rotation_center;
    EXPECT_DOUBLE_EQ(c.x, 0.0);  // hydrogen does not pull the centroid
    EXPECT_DOUBLE_EQ(c.y, 0.0);
    EXPECT_DOUBLE_EQ(c.z, 0.0);
}

TEST(RefinePose, NonFiniteEnergyAbortsToInitialPose) {
    SeededRng rng(89);
    PocketStructure pocket = random_pocket(rng, 15);
    const auto pt = assign_receptor_types(pocket);
    const MolecularGraph ligand = random_ligand(rng, 5);
    const auto lt = assign_ligand_types(ligand);

    const std::array<double, 5> poisoned = {std::numeric_limits<double>::quiet_NaN(), 0, 0, 0, 0};
    const EnergyModel model(pocket, pt, poisoned);

    const RefineResult result = refine_pose(model, ligand, lt, RefineOptions{});
    EXPECT_TRUE(result.aborted);
    EXPECT_FALSE(result.accepted);
    for (size_t i = 0; i < 6; ++i) EXPECT_DOUBLE_EQ(result.best_pose.u[i], 0.0);

    const auto unchanged = apply_pose(result.best_pose, positions_of(ligand));
    for (size_t i = 0; i < unchanged.size(); ++i) {
        EXPECT_DOUBLE_EQ(unchanged[i].x, ligand.atoms[i].position.x);
        EXPECT_DOUBLE_EQ(unchanged[i].y, ligand.atoms[i].position.y);
        EXPECT_DOUBLE_EQ(unchanged[i].z, ligand.atoms[i].position.z);
    }
}

TEST(RefinePose, DescendsTowardIsolatedMinimum) {
    // One pocket carbon, one ligand carbon on the x axis: the energy is
    // a 1-D curve in the gap distance with its well at contact.
    PocketStructure pocket;
    pocket.atoms.push_back(testutil::pocket_atom("CB", ResidueCode::ALA, Element::C, {0, 0, 0}));
    const auto pt = assign_receptor_types(pocket);

    MolecularGraph ligand;
    Atom a;
    a.element = Element::C;
    a.position = {4.5, 0.0, 0.0};
    ligand.atoms.push_back(a);
    const auto lt = assign_ligand_types(ligand);
    const EnergyModel model(pocket, pt);

    const RefineResult result = refine_pose(model, ligand, lt, RefineOptions{});
    EXPECT_TRUE(result.accepted);
    EXPECT_LT(result.e_opt, result.e_init - 1e-3);  // real progress, not a tie

    const Vec3 final_pos = apply_pose(result.best_pose, positions_of(ligand))[0];
    EXPECT_LT(distance(final_pos, Vec3{0, 0, 0}), 4.5);
}

}  // namespace
}  // namespace posekit
