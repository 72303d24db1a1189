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

#include <algorithm>
#include <cmath>
#include <vector>

#include "atom_types.hpp"
#include "energy.hpp"
#include "error.hpp"
#include "rng.hpp"
#include "testutil.hpp"

namespace posekit {
namespace {

using testutil::brute_force_energy;
using testutil::positions_of;
using testutil::random_ligand;
using testutil::random_pocket;

TEST(PairTerms, FrozenValues) {
    AtomType plain;
    plain.vdw_radius = 1.9;
    AtomType hydro = plain;
    hydro.is_hydrophobic = true;
    AtomType donor = plain;
    donor.is_donor = true;
    AtomType acceptor = plain;
    acceptor.is_acceptor = true;

    // d = 0: the steric Gaussian peaks, the repulsion is off.
    auto t = pair_terms(0.0, plain, plain);
    EXPECT_DOUBLE_EQ(t[0], 1.0);
    EXPECT_DOUBLE_EQ(t[1], std::exp(-2.25));
    EXPECT_DOUBLE_EQ(t[2], 0.0);
    EXPECT_DOUBLE_EQ(t[3], 0.0);  // needs a hydrophobic pair
    EXPECT_DOUBLE_EQ(t[4], 0.0);

    // d = -0.5: quadratic clash, half-strength hydrogen-bond ramp.
    t = pair_terms(-0.5, donor, acceptor);
    EXPECT_DOUBLE_EQ(t[2], 0.25);
    EXPECT_NEAR(t[4], 0.5 / 0.7, 1e-12);

    // d = -0.7 and below saturate the hydrogen-bond ramp.
    t = pair_terms(-0.7, donor, acceptor);
    EXPECT_DOUBLE_EQ(t[4], 1.0);
    t = pair_terms(-1.2, acceptor, donor);  // symmetric in the pair
    EXPECT_DOUBLE_EQ(t[4], 1.0);
    t = pair_terms(-0.2, donor, donor);  // donor/donor does not bond
    EXPECT_DOUBLE_EQ(t[4], 0.0);

    // Hydrophobic ramp: 1 at 0.5, linear to 0 at 1.5.
    t = pair_terms(0.5, hydro, hydro);
    EXPECT_DOUBLE_EQ(t[3], 1.0);
    t = pair_terms(1.0, hydro, hydro);
    EXPECT_DOUBLE_EQ(t[3], 0.5);
    t = pair_terms(1.5, hydro, hydro);
    EXPECT_DOUBLE_EQ(t[3], 0.0);

    // d = 3 peaks the long-range Gaussian.
    t = pair_terms(3.0, plain, plain);
    EXPECT_DOUBLE_EQ(t[1], 1.0);
    EXPECT_NEAR(t[0], std::exp(-36.0), 1e-300);
}

TEST(CellList, MatchesBruteForceNeighbors) {
    SeededRng rng(11);
    for (int round = 0; round < 20; ++round) {
        const size_t n = 5 + rng.uniform_index(120);
        std::vector<Vec3> points;
        for (size_t i = 0; i < n; ++i)
            points.push_back({rng.uniform(-12, 12), rng.uniform(-12, 12), rng.uniform(-12, 12)});
        const CellList cells(points, 8.0);

        for (int q = 0; q < 10; ++q) {
            const Vec3 query{rng.uniform(-14, 14), rng.uniform(-14, 14), rng.uniform(-14, 14)};
            const double radius = rng.uniform(0.5, 8.0);
            std::vector<size_t> got;
            cells.gather_within(query, radius, got);

            std::vector<size_t> expected;
            for (size_t i = 0; i < n; ++i)
                if (distance(query, points[i]) < radius) expected.push_back(i);
            EXPECT_EQ(got, expected);
            EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
        }
    }
}

TEST(EnergyModel, MatchesBruteForce) {
    SeededRng rng(23);
    for (int round = 0; round < 50; ++round) {
        PocketStructure pocket = random_pocket(rng, 20 + rng.uniform_index(80), -9, 9, 0.15);
        const auto pocket_types = assign_receptor_types(pocket);
        const MolecularGraph ligand = random_ligand(rng, 4 + rng.uniform_index(20));
        const auto ligand_types = assign_ligand_types(ligand);

        const EnergyModel model(pocket, pocket_types);
        const auto coords = positions_of(ligand);
        const EnergyBreakdown fast = model.evaluate(ligand, ligand_types, coords);
        const auto brute = brute_force_energy(pocket, pocket_types, ligand, ligand_types, coords,
                                              kDefaultEnergyWeights);

        EXPECT_EQ(fast.pair_count, brute.pairs);
        const double scale = std::max(1.0, std::abs(brute.total));
        EXPECT_NEAR(fast.total, brute.total, 1e-9 * scale);
        EXPECT_NEAR(fast.e_g1, brute.terms[0], 1e-9 * std::max(1.0, brute.terms[0]));
        EXPECT_NEAR(fast.e_rep, brute.terms[2], 1e-9 * std::max(1.0, brute.terms[2]));
        EXPECT_NEAR(fast.e_hyd, brute.terms[3], 1e-9 * std::max(1.0, brute.terms[3]));
        EXPECT_NEAR(fast.e_hd, brute.terms[4], 1e-9 * std::max(1.0, brute.terms[4]));
    }
}

TEST(EnergyModel, StrictCutoffBoundary) {
    // Two carbons exactly 8 apart contribute nothing; a hair closer
    // they count. vdw radii cancel out of the inclusion rule, which is
    // on the center distance.
    PocketStructure pocket;
    pocket.atoms.push_back(testutil::pocket_atom("CB", ResidueCode::ALA, Element::C, {0, 0, 0}));
    const auto pocket_types = assign_receptor_types(pocket);

    MolecularGraph ligand;
    Atom a;
    a.element = Element::C;
    ligand.atoms.push_back(a);
    const auto ligand_types = assign_ligand_types(ligand);
    const EnergyModel model(pocket, pocket_types);

    EXPECT_EQ(model.evaluate(ligand, ligand_types, {{8.0, 0, 0}}).pair_count, 0u);
    EXPECT_EQ(model.evaluate(ligand, ligand_types, {{8.0 - 1e-9, 0, 0}}).pair_count, 1u);
    EXPECT_EQ(model.evaluate(ligand, ligand_types, {{0, 7.999, 0}}).pair_count, 1u);
}

TEST(EnergyModel, ExcludesWatersAndHydrogens) {
    SeededRng rng(5);
    PocketStructure pocket = random_pocket(rng, 30, -6, 6, 0.0);
    PocketStructure with_water = pocket;
    with_water.atoms.push_back(
        testutil::pocket_atom("O", ResidueCode::WAT, Element::O, {0.5, 0.5, 0.5}));

    MolecularGraph ligand = random_ligand(rng, 8);
    MolecularGraph with_h = ligand;
    Atom h;
    h.element = Element::H;
    h.position = {0.2, 0.1, 0.0};
    with_h.atoms.push_back(h);

    const auto pt1 = assign_receptor_types(pocket);
    auto pocket2 = with_water;
    const auto pt2 = assign_receptor_types(pocket2);
    const auto lt1 = assign_ligand_types(ligand);
    const auto lt2 = assign_ligand_types(with_h);

    const double base =
        EnergyModel(pocket, pt1).evaluate(ligand, lt1, positions_of(ligand)).total;
    const double watered =
        EnergyModel(pocket2, pt2).evaluate(ligand, lt1, positions_of(ligand)).total;
    const double hydrogenated =
        EnergyModel(pocket, pt1).evaluate(with_h, lt2, positions_of(with_h)).total;

    EXPECT_DOUBLE_EQ(base, watered);
    EXPECT_DOUBLE_EQ(base, hydrogenated);
    EXPECT_EQ(EnergyModel(pocket2, pt2).active_atom_count(), pocket.atoms.size());
}

TEST(EnergyModel, EmptySidesAreDomainErrors) {
    SeededRng rng(9);
    PocketStructure pocket = random_pocket(rng, 10);
    const auto pocket_types = assign_receptor_types(pocket);
    const EnergyModel model(pocket, pocket_types);

    MolecularGraph empty;
    EXPECT_THROW(model.evaluate(empty, {}, {}), DomainError);

    MolecularGraph all_h;
    Atom h;
    h.element = Element::H;
    all_h.atoms.push_back(h);
    EXPECT_THROW(model.evaluate(all_h, assign_ligand_types(all_h), positions_of(all_h)),
                 DomainError);

    PocketStructure waters_only;
    waters_only.atoms.push_back(
        testutil::pocket_atom("O", ResidueCode::WAT, Element::O, {0, 0, 0}));
    auto wt = assign_receptor_types(waters_only);
    const EnergyModel empty_model(waters_only, wt);
    MolecularGraph lig = random_ligand(rng, 3);
    EXPECT_THROW(empty_model.evaluate(lig, assign_ligand_types(lig), positions_of(lig)),
                 DomainError);
}

TEST(EnergyModel, JointTransformInvariance) {
    SeededRng rng(31);
    for (int round = 0; round < 10; ++round) {
        PocketStructure pocket = random_pocket(rng, 40);
        const MolecularGraph ligand = random_ligand(rng, 10);
        const auto lt = assign_ligand_types(ligand);

        auto p1 = pocket;
        const auto pt1 = assign_receptor_types(p1);
        const double before =
            EnergyModel(p1, pt1).evaluate(ligand, lt, positions_of(ligand)).total;

        const Vec3 shift{rng.uniform(-20, 20), rng.uniform(-20, 20), rng.uniform(-20, 20)};
        PocketStructure moved = pocket;
        for (Atom& a : moved.atoms) a.position += shift;
        std::vector<Vec3> moved_coords = positions_of(ligand);
        for (Vec3& c : moved_coords) c += shift;

        const auto pt2 = assign_receptor_types(moved);
        const double after = EnergyModel(moved, pt2).evaluate(ligand, lt, moved_coords).total;
        EXPECT_NEAR(before, after, 1e-9 * std::max(1.0, std::abs(before)));
    }
}

TEST(EnergyModel, CustomWeightsApply) {
    SeededRng rng(41);
    PocketStructure pocket = random_pocket(rng, 25);
    const auto pt = assign_receptor_types(pocket);
    const MolecularGraph ligand = random_ligand(rng, 6);
    const auto lt = assign_ligand_types(ligand);

    const std::array<double, 5> doubled = {
        2 * kDefaultEnergyWeights[0], 2 * kDefaultEnergyWeights[1], 2 * kDefaultEnergyWeights[2],
        2 * kDefaultEnergyWeights[3], 2 * kDefaultEnergyWeights[4]};
    const double base =
        EnergyModel(pocket, pt).evaluate(ligand, lt, positions_of(ligand)).total;
    const double scaled =
        EnergyModel(pocket, pt, doubled).evaluate(ligand, lt, positions_of(ligand)).total;
    EXPECT_NEAR(scaled, 2.0 * base, 1e-12 * std::max(1.0, std::abs(base)));
}

}  // namespace
}  // namespace posekit
