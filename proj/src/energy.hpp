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

#ifndef POSEKIT_ENERGY_HPP
#define POSEKIT_ENERGY_HPP

#include <array>
#include <vector>

#include "atom_types.hpp"
#include "types.hpp"
#include "vec3.hpp"

namespace posekit {

// Term order: (g1, g2, rep, hyd, hd).
constexpr std::array<double, 5> kDefaultEnergyWeights = {-0.035579, -0.005156, 0.840245,
                                                         -0.035069, -0.587439};

// Pairs beyond this center-to-center distance contribute nothing.
constexpr double kEnergyCutoff = 8.0;

struct EnergyBreakdown {
    double e_g1 = 0.0;
    double e_g2 = 0.0;
    double e_rep = 0.0;
    double e_hyd = 0.0;
    double e_hd = 0.0;
    std::array<double, 5> weights = kDefaultEnergyWeights;
    double total = 0.0;
    size_t pair_count = 0;
};

// Center distance minus the two van der Waals radii; negative inside
// overlap.
inline double surface_distance(double center_distance, const AtomType& ti, const AtomType& tj) {
    return center_distance - ti.vdw_radius - tj.vdw_radius;
}

// Unweighted five-term contact vector at surface distance d:
//   g1  = exp(-(d / 0.5)^2)
//   g2  = exp(-((d - 3) / 2)^2)
//   rep = d^2 for d < 0, else 0
//   hyd = 1 below d = 0.5, 0 above 1.5, linear between (hydrophobic pair)
//   hd  = 1 below d = -0.7, 0 above 0, linear between (donor/acceptor pair)
std::array<double, 5> pair_terms(double d, const AtomType& ti, const AtomType& tj);

// Uniform-grid neighbor index over a fixed point set. Query results are
// produced in ascending point order so accumulation is deterministic.
class CellList {
  public:
    CellList() = default;
    CellList(const std::vector<Vec3>& points, double cell_size);

    // Appends indices of stored points with distance(q, p) < radius;
    // radius must not exceed the cell size.
    void gather_within(const Vec3& q, double radius, std::vector<size_t>& out) const;

    size_t size() const { return points_.size(); }

  private:
    size_t cell_of(int ix, int iy, int iz) const {
        return (static_cast<size_t>(ix) * static_cast<size_t>(ny_) + static_cast<size_t>(iy)) *
                   static_cast<size_t>(nz_) +
               static_cast<size_t>(iz);
    }

    std::vector<Vec3> points_;
    Vec3 origin_;
    double cell_size_ = 1.0;
    int nx_ = 0, ny_ = 0, nz_ = 0;
    std::vector<size_t> cell_start_;  // CSR offsets, size nx*ny*nz + 1
    std::vector<size_t> order_;       // point indices grouped by cell, ascending within
};

// Contact-energy evaluator for one pocket. Receptor waters and all
// hydrogens are excluded up front; evaluation is a pure function of the
// ligand coordinates, so one model can serve many poses concurrently.
class EnergyModel {
  public:
    EnergyModel(const PocketStructure& pocket, const std::vector<AtomType>& pocket_types,
                const std::array<double, 5>& weights = kDefaultEnergyWeights);

    // `coords` is parallel to ligand.atoms and carries the posed
    // positions; ligand hydrogens are skipped. Throws DomainError when
    // either side has no participating atoms.
    EnergyBreakdown evaluate(const MolecularGraph& ligand,
                             const std::vector<AtomType>& ligand_types,
                             const std::vector<Vec3>& coords) const;

    size_t active_atom_count() const { return positions_.size(); }
    const std::array<double, 5>& weights() const { return weights_; }

  private:
    std::vector<Vec3> positions_;
    std::vector<AtomType> types_;
    std::array<double, 5> weights_;
    CellList cells_;
};

}  // namespace posekit

#endif
