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

#include "energy.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace posekit {

std::array<double, 5> pair_terms(double d, const AtomType& ti, const AtomType& tj) {
    std::array<double, 5> terms{};
    terms[0] = std::exp(-(d / 0.5) * (d / 0.5));
    terms[1] = std::exp(-((d - 3.0) / 2.0) * ((d - 3.0) / 2.0));
    terms[2] = d < 0.0 ? d * d : 0.0;
    if (ti.is_hydrophobic && tj.is_hydrophobic) {
        if (d <= 0.5)
            terms[3] = 1.0;
        else if (d < 1.5)
            terms[3] = 1.5 - d;
    }
    const bool hbond = (ti.is_donor && tj.is_acceptor) || (ti.is_acceptor && tj.is_donor);
    if (hbond) {
        if (d <= -0.7)
            terms[4] = 1.0;
        else if (d < 0.0)
            terms[4] = -d / 0.7;
    }
    return terms;
}

CellList::CellList(const std::vector<Vec3>& points, double cell_size)
    : points_(points), cell_size_(cell_size) {
    if (points_.empty()) return;

    Vec3 lo = points_[0];
    Vec3 hi = points_[0];
    for (const Vec3& p : points_) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        lo.z = std::min(lo.z, p.z);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
        hi.z = std::max(hi.z, p.z);
    }
    origin_ = lo;
    nx_ = static_cast<int>((hi.x - lo.x) / cell_size_) + 1;
    ny_ = static_cast<int>((hi.y - lo.y) / cell_size_) + 1;
    nz_ = static_cast<int>((hi.z - lo.z) / cell_size_) + 1;

    const size_t n_cells = static_cast<size_t>(nx_) * static_cast<size_t>(ny_) *
                           static_cast<size_t>(nz_);
    std::vector<size_t> cell_index(points_.size());
    cell_start_.assign(n_cells + 1, 0);
    for (size_t i = 0; i < points_.size(); ++i) {
        const Vec3& p = points_[i];
        int ix = std::min(nx_ - 1, static_cast<int>((p.x - origin_.x) / cell_size_));
        int iy = std::min(ny_ - 1, static_cast<int>((p.y - origin_.y) / cell_size_));
        int iz = std::min(nz_ - 1, static_cast<int>((p.z - origin_.z) / cell_size_));
        cell_index[i] = cell_of(ix, iy, iz);
        ++cell_start_[cell_index[i] + 1];
    }
    for (size_t c = 0; c < n_cells; ++c) cell_start_[c + 1] += cell_start_[c];

    order_.resize(points_.size());
    std::vector<size_t> cursor(cell_start_.begin(), cell_start_.end() - 1);
    for (size_t i = 0; i < points_.size(); ++i) order_[cursor[cell_index[i]]++] = i;
}

void CellList::gather_within(const Vec3& q, double radius, std::vector<size_t>& out) const {
    if (points_.empty()) return;
    const double r_sq = radius * radius;
    const int qx = static_cast<int>(std::floor((q.x - origin_.x) / cell_size_));
    const int qy = static_cast<int>(std::floor((q.y - origin_.y) / cell_size_));
    const int qz = static_cast<int>(std::floor((q.z - origin_.z) / cell_size_));

    const size_t first = out.size();
    for (int ix = std::max(0, qx - 1); ix <= std::min(nx_ - 1, qx + 1); ++ix)
        for (int iy = std::max(0, qy - 1); iy <= std::min(ny_ - 1, qy + 1); ++iy)
            for (int iz = std::max(0, qz - 1); iz <= std::min(nz_ - 1, qz + 1); ++iz) {
                const size_t c = cell_of(ix, iy, iz);
                for (size_t k = cell_start_[c]; k < cell_start_[c + 1]; ++k) {
                    const size_t i = order_[k];
                    if (distance_sq(q, points_[i]) < r_sq) out.push_back(i);
                }
            }
    std::sort(out.begin() + static_cast<ptrdiff_t>(first), out.end());
}

EnergyModel::EnergyModel(const PocketStructure& pocket, const std::vector<AtomType>& pocket_types,
                         const std::array<double, 5>& weights)
    : weights_(weights) {
    if (pocket_types.size() != pocket.atoms.size())
        throw Error("pocket type table does not match atom count");
    for (size_t i = 0; i < pocket.atoms.size(); ++i) {
        const Atom& a = pocket.atoms[i];
        if (!a.is_heavy() || a.residue == ResidueCode::WAT) continue;
        positions_.push_back(a.position);
        types_.push_back(pocket_types[i]);
    }
    cells_ = CellList(positions_, kEnergyCutoff);
}

EnergyBreakdown EnergyModel::evaluate(const MolecularGraph& ligand,
                                      const std::vector<AtomType>& ligand_types,
                                      const std::vector<Vec3>& coords) const {
    if (positions_.empty()) throw DomainError("pocket has no scoreable atoms");
    if (ligand_types.size() != ligand.atoms.size() || coords.size() != ligand.atoms.size())
        throw Error("ligand coordinate/type arrays do not match atom count");

    EnergyBreakdown out;
    out.weights = weights_;
    size_t ligand_heavy = 0;
    std::vector<size_t> neighbors;
    for (size_t j = 0; j < ligand.atoms.size(); ++j) {
        if (!ligand.atoms[j].is_heavy()) continue;
        ++ligand_heavy;
        neighbors.clear();
        cells_.gather_within(coords[j], kEnergyCutoff, neighbors);
        for (size_t i : neighbors) {
            const double r = distance(positions_[i], coords[j]);
            const double d = surface_distance(r, types_[i], ligand_types[j]);
            const auto terms = pair_terms(d, types_[i], ligand_types[j]);
            out.e_g1 += terms[0];
            out.e_g2 += terms[1];
            out.e_rep += terms[2];
            out.e_hyd += terms[3];
            out.e_hd += terms[4];
            ++out.pair_count;
        }
    }
    if (ligand_heavy == 0) throw DomainError("ligand has no heavy atoms");

    out.total = weights_[0] * out.e_g1 + weights_[1] * out.e_g2 + weights_[2] * out.e_rep +
                weights_[3] * out.e_hyd + weights_[4] * out.e_hd;
    return out;
}

}  // namespace posekit
