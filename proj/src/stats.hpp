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

#ifndef POSEKIT_STATS_HPP
#define POSEKIT_STATS_HPP

#include <array>
#include <optional>
#include <vector>

#include "interactions.hpp"

namespace posekit {

// Digamma at a positive integer: psi(m) = -gamma + H_{m-1}.
double digamma_int(size_t m);

struct EntropyEstimate {
    std::optional<double> entropy;  // nats; absent when degenerate
    size_t n = 0;
    bool degenerate = false;     // all points identical
    bool jittered = false;       // duplicates broke ties via jitter
    double zero_knn_fraction = 0.0;
};

// Kozachenko-Leonenko k-nearest-neighbor differential entropy of a 4-D
// sample:
//   H = psi(n) - psi(k) + log(pi^2 / 2) + (4 / n) sum_i log eps_i
// with eps_i the distance to the i-th point's k-th neighbor. Duplicate
// points give eps = 0; any zeros trigger a deterministic 1e-9 jitter
// and the zero fraction is reported so callers can warn above 10%.
EntropyEstimate kl_entropy_4d(const std::vector<std::array<double, 4>>& points, size_t k = 3);

struct HexbinCell {
    double cx = 0.0;
    double cy = 0.0;
    size_t count = 0;
};

// Hexagonal binning on two offset lattices, `resolution` columns across
// the observed x-range. Cells are emitted in ascending (cx, cy) order;
// empty cells are omitted.
std::vector<HexbinCell> hexbin(const std::vector<std::pair<double, double>>& points,
                               int resolution = 30);

struct DensityResult {
    std::optional<double> rho;      // entropy / 4
    std::optional<double> entropy;  // nats
    size_t n = 0;                   // summaries used
    size_t skipped_no_edges = 0;    // summaries without d_bar
    bool low_confidence = false;    // fewer than 50 usable summaries
    bool degenerate = false;
    bool jittered = false;
    double zero_knn_fraction = 0.0;
    std::array<double, 4> axis_means{};          // (n_bar, d_bar, t_bar, k_bar)
    std::vector<HexbinCell> distance_plane;      // (n_bar, d_bar)
    std::vector<HexbinCell> interaction_plane;   // (t_bar, k_bar)
};

// Information density rho = H(Z) / 4 over per-complex context
// summaries; the summary map is deterministic in the complex, so the
// mutual information reduces to the entropy of Z. Summaries without a
// mean edge length carry no 4-D point and are skipped (counted in
// skipped_no_edges). Throws DomainError when no summary is usable.
DensityResult information_density(const std::vector<ContextSummary>& summaries);

struct GsnrOptions {
    size_t window = 32;           // vectors per non-overlapping window
    size_t variance_window = 10;  // rolling-variance length over the SNR series
};

struct WindowSnr {
    size_t start = 0;   // index of the first vector in the window
    double snr = 0.0;   // |mean g|^2 / (trace cov + 1e-12)
    bool degenerate = false;  // trace cov == 0 (identical vectors)
};

struct GsnrResult {
    std::vector<WindowSnr> windows;
    std::vector<double> snr_variance;  // rolling sample variance of window SNRs
};

// Gradient signal-to-noise over non-overlapping windows; a trailing
// partial window is dropped. Throws Error on dimension mismatch or a
// window smaller than 2.
GsnrResult gradient_snr(const std::vector<std::vector<double>>& gradients,
                        const GsnrOptions& options = {});

}  // namespace posekit

#endif
