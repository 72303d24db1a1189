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

#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "error.hpp"
#include "rng.hpp"

namespace posekit {

namespace {

constexpr double kEulerGamma = 0.5772156649015329;

double dist4_sq(const std::array<double, 4>& a, const std::array<double, 4>& b) {
    double s = 0.0;
    for (size_t i = 0; i < 4; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

// Distance to the k-th nearest neighbor of point i (k >= 1, excluding
// the point itself).
double knn_distance(const std::vector<std::array<double, 4>>& pts, size_t i, size_t k) {
    std::vector<double> best(k, std::numeric_limits<double>::infinity());
    for (size_t j = 0; j < pts.size(); ++j) {
        if (j == i) continue;
        const double d = dist4_sq(pts[i], pts[j]);
        if (d >= best.back()) continue;
        best.back() = d;
        for (size_t b = k - 1; b > 0 && best[b] < best[b - 1]; --b)
            std::swap(best[b], best[b - 1]);
    }
    return std::sqrt(best.back());
}

}  // namespace

double digamma_int(size_t m) {
    double h = 0.0;
    for (size_t i = 1; i < m; ++i) h += 1.0 / static_cast<double>(i);
    return -kEulerGamma + h;
}

EntropyEstimate kl_entropy_4d(const std::vector<std::array<double, 4>>& points, size_t k) {
    EntropyEstimate out;
    out.n = points.size();
    if (points.size() < k + 1) {
        out.degenerate = true;
        return out;
    }

    bool all_identical = true;
    for (size_t i = 1; i < points.size() && all_identical; ++i)
        if (points[i] != points[0]) all_identical = false;
    if (all_identical) {
        out.degenerate = true;
        return out;
    }

    std::vector<std::array<double, 4>> pts = points;
    std::vector<double> eps(pts.size());
    for (int attempt = 0; attempt < 2; ++attempt) {
        size_t zeros = 0;
        for (size_t i = 0; i < pts.size(); ++i) {
            eps[i] = knn_distance(pts, i, k);
            if (eps[i] == 0.0) ++zeros;
        }
        if (attempt == 0)
            out.zero_knn_fraction =
                static_cast<double>(zeros) / static_cast<double>(pts.size());
        if (zeros == 0) break;
        SeededRng rng(0x9e3779b97f4a7c15ull);
        for (auto& p : pts)
            for (double& x : p) x += rng.uniform(-1e-9, 1e-9);
        out.jittered = true;
    }

    const double n = static_cast<double>(pts.size());
    double log_sum = 0.0;
    for (double e : eps) {
        if (e == 0.0) {
            out.degenerate = true;  // jitter failed to separate duplicates
            return out;
        }
        log_sum += std::log(e);
    }
    const double unit_ball = std::log(M_PI * M_PI / 2.0);  // 4-D ball volume
    out.entropy = digamma_int(pts.size()) - digamma_int(k) + unit_ball + (4.0 / n) * log_sum;
    return out;
}

std::vector<HexbinCell> hexbin(const std::vector<std::pair<double, double>>& points,
                               int resolution) {
    std::vector<HexbinCell> cells;
    if (points.empty() || resolution < 1) return cells;

    double xmin = points[0].first, xmax = points[0].first;
    double ymin = points[0].second, ymax = points[0].second;
    for (const auto& [x, y] : points) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    const double sx = (xmax - xmin) > 0 ? (xmax - xmin) / resolution : 1.0;
    const double sy = (ymax - ymin) > 0 ? (ymax - ymin) / resolution : 1.0;

    // Each point snaps to the nearer of two offset rectangular lattices,
    // producing the staggered hexagonal tiling.
    std::map<std::pair<long long, long long>, size_t> counts;  // (2*ix [+1], iy index)
    for (const auto& [x, y] : points) {
        const double ux = (x - xmin) / sx;
        const double uy = (y - ymin) / sy;
        const double ax = std::round(ux);
        const double ay = std::round(uy);
        const double bx = std::round(ux - 0.5) + 0.5;
        const double by = std::round(uy - 0.5) + 0.5;
        const double da = (ux - ax) * (ux - ax) + (uy - ay) * (uy - ay);
        const double db = (ux - bx) * (ux - bx) + (uy - by) * (uy - by);
        const double cx = da <= db ? ax : bx;
        const double cy = da <= db ? ay : by;
        ++counts[{static_cast<long long>(std::llround(cx * 2.0)),
                  static_cast<long long>(std::llround(cy * 2.0))}];
    }
    cells.reserve(counts.size());
    for (const auto& [key, count] : counts)
        cells.push_back({xmin + static_cast<double>(key.first) / 2.0 * sx,
                         ymin + static_cast<double>(key.second) / 2.0 * sy, count});
    std::sort(cells.begin(), cells.end(), [](const HexbinCell& a, const HexbinCell& b) {
        if (a.cx != b.cx) return a.cx < b.cx;
        return a.cy < b.cy;
    });
    return cells;
}

DensityResult information_density(const std::vector<ContextSummary>& summaries) {
    DensityResult out;
    std::vector<std::array<double, 4>> points;
    points.reserve(summaries.size());
    for (const ContextSummary& s : summaries) {
        if (!s.d_bar) {
            ++out.skipped_no_edges;
            continue;
        }
        points.push_back({s.n_bar, *s.d_bar, s.t_bar, s.k_bar});
    }
    if (points.empty()) throw DomainError("no usable context summaries (all without edges)");

    out.n = points.size();
    out.low_confidence = points.size() < 50;
    for (const auto& p : points)
        for (size_t i = 0; i < 4; ++i) out.axis_means[i] += p[i];
    for (double& m : out.axis_means) m /= static_cast<double>(points.size());

    std::vector<std::pair<double, double>> nd, tk;
    nd.reserve(points.size());
    tk.reserve(points.size());
    for (const auto& p : points) {
        nd.emplace_back(p[0], p[1]);
        tk.emplace_back(p[2], p[3]);
    }
    out.distance_plane = hexbin(nd);
    out.interaction_plane = hexbin(tk);

    const EntropyEstimate est = kl_entropy_4d(points);
    out.degenerate = est.degenerate;
    out.jittered = est.jittered;
    out.zero_knn_fraction = est.zero_knn_fraction;
    if (est.entropy) {
        out.entropy = est.entropy;
        out.rho = *est.entropy / 4.0;
    }
    return out;
}

GsnrResult gradient_snr(const std::vector<std::vector<double>>& gradients,
                        const GsnrOptions& options) {
    if (options.window < 2) throw Error("window must hold at least 2 gradient vectors");
    GsnrResult out;
    if (gradients.empty()) return out;

    const size_t dim = gradients[0].size();
    for (const auto& g : gradients)
        if (g.size() != dim)
            throw Error("gradient dimension mismatch: expected " + std::to_string(dim) +
                        ", found " + std::to_string(g.size()));

    const size_t n_windows = gradients.size() / options.window;
    for (size_t w = 0; w < n_windows; ++w) {
        const size_t begin = w * options.window;
        const size_t count = options.window;

        std::vector<double> mean(dim, 0.0);
        for (size_t i = begin; i < begin + count; ++i)
            for (size_t j = 0; j < dim; ++j) mean[j] += gradients[i][j];
        for (double& m : mean) m /= static_cast<double>(count);

        double trace = 0.0;
        for (size_t i = begin; i < begin + count; ++i)
            for (size_t j = 0; j < dim; ++j) {
                const double dev = gradients[i][j] - mean[j];
                trace += dev * dev;
            }
        trace /= static_cast<double>(count - 1);

        double mean_norm_sq = 0.0;
        for (double m : mean) mean_norm_sq += m * m;

        WindowSnr snr;
        snr.start = begin;
        snr.degenerate = trace == 0.0;
        snr.snr = mean_norm_sq / (trace + 1e-12);
        out.windows.push_back(snr);
    }

    const size_t lv = options.variance_window;
    if (out.windows.size() >= lv && lv >= 2) {
        for (size_t end = lv; end <= out.windows.size(); ++end) {
            double mean = 0.0;
            for (size_t i = end - lv; i < end; ++i) mean += out.windows[i].snr;
            mean /= static_cast<double>(lv);
            double var = 0.0;
            for (size_t i = end - lv; i < end; ++i) {
                const double dev = out.windows[i].snr - mean;
                var += dev * dev;
            }
            out.snr_variance.push_back(var / static_cast<double>(lv - 1));
        }
    }
    return out;
}

}  // namespace posekit
