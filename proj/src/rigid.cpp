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

#include "rigid.hpp"

#include <algorithm>
#include <cmath>

namespace posekit {

namespace {

constexpr double kTinyAngle = 1e-12;
constexpr double kDriftTolerance = 1e-9;

double orthogonality_drift(const Mat3& r) {
    return (r.transposed() * r).max_abs_diff(Mat3::identity());
}

}  // namespace

Mat3 rodrigues(const Vec3& w) {
    const double theta = w.norm();
    if (theta < kTinyAngle) {
        const Mat3 k = skew(w);
        return Mat3::identity() + k + k * k * 0.5;
    }
    const Mat3 k = skew(w * (1.0 / theta));
    return Mat3::identity() + k * std::sin(theta) + k * k * (1.0 - std::cos(theta));
}

Vec3 rotation_log(const Mat3& r) {
    const double cos_theta = std::clamp((r(0, 0) + r(1, 1) + r(2, 2) - 1.0) / 2.0, -1.0, 1.0);
    const Vec3 axial{r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1)};
    // Deriving sin from the axial part keeps the axial/(2 sin) ratio
    // well conditioned; acos-based sin loses digits as theta nears pi.
    const double sin_theta = 0.5 * axial.norm();
    const double theta = std::atan2(sin_theta, cos_theta);
    if (theta < kTinyAngle) return axial * 0.5;
    if (theta > M_PI - 1e-3) {
        // Near a half turn the axial vector vanishes; recover the axis
        // from the symmetric part instead.
        const double c = 1.0 - cos_theta;
        const double sxy = (r(0, 1) + r(1, 0)) / (2.0 * c);
        const double sxz = (r(0, 2) + r(2, 0)) / (2.0 * c);
        const double syz = (r(1, 2) + r(2, 1)) / (2.0 * c);
        const double xx = (r(0, 0) - cos_theta) / c;
        const double yy = (r(1, 1) - cos_theta) / c;
        const double zz = (r(2, 2) - cos_theta) / c;
        Vec3 axis;
        if (xx >= yy && xx >= zz) {
            axis.x = std::sqrt(std::max(0.0, xx));
            axis.y = sxy / axis.x;
            axis.z = sxz / axis.x;
        } else if (yy >= zz) {
            axis.y = std::sqrt(std::max(0.0, yy));
            axis.x = sxy / axis.y;
            axis.z = syz / axis.y;
        } else {
            axis.z = std::sqrt(std::max(0.0, zz));
            axis.x = sxz / axis.z;
            axis.y = syz / axis.z;
        }
        const double n = axis.norm();
        if (n > 0.0) axis = axis * (1.0 / n);
        // Orient so the reconstruction matches r, not its transpose.
        if (axial.dot(axis) < 0.0) axis = axis * -1.0;
        return axis * theta;
    }
    return axial * (theta / (2.0 * sin_theta));
}

Mat3 orthonormalize(const Mat3& r) {
    Mat3 x = r;
    for (int iter = 0; iter < 12 && orthogonality_drift(x) > 1e-15; ++iter) {
        const Mat3 xtx = x.transposed() * x;
        x = x * (Mat3::identity() * 1.5 + xtx * -0.5);
    }
    return x;
}

RigidPose RigidPose::identity(const Vec3& center) {
    RigidPose pose;
    pose.rotation_center = center;
    return pose;
}

RigidPose RigidPose::from_vector(const Vector6& u, const Vec3& center) {
    RigidPose pose;
    pose.u = u;
    pose.translation = {u[0], u[1], u[2]};
    pose.rotation = rodrigues({u[3], u[4], u[5]});
    pose.rotation_center = center;
    return pose;
}

Vec3 RigidPose::apply(const Vec3& x) const {
    return rotation * (x - rotation_center) + rotation_center + translation;
}

RigidPose compose_update(const RigidPose& pose, const Vec3& w, const Vec3& delta) {
    RigidPose out = pose;
    out.rotation = rodrigues(w) * pose.rotation;
    if (orthogonality_drift(out.rotation) > kDriftTolerance)
        out.rotation = orthonormalize(out.rotation);
    out.translation = pose.translation + delta;
    const Vec3 log = rotation_log(out.rotation);
    out.u = {out.translation.x, out.translation.y, out.translation.z, log.x, log.y, log.z};
    return out;
}

std::vector<Vec3> apply_pose(const RigidPose& pose, const std::vector<Vec3>& coords) {
    std::vector<Vec3> out;
    out.reserve(coords.size());
    for (const Vec3& x : coords) out.push_back(pose.apply(x));
    return out;
}

}  // namespace posekit
