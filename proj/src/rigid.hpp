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

#ifndef POSEKIT_RIGID_HPP
#define POSEKIT_RIGID_HPP

#include <array>
#include <vector>

#include "vec3.hpp"

namespace posekit {

using Vector6 = std::array<double, 6>;

// Axis-angle to rotation matrix: R = I + sin(t) K + (1 - cos(t)) K^2
// with t = |w| and K the unit-axis skew matrix. Small angles switch to
// the second-order Taylor expansion to avoid dividing by t.
Mat3 rodrigues(const Vec3& w);

// Axis-angle of a rotation matrix (inverse of rodrigues); the angle is
// in [0, pi].
Vec3 rotation_log(const Mat3& r);

// Nearest rotation matrix by Newton-Schulz iteration; used to shed
// accumulated round-off after long composition chains.
Mat3 orthonormalize(const Mat3& r);

// Rigid transform acting about a fixed center:
//   X' = R (X - c) + c + t
// so u = 0 leaves coordinates unchanged regardless of the center. The
// six-vector chart u = (dx, dy, dz, wx, wy, wz) carries translation in
// Angstrom and rotation in radians.
struct RigidPose {
    Vector6 u{};
    Mat3 rotation;
    Vec3 translation;
    Vec3 rotation_center;

    static RigidPose identity(const Vec3& center);
    static RigidPose from_vector(const Vector6& u, const Vec3& center);

    Vec3 apply(const Vec3& x) const;
};

// Left-composes an incremental rotation and adds a translation step:
// R' = rodrigues(w) R, t' = t + delta. Orthonormality is re-enforced
// when round-off drift exceeds 1e-9, and the chart u is refreshed from
// the composed transform.
RigidPose compose_update(const RigidPose& pose, const Vec3& w, const Vec3& delta);

std::vector<Vec3> apply_pose(const RigidPose& pose, const std::vector<Vec3>& coords);

}  // namespace posekit

#endif
