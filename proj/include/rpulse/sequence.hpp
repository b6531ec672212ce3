// Copyright 2026 The robust-pulse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RPULSE_SEQUENCE_HPP
#define RPULSE_SEQUENCE_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rpulse/su2.hpp"

namespace rpulse {

/// One hard pulse. Normally a rotation by theta about (cos phi, sin phi, 0);
/// product reductions may also yield a rotation about z.
class Pulse {
   public:
    static Pulse xy(double theta, double phi) {
        if (!(theta >= 0.0)) throw ArgumentError("pulse angle must be nonnegative, got " + std::to_string(theta));
        Pulse p;
        p.theta_ = theta;
        p.phi_ = phi;
        p.m_ = RotationVector::in_plane(theta, phi);
        return p;
    }

    /// Rotation by |angle| about +z (angle >= 0) or -z.
    static Pulse z(double angle) {
        Pulse p;
        p.theta_ = std::abs(angle);
        p.phi_ = 0.0;
        p.m_ = RotationVector(0.0, 0.0, angle);
        p.z_axis_ = true;
        return p;
    }

    double theta() const { return theta_; }
    /// Azimuth; meaningless for z pulses.
    double phi() const { return phi_; }
    bool z_axis() const { return z_axis_; }
    const RotationVector &vector() const { return m_; }

   private:
    Pulse() = default;
    double theta_ = 0.0;
    double phi_ = 0.0;
    RotationVector m_;
    bool z_axis_ = false;
};

enum class Family { Plain, Corpse, Scrofulous, CisCccp, BB1, AlwayJones, Custom };

inline std::string_view to_string(Family f) {
    switch (f) {
        case Family::Plain: return "plain";
        case Family::Corpse: return "corpse";
        case Family::Scrofulous: return "scrofulous";
        case Family::CisCccp: return "cis-cccp";
        case Family::BB1: return "bb1";
        case Family::AlwayJones: return "alway-jones";
        case Family::Custom: return "custom";
    }
    return "custom";
}

inline std::optional<Family> family_from_string(std::string_view s) {
    for (Family f : {Family::Plain, Family::Corpse, Family::Scrofulous, Family::CisCccp, Family::BB1,
                     Family::AlwayJones, Family::Custom}) {
        if (to_string(f) == s) return f;
    }
    return std::nullopt;
}

using Winding = std::array<int, 3>;

/// Ordered pulses (first element acts first) implementing `target`
/// = rotation(target_theta (cos target_phi, sin target_phi, 0)).
struct PulseSequence {
    std::vector<Pulse> pulses;
    double target_theta = 0.0;
    double target_phi = 0.0;
    Family family = Family::Custom;
    std::optional<Winding> winding;

    Unitary2 target() const { return rotation(RotationVector::in_plane(target_theta, target_phi)); }

    std::size_t size() const { return pulses.size(); }
    bool empty() const { return pulses.empty(); }

    /// R(m^k) ... R(m^1)
    Unitary2 ideal_product() const {
        Unitary2 v;
        for (const auto &p : pulses) v = rotation(p.vector()) * v;
        return v;
    }
};

}  // namespace rpulse

#endif
