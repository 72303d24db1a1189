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

#ifndef POSEKIT_PDB_HPP
#define POSEKIT_PDB_HPP

#include <optional>
#include <string_view>

#include "types.hpp"

namespace posekit {

struct ClipSphere {
    Vec3 center;
    double radius = 0.0;
};

// Parses ATOM/HETATM records of PDB text into a pocket structure.
//
// Element is taken from columns 77-78 when present, otherwise derived
// from the atom name. Only altLoc ' ' and 'A' are kept, and only the
// first MODEL of multi-model files. Waters and monoatomic metals are
// retained and tagged (ResidueCode::WAT / ResidueCode::ION). When a clip
// sphere is given, atoms outside it are dropped.
//
// Throws ParseError on malformed coordinates (with line number) or an
// element that cannot be resolved (with the record serial).
PocketStructure parse_receptor(std::string_view text,
                               std::optional<ClipSphere> clip = std::nullopt,
                               std::string source = "");

}  // namespace posekit

#endif
