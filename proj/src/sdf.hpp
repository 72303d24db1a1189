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

#ifndef POSEKIT_SDF_HPP
#define POSEKIT_SDF_HPP

#include <string>
#include <string_view>
#include <vector>

#include "types.hpp"

namespace posekit {

// Parses the first record of a V2000 SDF/MOL block. Bond orders are read
// as stored (kekulized structures expected); data fields between
// "M  END" and "$$$$" are carried through in file order.
//
// Throws ParseError (with line number) on a malformed counts line, short
// atom/bond blocks, bad coordinates, bond indices out of range, or an
// element outside the supported ligand vocabulary (named in the message).
MolecularGraph parse_sdf(std::string_view text);

// Parses every record of a multi-record SDF ("$$$$" separated).
std::vector<MolecularGraph> parse_sdf_multi(std::string_view text);

// Serializes a molecule as one V2000 SDF record ("$$$$" terminated).
// When `positions` is non-null it overrides the stored coordinates
// (size must match); `extra_fields` are appended after the molecule's
// own data fields. Coordinates are written as %10.4f, so a write/parse
// round trip preserves them to 1e-4 Angstrom.
std::string write_sdf(const MolecularGraph& mol, const std::vector<Vec3>* positions = nullptr,
                      const std::vector<std::pair<std::string, std::string>>* extra_fields = nullptr);

}  // namespace posekit

#endif
