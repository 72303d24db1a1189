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

#ifndef POSEKIT_ELEMENTS_HPP
#define POSEKIT_ELEMENTS_HPP

#include <optional>
#include <string>
#include <string_view>

namespace posekit {

// Ligand vocabulary is the organic subset; the metal set occurs on the
// receptor side only. Anything else is rejected at parse time.
enum class Element {
    H,
    C,
    N,
    O,
    F,
    P,
    S,
    Cl,
    Br,
    I,
    // receptor-side metals
    Zn,
    Mg,
    Ca,
    Mn,
    Fe,
    Na,
    K,
};

constexpr int kLigandElementCount = 10;  // H..I above

std::string_view element_symbol(Element e);

// Case-insensitive symbol lookup ("CL", "Cl", "cl" all match).
std::optional<Element> element_from_symbol(std::string_view symbol);

inline bool is_metal(Element e) { return e >= Element::Zn; }
inline bool is_heavy_element(Element e) { return e != Element::H; }
inline bool is_ligand_element(Element e) { return !is_metal(e); }

}  // namespace posekit

#endif
