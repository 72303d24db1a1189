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

#include "elements.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace posekit {

namespace {

struct SymbolEntry {
    std::string_view symbol;
    Element element;
};

constexpr std::array<SymbolEntry, 17> kSymbols = {{
    {"H", Element::H},
    {"C", Element::C},
    {"N", Element::N},
    {"O", Element::O},
    {"F", Element::F},
    {"P", Element::P},
    {"S", Element::S},
    {"CL", Element::Cl},
    {"BR", Element::Br},
    {"I", Element::I},
    {"ZN", Element::Zn},
    {"MG", Element::Mg},
    {"CA", Element::Ca},
    {"MN", Element::Mn},
    {"FE", Element::Fe},
    {"NA", Element::Na},
    {"K", Element::K},
}};

}  // namespace

std::string_view element_symbol(Element e) {
    switch (e) {
        case Element::H: return "H";
        case Element::C: return "C";
        case Element::N: return "N";
        case Element::O: return "O";
        case Element::F: return "F";
        case Element::P: return "P";
        case Element::S: return "S";
        case Element::Cl: return "Cl";
        case Element::Br: return "Br";
        case Element::I: return "I";
        case Element::Zn: return "Zn";
        case Element::Mg: return "Mg";
        case Element::Ca: return "Ca";
        case Element::Mn: return "Mn";
        case Element::Fe: return "Fe";
        case Element::Na: return "Na";
        case Element::K: return "K";
    }
    return "?";
}

std::optional<Element> element_from_symbol(std::string_view symbol) {
    std::string upper;
    upper.reserve(symbol.size());
    for (char c : symbol) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    if (upper.empty()) return std::nullopt;
    for (const auto& entry : kSymbols)
        if (entry.symbol == upper) return entry.element;
    return std::nullopt;
}

}  // namespace posekit
