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

#include "pdb.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "error.hpp"

namespace posekit {

namespace {

std::string_view trimmed(std::string_view s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// Fixed-width column slice; shorter lines yield the available suffix.
std::string_view column(std::string_view line, size_t start, size_t width) {
    if (start >= line.size()) return {};
    return line.substr(start, std::min(width, line.size() - start));
}

double parse_coordinate(std::string_view field, size_t line_no, const char* axis) {
    std::string_view t = trimmed(field);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(value))
        throw ParseError(std::string("malformed ") + axis + " coordinate field '" +
                             std::string(field) + "'",
                         line_no);
    return value;
}

int parse_int_lenient(std::string_view field, int fallback) {
    std::string_view t = trimmed(field);
    int value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) return fallback;
    return value;
}

std::string strip_name(std::string_view raw) {
    std::string out;
    for (char c : raw)
        if (std::isalpha(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

// Element from the atom name when columns 77-78 are absent. Two-letter
// metal symbols are only trusted on HETATM records; on ATOM records a
// name like "CA" is the alpha carbon, not calcium.
std::optional<Element> element_from_name(std::string_view raw_name, bool is_hetatm) {
    std::string letters = strip_name(raw_name);
    if (letters.empty()) return std::nullopt;
    if (letters.size() >= 2) {
        if (auto e = element_from_symbol(letters.substr(0, 2)))
            if (is_hetatm || !is_metal(*e)) return e;
    }
    return element_from_symbol(letters.substr(0, 1));
}

bool is_backbone_name(const std::string& name) {
    return name == "N" || name == "CA" || name == "C" || name == "O";
}

}  // namespace

PocketStructure parse_receptor(std::string_view text, std::optional<ClipSphere> clip,
                               std::string source) {
    PocketStructure pocket;
    pocket.source = std::move(source);
    if (clip) {
        pocket.clip_center = clip->center;
        pocket.clip_radius = clip->radius;
    }

    size_t line_no = 0;
    size_t pos = 0;
    bool saw_model = false;
    int fallback_serial = 0;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        std::string_view record = trimmed(column(line, 0, 6));
        if (record == "MODEL") {
            if (saw_model) break;  // first model only
            saw_model = true;
            continue;
        }
        if (record == "ENDMDL") {
            if (saw_model) break;
            continue;
        }
        if (record != "ATOM" && record != "HETATM") continue;

        const char alt_loc = line.size() > 16 ? line[16] : ' ';
        if (alt_loc != ' ' && alt_loc != 'A') continue;

        Atom atom;
        ++fallback_serial;
        atom.serial = parse_int_lenient(column(line, 6, 5), fallback_serial);
        atom.atom_name = std::string(trimmed(column(line, 12, 4)));
        const std::string res_name(trimmed(column(line, 17, 3)));
        atom.chain_id = line.size() > 21 ? line[21] : ' ';
        atom.residue_seq = parse_int_lenient(column(line, 22, 4), 0);
        atom.position.x = parse_coordinate(column(line, 30, 8), line_no, "x");
        atom.position.y = parse_coordinate(column(line, 38, 8), line_no, "y");
        atom.position.z = parse_coordinate(column(line, 46, 8), line_no, "z");

        const bool is_hetatm = record == "HETATM";
        std::optional<Element> element;
        std::string_view elem_col = trimmed(column(line, 76, 2));
        if (!elem_col.empty()) element = element_from_symbol(elem_col);
        if (!element) element = element_from_name(atom.atom_name, is_hetatm);
        if (!element)
            throw ParseError("unknown element for record serial " + std::to_string(atom.serial) +
                                 " (atom name '" + atom.atom_name + "')",
                             line_no);
        atom.element = *element;

        if (auto res = residue_from_name(res_name)) {
            atom.residue = *res;
        } else if (is_hetatm && is_metal(atom.element)) {
            atom.residue = ResidueCode::ION;
        } else {
            atom.residue = ResidueCode::UNK;
        }
        atom.backbone_flag =
            !is_hetatm && is_standard_residue(atom.residue) && is_backbone_name(atom.atom_name);

        if (clip && distance(atom.position, clip->center) > clip->radius) continue;
        pocket.atoms.push_back(std::move(atom));
    }
    return pocket;
}

}  // namespace posekit
