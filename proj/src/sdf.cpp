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

#include "sdf.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "error.hpp"

namespace posekit {

namespace {

struct LineCursor {
    std::string_view text;
    size_t pos = 0;
    size_t line_no = 0;

    bool done() const { return pos >= text.size(); }

    std::string_view next() {
        size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        return line;
    }
};

std::string_view trimmed(std::string_view s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string_view field(std::string_view line, size_t start, size_t width) {
    if (start >= line.size()) return {};
    return line.substr(start, std::min(width, line.size() - start));
}

int parse_count(std::string_view f, size_t line_no, const char* what) {
    std::string_view t = trimmed(f);
    int value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || value < 0)
        throw ParseError(std::string("malformed ") + what + " count '" + std::string(f) + "'",
                         line_no);
    return value;
}

double parse_coord(std::string_view f, size_t line_no, const char* axis) {
    std::string_view t = trimmed(f);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(value))
        throw ParseError(std::string("malformed ") + axis + " coordinate '" + std::string(f) + "'",
                         line_no);
    return value;
}

MolecularGraph parse_record(LineCursor& cur) {
    MolecularGraph mol;
    mol.name = std::string(trimmed(cur.next()));
    cur.next();  // program line
    cur.next();  // comment line

    const size_t counts_line_no = cur.line_no + 1;
    if (cur.done()) throw ParseError("truncated record, missing counts line", counts_line_no);
    std::string_view counts = cur.next();
    const int n_atoms = parse_count(field(counts, 0, 3), counts_line_no, "atom");
    const int n_bonds = parse_count(field(counts, 3, 3), counts_line_no, "bond");

    mol.atoms.reserve(static_cast<size_t>(n_atoms));
    for (int i = 0; i < n_atoms; ++i) {
        if (cur.done())
            throw ParseError("atom block ended early, expected " + std::to_string(n_atoms) +
                                 " atoms",
                             cur.line_no);
        const size_t line_no = cur.line_no + 1;
        std::string_view line = cur.next();
        if (trimmed(line) == "M  END" || trimmed(line) == "$$$$")
            throw ParseError("atom block ended early, expected " + std::to_string(n_atoms) +
                                 " atoms",
                             line_no);
        Atom atom;
        atom.serial = i + 1;
        atom.position.x = parse_coord(field(line, 0, 10), line_no, "x");
        atom.position.y = parse_coord(field(line, 10, 10), line_no, "y");
        atom.position.z = parse_coord(field(line, 20, 10), line_no, "z");
        const std::string symbol(trimmed(field(line, 31, 3)));
        auto element = element_from_symbol(symbol);
        if (!element || !is_ligand_element(*element))
            throw ParseError("unsupported element '" + symbol + "'", line_no);
        atom.element = *element;
        mol.atoms.push_back(std::move(atom));
    }

    mol.bonds.reserve(static_cast<size_t>(n_bonds));
    for (int i = 0; i < n_bonds; ++i) {
        if (cur.done())
            throw ParseError("bond block ended early, expected " + std::to_string(n_bonds) +
                                 " bonds",
                             cur.line_no);
        const size_t line_no = cur.line_no + 1;
        std::string_view line = cur.next();
        if (trimmed(line) == "M  END" || trimmed(line) == "$$$$")
            throw ParseError("bond block ended early, expected " + std::to_string(n_bonds) +
                                 " bonds",
                             line_no);
        const int a = parse_count(field(line, 0, 3), line_no, "bond atom");
        const int b = parse_count(field(line, 3, 3), line_no, "bond atom");
        const int order = parse_count(field(line, 6, 3), line_no, "bond order");
        if (a < 1 || b < 1 || a > n_atoms || b > n_atoms || a == b)
            throw ParseError("bond endpoints " + std::to_string(a) + "-" + std::to_string(b) +
                                 " out of range",
                             line_no);
        if (order < 1 || order > 3)
            throw ParseError("unsupported bond order " + std::to_string(order), line_no);
        Bond bond;
        bond.i = static_cast<size_t>(std::min(a, b)) - 1;
        bond.j = static_cast<size_t>(std::max(a, b)) - 1;
        bond.order = order;
        mol.bonds.push_back(bond);
    }

    // Skip remaining property lines until "M  END".
    bool saw_end = false;
    while (!cur.done()) {
        std::string_view line = cur.next();
        if (trimmed(line) == "M  END") {
            saw_end = true;
            break;
        }
        if (trimmed(line) == "$$$$")
            throw ParseError("record ended before 'M  END'", cur.line_no);
    }
    if (!saw_end && !cur.done())
        throw ParseError("record ended before 'M  END'", cur.line_no);

    // Data fields: "> <NAME>" header, value lines, blank separator.
    std::string pending_name;
    std::string pending_value;
    bool in_field = false;
    auto flush = [&]() {
        if (!in_field) return;
        while (!pending_value.empty() && pending_value.back() == '\n') pending_value.pop_back();
        mol.data_fields.emplace_back(pending_name, pending_value);
        pending_name.clear();
        pending_value.clear();
        in_field = false;
    };
    while (!cur.done()) {
        std::string_view line = cur.next();
        std::string_view t = trimmed(line);
        if (t == "$$$$") break;
        if (!t.empty() && t.front() == '>') {
            flush();
            size_t lt = t.find('<');
            size_t gt = t.rfind('>');
            if (lt != std::string_view::npos && gt != std::string_view::npos && gt > lt)
                pending_name = std::string(t.substr(lt + 1, gt - lt - 1));
            in_field = true;
            continue;
        }
        if (in_field) {
            if (t.empty()) {
                flush();
            } else {
                pending_value.append(line);
                pending_value.push_back('\n');
            }
        }
    }
    flush();

    mol.validate();
    return mol;
}

void skip_blank_lines(LineCursor& cur) {
    while (!cur.done()) {
        size_t save_pos = cur.pos;
        size_t save_line = cur.line_no;
        std::string_view line = cur.next();
        if (!trimmed(line).empty()) {
            cur.pos = save_pos;
            cur.line_no = save_line;
            return;
        }
    }
}

}  // namespace

MolecularGraph parse_sdf(std::string_view text) {
    LineCursor cur{text};
    skip_blank_lines(cur);
    if (cur.done()) throw ParseError("empty SDF input");
    return parse_record(cur);
}

std::vector<MolecularGraph> parse_sdf_multi(std::string_view text) {
    std::vector<MolecularGraph> records;
    LineCursor cur{text};
    while (true) {
        skip_blank_lines(cur);
        if (cur.done()) break;
        records.push_back(parse_record(cur));
    }
    if (records.empty()) throw ParseError("empty SDF input");
    return records;
}

std::string write_sdf(const MolecularGraph& mol, const std::vector<Vec3>* positions,
                      const std::vector<std::pair<std::string, std::string>>* extra_fields) {
    if (positions && positions->size() != mol.atoms.size())
        throw Error("pose has " + std::to_string(positions->size()) + " coordinates for " +
                    std::to_string(mol.atoms.size()) + " atoms");

    std::string out;
    out += mol.name;
    out += "\n  posekit          3D\n\n";

    char buf[128];
    std::snprintf(buf, sizeof(buf), "%3zu%3zu  0  0  0  0  0  0  0  0999 V2000\n",
                  mol.atoms.size(), mol.bonds.size());
    out += buf;

    for (size_t i = 0; i < mol.atoms.size(); ++i) {
        const Vec3& p = positions ? (*positions)[i] : mol.atoms[i].position;
        std::snprintf(buf, sizeof(buf),
                      "%10.4f%10.4f%10.4f %-3s 0  0  0  0  0  0  0  0  0  0  0  0\n", p.x, p.y,
                      p.z, std::string(element_symbol(mol.atoms[i].element)).c_str());
        out += buf;
    }
    for (const auto& b : mol.bonds) {
        std::snprintf(buf, sizeof(buf), "%3zu%3zu%3d  0\n", b.i + 1, b.j + 1, b.order);
        out += buf;
    }
    out += "M  END\n";

    auto emit_field = [&out](const std::pair<std::string, std::string>& f) {
        out += "> <" + f.first + ">\n";
        out += f.second;
        out += "\n\n";
    };
    for (const auto& f : mol.data_fields) emit_field(f);
    if (extra_fields)
        for (const auto& f : *extra_fields) emit_field(f);

    out += "$$$$\n";
    return out;
}

}  // namespace posekit
