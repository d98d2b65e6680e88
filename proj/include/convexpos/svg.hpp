#pragma once

// Schematic SVG drawings: wires run horizontally at integer levels and every
// crossing is a pair of unit-slope segments, one column wide.

#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "convexpos/curve_system.hpp"
#include "convexpos/wiring_diagram.hpp"

namespace convexpos::svg {

struct Style {
    double unit = 40;    // column width and level spacing
    double margin = 30;
    double stroke = 2;
    bool cylinder = false;  // draw seams at both ends
};

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

/// Draws `base` (bottom to top) followed by the given adjacent swaps. Names
/// are looked up by label.
inline std::string schematic(const Permutation& base, const std::vector<std::pair<Label, Label>>& swaps,
                             const std::map<Label, std::string>& names, const Style& style = {}) {
    const std::size_t n = base.size();
    const double u = style.unit, m = style.margin;
    const double width = 2 * m + u * static_cast<double>(swaps.size() + 2);
    const double height = 2 * m + u * static_cast<double>(n > 0 ? n - 1 : 0);
    auto ypos = [&](std::size_t level) { return m + u * static_cast<double>(n - 1 - level); };

    std::map<Label, std::vector<std::pair<double, double>>> path;
    Permutation cur = base;
    double x = m + u;
    for (std::size_t i = 0; i < n; ++i) path[cur[i]] = {{m, ypos(i)}, {x, ypos(i)}};
    std::ostringstream marks;
    for (const auto& [p, q] : swaps) {
        std::size_t i = 0;
        while (i + 1 < n && !((cur[i] == p && cur[i + 1] == q) || (cur[i] == q && cur[i + 1] == p))) ++i;
        if (i + 1 >= n) fail(ErrorKind::NonAdjacentSwitch, "swap of labels that are not adjacent");
        path[cur[i]].push_back({x + u, ypos(i + 1)});
        path[cur[i + 1]].push_back({x + u, ypos(i)});
        for (std::size_t k = 0; k < n; ++k)
            if (k != i && k != i + 1) path[cur[k]].push_back({x + u, ypos(k)});
        marks << "  <circle class=\"crossing\" cx=\"" << x + u / 2 << "\" cy=\"" << ypos(i) - u / 2
              << "\" r=\"3\"/>\n";
        std::swap(cur[i], cur[i + 1]);
        x += u;
    }
    for (std::size_t i = 0; i < n; ++i) path[cur[i]].push_back({x + u, ypos(i)});

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "  <style>.wire{fill:none;stroke:#222;stroke-width:" << style.stroke
        << "}.crossing{fill:#c33}.seam{stroke:#888;stroke-dasharray:4 4}text{font:12px sans-serif}</style>\n";
    if (style.cylinder)
        for (double sx : {m, x + u})
            out << "  <line class=\"seam\" x1=\"" << sx << "\" y1=\"" << m - u / 2 << "\" x2=\"" << sx << "\" y2=\""
                << height - m + u / 2 << "\"/>\n";
    for (Label l : base) {
        const auto it = names.find(l);
        const std::string name = escape(it == names.end() ? std::to_string(l) : it->second);
        out << "  <polyline class=\"wire\" data-label=\"" << name << "\" points=\"";
        const auto& pts = path[l];
        for (std::size_t k = 0; k < pts.size(); ++k) out << (k ? " " : "") << pts[k].first << ',' << pts[k].second;
        out << "\"/>\n";
        out << "  <text x=\"" << m - 18 << "\" y=\"" << pts.front().second + 4 << "\">" << name << "</text>\n";
        out << "  <text x=\"" << pts.back().first + 6 << "\" y=\"" << pts.back().second + 4 << "\">" << name
            << "</text>\n";
    }
    out << marks.str() << "</svg>\n";
    return out.str();
}

inline std::string render(const WiringDiagram& w, const std::map<Label, std::string>& names, Style style = {}) {
    std::vector<std::pair<Label, Label>> swaps;
    for (const auto& s : w.switches) swaps.push_back({s.below, s.above});
    style.cylinder = false;
    return schematic(w.base, swaps, names, style);
}

/// One full period, cut open at the base; the seams are identified.
inline std::string render(const CurveSystem& s, const std::map<Label, std::string>& names, Style style = {}) {
    std::vector<std::pair<Label, Label>> swaps;
    for (const auto& e : s.events()) swaps.push_back({e.a, e.b});
    style.cylinder = true;
    return schematic(s.base(), swaps, names, style);
}

}  // namespace convexpos::svg
