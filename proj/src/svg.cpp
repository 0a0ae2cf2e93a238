#include "gathersim/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gathersim {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

std::string trace_to_svg(const Trace& trace, const Tolerance& tol) {
    double min_x = 0, min_y = 0, max_x = 1, max_y = 1;
    bool first = true;
    auto expand = [&](const Point& p) {
        if (first) {
            min_x = max_x = p.x;
            min_y = max_y = p.y;
            first = false;
        } else {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
    };
    for (const auto& r : trace.initial.robots) expand(r.pos);
    for (const auto& rec : trace.rounds)
        for (const auto& r : rec.result.robots) expand(r.pos);

    Circle sec{{0, 0}, 0};
    if (!trace.initial.robots.empty()) {
        sec = smallest_enclosing_circle(trace.initial.positions(), tol);
        expand({sec.center.x - sec.radius, sec.center.y - sec.radius});
        expand({sec.center.x + sec.radius, sec.center.y + sec.radius});
    }
    double pad = std::max((max_x - min_x), (max_y - min_y)) * 0.05 + 1.0;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(min_x - pad) << " "
        << num(min_y - pad) << " " << num(max_x - min_x + 2 * pad) << " "
        << num(max_y - min_y + 2 * pad) << "\">\n";
    out << "<g stroke-linecap=\"round\" fill=\"none\">\n";

    if (!trace.initial.robots.empty()) {
        out << "<circle cx=\"" << num(sec.center.x) << "\" cy=\"" << num(sec.center.y)
            << "\" r=\"" << num(sec.radius) << "\" stroke=\"#bbbbbb\" stroke-width=\""
            << num(pad * 0.05) << "\"/>\n";
        auto lds = lds_set(trace.initial.positions(), tol);
        for (const auto& s : lds) {
            out << "<circle cx=\"" << num(s.a.x) << "\" cy=\"" << num(s.a.y) << "\" r=\""
                << num(pad * 0.15) << "\" fill=\"#888888\"/>\n";
            out << "<circle cx=\"" << num(s.b.x) << "\" cy=\"" << num(s.b.y) << "\" r=\""
                << num(pad * 0.15) << "\" fill=\"#888888\"/>\n";
        }
    }

    // per-round segments colored by the light the robot carried that round
    for (const auto& r0 : trace.initial.robots) {
        Point prev = r0.pos;
        ColorId light = r0.light;
        for (const auto& rec : trace.rounds) {
            const RobotState* now = rec.result.find(r0.id);
            if (!now) continue;
            if (!(now->pos == prev)) {
                out << "<line x1=\"" << num(prev.x) << "\" y1=\"" << num(prev.y) << "\" x2=\""
                    << num(now->pos.x) << "\" y2=\"" << num(now->pos.y) << "\" stroke=\""
                    << kPalette[light % 4] << "\" stroke-width=\"" << num(pad * 0.06)
                    << "\"/>\n";
            }
            prev = now->pos;
            light = now->light;
        }
        out << "<circle cx=\"" << num(r0.pos.x) << "\" cy=\"" << num(r0.pos.y) << "\" r=\""
            << num(pad * 0.1) << "\" fill=\"" << kPalette[r0.light % 4] << "\"/>\n";
        out << "<circle cx=\"" << num(prev.x) << "\" cy=\"" << num(prev.y) << "\" r=\""
            << num(pad * 0.12) << "\" fill=\"#000000\"/>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

void write_svg_file(const Trace& trace, const Tolerance& tol, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open svg file for writing: " + path);
    f << trace_to_svg(trace, tol);
}

}  // namespace gathersim
