#include "wb/plot.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "wb/pattern.hpp"

namespace wb {

namespace {

const char* kColors[] = {"#d62728", "#2ca02c", "#1f77b4", "#9467bd", "#ff7f0e", "#8c564b"};

struct Canvas {
    double minx = 0, miny = 0, maxx = 1, maxy = 1;
    double unit = 10, pad = 20;
    bool empty = true;
    void fit(double x, double y) {
        if (empty) {
            minx = maxx = x;
            miny = maxy = y;
            empty = false;
        }
        minx = std::min(minx, x);
        maxx = std::max(maxx, x);
        miny = std::min(miny, y);
        maxy = std::max(maxy, y);
    }
    double X(double x) const { return pad + (x - minx) * unit; }
    double Y(double y) const { return pad + (maxy - y) * unit; }  // y grows upward
    std::string open() const {
        double w = empty ? 2 * pad : 2 * pad + (maxx - minx) * unit;
        double h = empty ? 2 * pad : 2 * pad + (maxy - miny) * unit;
        std::ostringstream s;
        s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 "
          << w << " " << h << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        return s.str();
    }
};

}  // namespace

std::string plot_svg(const GadgetGraph& g, const CombinationMeasure* selected) {
    Canvas cv;
    cv.unit = 8;
    for (const auto& v : g.vertices) cv.fit(double(v.p.x), double(v.p.y));
    std::vector<bool> shade(g.triangles.size(), false);
    if (selected) {
        std::array<std::vector<int>, 3> vertex_of;
        for (std::size_t v = 0; v < g.vertices.size(); ++v) {
            auto& col = vertex_of[g.vertices[v].color - 1];
            if (col.size() <= std::size_t(g.slot[v])) col.resize(g.slot[v] + 1, -1);
            col[g.slot[v]] = int(v);
        }
        for (const auto& e : selected->entries) {
            std::array<GPoint, 3> pts;
            bool ok = e.tuple.size() == 3;
            for (int c = 0; ok && c < 3; ++c) {
                int s = e.tuple[c];
                ok = s >= 0 && std::size_t(s) < vertex_of[c].size() && vertex_of[c][s] >= 0;
                if (ok) pts[c] = g.vertices[vertex_of[c][s]].p;
            }
            if (!ok) throw PatternError("selection references a slot outside the gadget");
            int t = g.triangle_at(pts);
            if (t < 0) throw PatternError("selection contains a triple that is not a gadget triangle");
            shade[t] = true;
        }
    }
    std::ostringstream s;
    s << cv.open();
    auto pt = [&](int v) {
        std::ostringstream o;
        o << cv.X(double(g.vertices[v].p.x)) << "," << cv.Y(double(g.vertices[v].p.y));
        return o.str();
    };
    for (std::size_t t = 0; t < g.triangles.size(); ++t) {
        const auto& tri = g.triangles[t];
        std::string fill = shade[t] ? "#999999" : "none";
        std::string stroke = tri.kind == TriangleKind::Triple    ? "#000000"
                             : tri.kind == TriangleKind::OffPath ? "#bbbbbb"
                                                                 : "#555555";
        s << "<polygon class=\"" << (shade[t] ? "selected" : "triangle") << "\" points=\"" << pt(tri.v[0]) << " "
          << pt(tri.v[1]) << " " << pt(tri.v[2]) << "\" fill=\"" << fill << "\" fill-opacity=\"0.6\" stroke=\""
          << stroke << "\" stroke-width=\"0.6\"/>\n";
    }
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        const auto& gv = g.vertices[v];
        double r = gv.role == VertexRole::Element ? 4 : 2;
        s << "<circle cx=\"" << cv.X(double(gv.p.x)) << "\" cy=\"" << cv.Y(double(gv.p.y)) << "\" r=\"" << r
          << "\" fill=\"" << kColors[gv.color - 1] << "\"/>\n";
        if (gv.role == VertexRole::Element)
            s << "<text x=\"" << cv.X(double(gv.p.x)) + 5 << "\" y=\"" << cv.Y(double(gv.p.y)) - 5
              << "\" font-size=\"10\">" << gv.label << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

std::string plot_svg(const ProblemInstance& inst, const CombinationMeasure* bary) {
    if (inst.d != 2 && !inst.measures.empty()) throw std::invalid_argument("plotting needs d = 2");
    Canvas cv;
    for (const auto& mu : inst.measures)
        for (const auto& sl : mu.points) cv.fit(sl.coords[0].get_d(), sl.coords[1].get_d());
    std::vector<Point> means;
    if (bary)
        for (const auto& e : bary->entries) {
            means.push_back(weighted_mean(e.tuple, inst));
            cv.fit(means.back()[0].get_d(), means.back()[1].get_d());
        }
    double span = std::max(cv.maxx - cv.minx, cv.maxy - cv.miny);
    cv.unit = span > 0 ? 400.0 / span : 10;
    std::ostringstream s;
    s << cv.open();
    for (std::size_t i = 0; i < inst.measures.size(); ++i)
        for (const auto& sl : inst.measures[i].points)
            s << "<circle cx=\"" << cv.X(sl.coords[0].get_d()) << "\" cy=\"" << cv.Y(sl.coords[1].get_d())
              << "\" r=\"4\" fill=\"" << kColors[i % 6] << "\"/>\n";
    for (const auto& p : means) {
        double x = cv.X(p[0].get_d()), y = cv.Y(p[1].get_d());
        s << "<path class=\"mean\" d=\"M" << x - 4 << " " << y - 4 << " L" << x + 4 << " " << y + 4 << " M" << x - 4
          << " " << y + 4 << " L" << x + 4 << " " << y - 4 << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace wb
