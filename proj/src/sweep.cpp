#include "wez/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "wez/errors.hpp"
#include "wez/units.hpp"

namespace wez {

SweepResult run_sweep(const MlpModel& model, const Scenario& base) {
    SweepResult sweep;
    sweep.base = base;
    sweep.points.reserve(kSweepPoints);
    Scenario s = base;
    for (int i = 0; i < kSweepPoints; ++i) {
        const double rgt = (i - (kSweepPoints - 1) / 2) * kSweepStepDeg;
        s.rgt_tgt = rgt;
        sweep.points.push_back({rgt, std::max(0.0, predict(model, s))});
    }
    return sweep;
}

void write_sweep_csv(const SweepResult& sweep, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw CsvError("cannot open " + path + " for writing");
    std::fprintf(f, "rgt_deg,max_range_nm\n");
    for (const SweepPoint& p : sweep.points)
        std::fprintf(f, "%.17g,%.17g\n", p.rgt_deg, p.max_range_nm);
    if (std::fclose(f) != 0) throw CsvError("write failed for " + path);
}

namespace {

struct Canvas {
    double origin_x = 400.0;
    double origin_y = 600.0;
    double px_per_nm = 1.0;

    double x(double range_nm, double theta_deg) const {
        return origin_x + range_nm * px_per_nm * std::sin(deg_to_rad(theta_deg));
    }
    double y(double range_nm, double theta_deg) const {
        return origin_y - range_nm * px_per_nm * std::cos(deg_to_rad(theta_deg));
    }
};

}  // namespace

void write_wez_svg(const SweepResult& sweep, const std::string& path) {
    if (sweep.points.empty()) throw EmptyDataset("sweep has no points to render");
    double peak = 0.0;
    for (const SweepPoint& p : sweep.points) peak = std::max(peak, p.max_range_nm);
    const double ring_step = 5.0;
    const double top_ring = std::max(ring_step, std::ceil(peak / ring_step) * ring_step);

    // The +/-60 deg sector spans 2*sin(60 deg) of the ring radius across
    // the page; 440 px keeps both edges inside the 800 px canvas.
    Canvas c;
    c.px_per_nm = 440.0 / top_ring;

    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw CsvError("cannot open " + path + " for writing");
    std::fprintf(f, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    std::fprintf(f,
                 "<!DOCTYPE svg PUBLIC \"-//W3C//DTD SVG 1.1//EN\" "
                 "\"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd\">\n");
    std::fprintf(f,
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                 "width=\"800\" height=\"640\" viewBox=\"0 0 800 640\">\n");
    std::fprintf(f, "  <rect x=\"0\" y=\"0\" width=\"800\" height=\"640\" fill=\"#0b0f14\"/>\n");
    std::fprintf(f,
                 "  <text x=\"400\" y=\"28\" fill=\"#9fd8a8\" font-family=\"monospace\" "
                 "font-size=\"18\" text-anchor=\"middle\">WEZ maximum launch range</text>\n");

    // Sector frame: boresight plus the +/-60 deg edges.
    std::fprintf(f, "  <g stroke=\"#2e4d3a\" stroke-width=\"1\">\n");
    for (double edge : {-60.0, 0.0, 60.0}) {
        std::fprintf(f,
                     "    <line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\"/>\n",
                     c.origin_x, c.origin_y, c.x(top_ring, edge), c.y(top_ring, edge));
    }
    std::fprintf(f, "  </g>\n");

    // Range rings every 5 NM, drawn as sector arcs with labels on the
    // boresight axis.
    std::fprintf(f, "  <g stroke=\"#2e4d3a\" stroke-width=\"1\" fill=\"none\">\n");
    for (double ring = ring_step; ring <= top_ring + 1e-9; ring += ring_step) {
        const double r_px = ring * c.px_per_nm;
        std::fprintf(f,
                     "    <path d=\"M %.2f %.2f A %.2f %.2f 0 0 1 %.2f %.2f\"/>\n",
                     c.x(ring, -60.0), c.y(ring, -60.0), r_px, r_px, c.x(ring, 60.0),
                     c.y(ring, 60.0));
    }
    std::fprintf(f, "  </g>\n");
    std::fprintf(f, "  <g fill=\"#5d8a68\" font-family=\"monospace\" font-size=\"12\">\n");
    for (double ring = ring_step; ring <= top_ring + 1e-9; ring += ring_step) {
        std::fprintf(f, "    <text x=\"%.2f\" y=\"%.2f\">%g NM</text>\n", c.origin_x + 6.0,
                     c.origin_y - ring * c.px_per_nm - 3.0, ring);
    }
    std::fprintf(f, "  </g>\n");

    // The predicted boundary, closed back through the shooter so the
    // engageable area reads as a filled region.
    std::fprintf(f, "  <path d=\"M %.2f %.2f", c.origin_x, c.origin_y);
    for (const SweepPoint& p : sweep.points)
        std::fprintf(f, " L %.2f %.2f", c.x(p.max_range_nm, p.rgt_deg),
                     c.y(p.max_range_nm, p.rgt_deg));
    std::fprintf(f,
                 " Z\" fill=\"#1d5c33\" fill-opacity=\"0.35\" stroke=\"#46e06b\" "
                 "stroke-width=\"2\"/>\n");

    // Shooter marker.
    std::fprintf(f,
                 "  <circle cx=\"%.2f\" cy=\"%.2f\" r=\"5\" fill=\"#e8f3ea\" "
                 "stroke=\"#46e06b\" stroke-width=\"2\"/>\n",
                 c.origin_x, c.origin_y);
    std::fprintf(f, "</svg>\n");
    if (std::fclose(f) != 0) throw CsvError("write failed for " + path);
}

}  // namespace wez
