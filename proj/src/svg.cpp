#include "netmap/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <tuple>

namespace netmap {

namespace {

constexpr double kSize = 600;
constexpr double kMargin = 30;

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    return s == "-0.000" ? "0.000" : s;
}

double to_double(const Rational& r) { return boost::multiprecision::numerator(r).convert_to<double>() / boost::multiprecision::denominator(r).convert_to<double>(); }

struct Frame {
    double window;
    double xmin, xmax, ymin, ymax;
    double sx(double x) const { return kMargin + (x - xmin) / (xmax - xmin) * (kSize - 2 * kMargin); }
    double sy(double y) const { return kSize - kMargin - (y - ymin) / (ymax - ymin) * (kSize - 2 * kMargin); }
    double scale() const { return (kSize - 2 * kMargin) / (xmax - xmin); }
};

std::string header() { return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n<rect width=\"600\" height=\"600\" fill=\"white\"/>\n"; }

std::string line(double x1, double y1, double x2, double y2, const std::string& style)
{
    return "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x2) + "\" y2=\"" + fmt(y2) + "\" " + style + "/>\n";
}

std::string axes(const Frame& f, bool vertical)
{
    std::string s = line(f.sx(f.xmin), f.sy(0), f.sx(f.xmax), f.sy(0), "stroke=\"black\"");
    if (vertical) s += line(f.sx(0), f.sy(f.ymin), f.sx(0), f.sy(f.ymax), "stroke=\"black\"");
    for (int k = static_cast<int>(std::ceil(f.xmin)); k <= static_cast<int>(std::floor(f.xmax)); ++k)
        s += line(f.sx(k), f.sy(0) - 4, f.sx(k), f.sy(0) + 4, "stroke=\"black\"");
    return s;
}

}  // namespace

std::string slope_graph_svg(const std::vector<std::pair<ExtRational, Slope>>& points, double window)
{
    Frame f{window, -window, window, -window, window};
    std::set<std::pair<double, double>> dots;
    for (const auto& [s, m] : points) {
        if (s.is_infinite() || m.is_odot() || m.value().is_infinite()) continue;
        double x = to_double(s.value()), y = to_double(m.value().value());
        if (std::fabs(x) > window || std::fabs(y) > window) continue;
        dots.insert({x, y});
    }
    std::string out = header() + axes(f, true);
    for (const auto& [x, y] : dots)
        out += "<circle cx=\"" + fmt(f.sx(x)) + "\" cy=\"" + fmt(f.sy(y)) + "\" r=\"1.5\" fill=\"blue\"/>\n";
    return out + "</svg>\n";
}

std::string halfspace_svg(const std::vector<BoundaryInterval>& intervals, double window)
{
    Frame f{window, -window, window, -0.2 * window, 1.8 * window};
    std::set<std::tuple<double, double, bool>> discs;
    std::set<double> walls;
    for (const auto& J : intervals) {
        if (J.from().is_infinite() || J.to().is_infinite()) {
            // A half-plane bounded by a vertical line.
            const ExtRational& e = J.from().is_infinite() ? J.to() : J.from();
            walls.insert(to_double(e.value()));
            continue;
        }
        double a = to_double(J.from().value()), b = to_double(J.to().value());
        bool outer = J.contains_infinity();
        discs.insert({std::min(a, b), std::max(a, b), outer});
    }
    std::string out = header() + axes(f, false);
    for (double a : walls) out += line(f.sx(a), f.sy(0), f.sx(a), f.sy(f.ymax), "stroke=\"red\" stroke-dasharray=\"4 3\"");
    for (const auto& [a, b, outer] : discs) {
        double r = (b - a) / 2 * f.scale();
        out += "<path d=\"M " + fmt(f.sx(a)) + " " + fmt(f.sy(0)) + " A " + fmt(r) + " " + fmt(r) + " 0 0 1 " + fmt(f.sx(b)) + " " +
               fmt(f.sy(0)) + "\" " +
               (outer ? "fill=\"none\" stroke=\"red\" stroke-dasharray=\"4 3\"" : "fill=\"rgba(0,0,255,0.15)\" stroke=\"blue\"") + "/>\n";
    }
    return out + "</svg>\n";
}

}  // namespace netmap
