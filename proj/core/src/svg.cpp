#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "lsfem/mesh.hpp"

namespace lsfem {

void write_svg(const TriMesh& mesh, std::ostream& out)
{
    double xmin = std::numeric_limits<double>::max(), ymin = xmin;
    double xmax = std::numeric_limits<double>::lowest(), ymax = xmax;
    for (const auto& p : mesh.vertices()) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    const double w = xmax - xmin;
    const double h = ymax - ymin;
    const double stroke = 0.002 * std::hypot(w, h);

    // SVG's y axis points down; mirror so that y (or t) grows upwards.
    auto flip = [&](double y) { return ymax - (y - ymin); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << xmin << ' ' << ymin << ' ' << w << ' '
        << h << "\">\n";
    out << "<g fill=\"none\" stroke=\"black\" stroke-width=\"" << stroke << "\" stroke-linejoin=\"round\">\n";
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto c = mesh.corners(static_cast<int>(t));
        out << "<polygon points=\"";
        for (int i = 0; i < 3; ++i)
            out << (i ? " " : "") << c[i].x << ',' << flip(c[i].y);
        out << "\"/>\n";
    }
    out << "</g>\n</svg>\n";
}

} // namespace lsfem
