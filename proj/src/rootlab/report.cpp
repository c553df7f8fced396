#include "pprh/rootlab.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace pprh::rootlab {

namespace {

using nlohmann::json;

std::string fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string to_json(const RootReport& report) {
  json roots = json::array();
  for (std::size_t i = 0; i < report.roots.size(); ++i) {
    roots.push_back({{"re", to_string(report.roots[i].real(), 20)},
                     {"im", to_string(report.roots[i].imag(), 20)},
                     {"modulus_deviation", report.moduli_dev[i]},
                     {"on_circle", static_cast<bool>(report.on_circle[i])},
                     {"residual", report.residuals[i]}});
  }
  json doc{{"roots", roots},
           {"angles", report.angles},
           {"all_on_circle", report.all_on_circle},
           {"tol_circle", report.tol_circle},
           {"discrepancy", report.discrepancy},
           {"method", report.method},
           {"iterations", report.iterations}};
  return doc.dump(2);
}

std::string to_json(const BoundReport& report) {
  json terms = json::array();
  for (const auto& t : report.per_term) terms.push_back({{"j", t.j}, {"value", to_string(t.value, 20)}});
  json doc{{"n", report.n},
           {"m", report.m},
           {"discriminant_used", to_string(report.discriminant_used, 20)},
           {"minkowski_default", report.minkowski_default},
           {"first_term", to_string(report.first_term, 20)},
           {"per_term", terms},
           {"value", to_string(report.value, 20)},
           {"verdict", report.verdict}};
  return doc.dump(2);
}

std::string roots_svg(const RootReport& report, const std::string& title) {
  constexpr double size = 400, centre = 200, radius = 150;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  svg << "  <title>" << xml_escape(title) << "</title>\n";
  svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "  <line x1=\"20\" y1=\"200\" x2=\"380\" y2=\"200\" stroke=\"#bbb\" stroke-width=\"1\"/>\n";
  svg << "  <line x1=\"200\" y1=\"20\" x2=\"200\" y2=\"380\" stroke=\"#bbb\" stroke-width=\"1\"/>\n";
  svg << "  <circle cx=\"200\" cy=\"200\" r=\"150\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  for (std::size_t i = 0; i < report.roots.size(); ++i) {
    const double x = centre + radius * static_cast<double>(report.roots[i].real());
    const double y = centre - radius * static_cast<double>(report.roots[i].imag());
    const char* colour = report.on_circle[i] ? "#1f5fbf" : "#c0392b";
    svg << "  <circle cx=\"" << fixed(x, 3) << "\" cy=\"" << fixed(y, 3) << "\" r=\"4\" fill=\"" << colour
        << "\"/>\n";
  }
  svg << "  <text x=\"200\" y=\"395\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
      << xml_escape(title) << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace pprh::rootlab
