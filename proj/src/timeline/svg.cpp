// Copyright 2026 The qrep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <sstream>

#include "qrep/timeline.hpp"

namespace qrep {
namespace {

constexpr double kLeft = 50.0;
constexpr double kWidth = 500.0;
constexpr double kTop = 40.0;
constexpr double kHeight = 300.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

std::string emit_spacetime_svg(const Schedule& schedule) {
  const LineTopology& topo = schedule.topology;
  const Rational tmax = schedule.completion > Rational(0) ? schedule.completion : Rational(1);
  const Rational xmax = topo.positions.empty() ? Rational(1) : max(Rational(1), topo.positions.back());
  auto x = [&](int node) { return kLeft + kWidth * (topo.positions.at(static_cast<std::size_t>(node)) / xmax).to_double(); };
  auto y = [&](const Rational& t) { return kTop + kHeight * (t / tmax).to_double(); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"380\" viewBox=\"0 0 600 380\""
     << " data-tmax=\"" << tmax.str() << "\" data-variant=\"" << escape(schedule.variant) << "\">\n";
  os << "  <g class=\"axes\" stroke=\"#888\" stroke-width=\"0.5\">\n";
  os << "    <line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft) << "\" y2=\""
     << num(kTop + kHeight) << "\" class=\"time-axis\"/>\n";
  for (std::size_t i = 0; i < topo.positions.size(); ++i) {
    const double xi = x(static_cast<int>(i));
    os << "    <line x1=\"" << num(xi) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(xi) << "\" y2=\""
       << num(kTop + kHeight) << "\" data-node=\"" << topo.node_name(static_cast<int>(i)) << "\"/>\n";
  }
  os << "  </g>\n";
  os << "  <g class=\"labels\" font-family=\"monospace\" font-size=\"11\">\n";
  for (std::size_t i = 0; i < topo.positions.size(); ++i) {
    os << "    <text x=\"" << num(x(static_cast<int>(i))) << "\" y=\"" << num(kTop - 10.0)
       << "\" text-anchor=\"middle\">" << topo.node_name(static_cast<int>(i)) << "</text>\n";
  }
  os << "    <text x=\"" << num(kLeft - 8.0) << "\" y=\"" << num(kTop + kHeight)
     << "\" text-anchor=\"end\">t=" << tmax.str() << "</text>\n";
  os << "  </g>\n";
  os << "  <g class=\"events\" stroke-width=\"1.5\" fill=\"none\">\n";
  for (const auto& e : schedule.events) {
    const std::string attrs = " data-id=\"" + std::to_string(e.id) + "\" data-kind=\"" + std::string(to_string(e.kind)) +
                              "\" data-t0=\"" + e.start.str() + "\" data-t1=\"" + e.end.str() + "\"";
    if (e.kind == EventKind::local_op) {
      os << "    <circle cx=\"" << num(x(e.from)) << "\" cy=\"" << num(y(e.start)) << "\" r=\"3\" fill=\"#000\""
         << attrs << "><title>" << escape(e.label) << "</title></circle>\n";
      continue;
    }
    std::string style;
    switch (e.kind) {
      case EventKind::photon_transit:
        style = "stroke=\"#c33\" stroke-dasharray=\"6,4\"";
        break;
      case EventKind::entanglement_confirm:
        style = "stroke=\"#36c\" stroke-dasharray=\"1,3\"";
        break;
      case EventKind::wait:
        style = "stroke=\"#999\"";
        break;
      default:
        style = "stroke=\"#000\"";
    }
    os << "    <line x1=\"" << num(x(e.from)) << "\" y1=\"" << num(y(e.start)) << "\" x2=\"" << num(x(e.to))
       << "\" y2=\"" << num(y(e.end)) << "\" " << style << attrs << "><title>" << escape(e.label)
       << "</title></line>\n";
  }
  os << "  </g>\n</svg>\n";
  return os.str();
}

}  // namespace qrep
