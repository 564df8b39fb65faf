#pragma once

#include <iosfwd>
#include <string>

#include "hadsw/manifold.hpp"

namespace hadsw {

/// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double v);

std::string descriptor_to_json(const ManifoldDescriptor& d);
ManifoldDescriptor descriptor_from_json(const std::string& text);

/// Point-cloud text format: a single header line
///   # {"manifold": {...}, "weights": "uniform" | [w0, ...]}
/// followed by one whitespace-separated row of ambient coordinates per
/// point, printed with round-trip precision.
void write_measure(std::ostream& os, const DiscreteMeasure& mu);
DiscreteMeasure read_measure(std::istream& is);

void write_measure_file(const std::string& path, const DiscreteMeasure& mu);
DiscreteMeasure read_measure_file(const std::string& path);

}  // namespace hadsw
