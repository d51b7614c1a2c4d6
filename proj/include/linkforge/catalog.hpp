#pragma once

#include <string>
#include <vector>

#include "linkforge/diagram.hpp"

namespace linkforge {

// Bundled diagrams for the named links. Entries are validated against
// determinant and coloring oracles the first time the catalog is touched.
Diagram catalog(const std::string& name);

std::vector<std::string> catalog_names();

// Blackboard-framed 2-parallel: every strand doubled, every crossing
// replaced by the four crossings of the doubled lanes.
Diagram double_parallel(const Diagram& d);

}  // namespace linkforge
