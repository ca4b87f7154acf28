#pragma once
// Command-line driver: compute, batch, verify, su-table.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bnk/maps.hpp"

namespace bnk {

struct KnotResult {
    std::string name;
    int crossings = 0;
    HomologyProfile profile;
    InvariantReport report;
};

/// Homology of d, through the scan reduction or (reduce = false) the full cube.
/// Throws TooLarge when the cube would exceed fullCubeCap.
KnotResult analyze(const PlanarDiagram& d, bool reduce = true, int fullCubeCap = 14);

nlohmann::ordered_json reportJson(const KnotResult& r);
std::string reportText(const KnotResult& r);

struct PropertyResult {
    std::string name;
    bool ok = false;
    std::string detail;  // first failure, or a short summary
};

const std::vector<std::string>& propertyNames();

struct VerifyOptions {
    int crossing = -1;   // restrict crossing-based checks
    int basepoint = -1;  // restrict basepoint-based checks
    int fullCubeCap = 14;
};

/// Throws UnknownProperty for names outside propertyNames().
std::vector<PropertyResult> verifyProperties(const PlanarDiagram& d,
                                             const std::vector<std::string>& props,
                                             const VerifyOptions& opt = {});

int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bnk
