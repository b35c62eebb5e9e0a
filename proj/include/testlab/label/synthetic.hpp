#pragma once

#include <cstddef>
#include <cstdint>

#include "testlab/common/csv.hpp"
#include "testlab/metrics/extractor.hpp"

namespace testlab::label {

/// Coverage file for a feature table, `runs` rows per class, in the
/// format `read_coverage` accepts. Coverage falls with cyclomatic
/// complexity, coupling and size, plus seeded noise; suite size follows
/// the method count. Meant for demos and tests, not for real labels.
/// Throws MissingMetric when CC_Sum_All, CSCBO, CSLOC or CSNOM is absent.
CsvTable synthetic_coverage(const metrics::FeatureTable& features, std::uint64_t seed,
                            std::size_t runs = 5);

}  // namespace testlab::label
